#pragma once

#include <span>
#include <string_view>

#include "camnet/fusion.hpp"

namespace camnet {

enum class ObjectiveKind { Mean, Minimax };

struct ObjectiveSpec {
  ObjectiveKind kind = ObjectiveKind::Mean;
  /// Stand-in fused quality (mm/px) for an uncovered target, scaled by
  /// 1 + (number of uncovered targets). Must exceed any physical fused_q.
  double coverage_penalty = 1e6;
};

std::string_view to_string(ObjectiveKind kind);
ObjectiveKind parse_objective_kind(std::string_view text);

/// Mean or max of fused qualities, with uncovered targets replaced by the
/// penalty. Requires a non-empty target list.
double objective_value(std::span<const FusedValue> fused, const ObjectiveSpec& spec);
double objective_value(const QualityReport& report, const ObjectiveSpec& spec);

/// True iff every target is seen by at least one camera.
bool is_feasible(std::span<const FusedValue> fused);
bool is_feasible(const QualityReport& report);

}  // namespace camnet
