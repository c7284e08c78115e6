#include "camnet/objective.hpp"

#include <algorithm>
#include <string>

namespace camnet {

std::string_view to_string(ObjectiveKind kind) {
  return kind == ObjectiveKind::Mean ? "mean" : "minimax";
}

ObjectiveKind parse_objective_kind(std::string_view text) {
  if (text == "mean") return ObjectiveKind::Mean;
  if (text == "minimax") return ObjectiveKind::Minimax;
  throw Error(ErrorCode::InvalidArgument,
              "unknown objective '" + std::string(text) + "' (expected mean|minimax)");
}

double objective_value(std::span<const FusedValue> fused, const ObjectiveSpec& spec) {
  if (fused.empty()) {
    throw Error(ErrorCode::InvalidArgument, "objective needs at least one target");
  }
  if (!(spec.coverage_penalty > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "coverage penalty must be positive");
  }
  const auto uncovered = std::count_if(fused.begin(), fused.end(),
                                       [](const FusedValue& f) { return !f.covered; });
  const double penalty = spec.coverage_penalty * (1.0 + static_cast<double>(uncovered));
  double sum = 0.0;
  double worst = 0.0;
  for (const auto& f : fused) {
    const double v = f.covered ? f.fused_q : penalty;
    sum += v;
    worst = std::max(worst, v);
  }
  return spec.kind == ObjectiveKind::Mean ? sum / static_cast<double>(fused.size()) : worst;
}

namespace {

std::vector<FusedValue> fused_of(const QualityReport& report) {
  std::vector<FusedValue> out;
  out.reserve(report.targets.size());
  for (const auto& t : report.targets) out.push_back({t.covered, t.fused_q});
  return out;
}

}  // namespace

double objective_value(const QualityReport& report, const ObjectiveSpec& spec) {
  return objective_value(fused_of(report), spec);
}

bool is_feasible(std::span<const FusedValue> fused) {
  return std::all_of(fused.begin(), fused.end(), [](const FusedValue& f) { return f.covered; });
}

bool is_feasible(const QualityReport& report) {
  return is_feasible(fused_of(report));
}

}  // namespace camnet
