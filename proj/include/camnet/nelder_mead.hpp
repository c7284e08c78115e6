#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace camnet {

struct NelderMeadOptions {
  /// Simplex edge along each coordinate; it points toward 0.5 so a start
  /// inside the unit box gets a first simplex inside it too.
  double initial_step = 0.1;
  double tolerance = 1e-6;    ///< stop when simplex inf-norm diameter drops below
  int max_evals = 1000;
  /// Fresh simplexes rebuilt around the incumbent after convergence; the
  /// loop stops early once a restart brings no improvement.
  int max_restarts = 2;
  /// Stop as soon as a vertex reaches this value.
  double stop_value = -HUGE_VAL;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evals = 0;
  bool converged = false;
};

using ObjectiveFn = std::function<double(std::span<const double>)>;

/// Derivative-free simplex minimization (Lagarias et al. coefficients:
/// reflect 1, expand 2, contract 1/2, shrink 1/2). Deterministic; the best
/// value never exceeds f(x0).
NelderMeadResult nelder_mead(const ObjectiveFn& f, std::vector<double> x0,
                             const NelderMeadOptions& options = {});

}  // namespace camnet
