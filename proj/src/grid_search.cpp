#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "camnet/oracle.hpp"

namespace camnet {

std::size_t grid_size(int points_per_dimension, std::size_t dims) {
  const auto k = static_cast<std::size_t>(std::max(points_per_dimension, 0));
  std::size_t n = 1;
  for (std::size_t d = 0; d < dims; ++d) {
    if (k != 0 && n > std::numeric_limits<std::size_t>::max() / k) {
      return std::numeric_limits<std::size_t>::max();
    }
    n *= k;
  }
  return n;
}

GridResult grid_search(const ReconfigProblem& problem, const GridSpec& grid) {
  if (grid.points_per_dimension < 2) {
    throw Error(ErrorCode::InvalidArgument,
                "grid needs at least 2 points per dimension, got " +
                    std::to_string(grid.points_per_dimension));
  }
  const ConfigurationObjective objective(problem.scene, problem.mode, problem.objective);
  const std::size_t dims = objective.dimension();
  const std::size_t total = grid_size(grid.points_per_dimension, dims);
  if (total > grid.max_vertices) {
    const double exact = std::pow(static_cast<double>(grid.points_per_dimension),
                                  static_cast<double>(dims));
    throw Error(ErrorCode::GridTooLarge,
                "grid of " + std::to_string(grid.points_per_dimension) + "^" +
                    std::to_string(dims) + " = " + std::to_string(exact) +
                    " vertices exceeds the cap of " + std::to_string(grid.max_vertices));
  }

  const int k = grid.points_per_dimension;
  const auto& bounds = objective.bounds();
  auto coord = [&](std::size_t d, int i) {
    return i == k - 1 ? bounds[d].hi : bounds[d].lo + bounds[d].width() * i / (k - 1);
  };

  std::vector<double> values(total);
  std::vector<char> feasible(total);
  std::vector<int> index(dims, 0);
  Configuration config(dims);
  for (std::size_t d = 0; d < dims; ++d) config[d] = coord(d, 0);

  std::size_t best = 0;
  for (std::size_t v = 0; v < total; ++v) {
    const auto e = objective.evaluate(config);
    values[v] = e.value;
    feasible[v] = e.feasible;
    if (e.value < values[best]) best = v;
    // Odometer increment, last dimension fastest.
    for (std::size_t d = dims; d-- > 0;) {
      if (++index[d] < k) {
        config[d] = coord(d, index[d]);
        break;
      }
      index[d] = 0;
      config[d] = coord(d, 0);
    }
  }

  double slack_feasible = -1.0;
  double slack_all = 0.0;
  std::size_t stride = 1;
  for (std::size_t d = dims; d-- > 0;) {
    for (std::size_t v = 0; v < total; ++v) {
      if ((v / stride) % static_cast<std::size_t>(k) == static_cast<std::size_t>(k - 1)) continue;
      const std::size_t w = v + stride;
      const double diff = std::abs(values[v] - values[w]);
      slack_all = std::max(slack_all, diff);
      if (feasible[v] && feasible[w]) slack_feasible = std::max(slack_feasible, diff);
    }
    stride *= static_cast<std::size_t>(k);
  }

  Configuration best_config(dims);
  std::size_t rem = best;
  for (std::size_t d = dims; d-- > 0;) {
    best_config[d] = coord(d, static_cast<int>(rem % static_cast<std::size_t>(k)));
    rem /= static_cast<std::size_t>(k);
  }

  GridResult out{make_result(problem, best_config, static_cast<int>(total), {values[best]}),
                 total, slack_feasible >= 0.0 ? slack_feasible : slack_all};
  return out;
}

}  // namespace camnet
