#include "camnet/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace camnet {

namespace {

struct Vertex {
  std::vector<double> x;
  double f;
};

class Simplex {
 public:
  Simplex(const ObjectiveFn& f, int budget) : f_(f), budget_(budget) {}

  bool exhausted() const { return evals_ >= budget_; }
  int evals() const { return evals_; }

  double eval(const std::vector<double>& x) {
    ++evals_;
    const double v = f_(x);
    return std::isnan(v) ? HUGE_VAL : v;
  }

  // One local search from `start` (value already known). Returns the best
  // vertex; sets `converged` when the diameter test fired.
  Vertex run(const Vertex& start, const NelderMeadOptions& opt, bool& converged) {
    const std::size_t n = start.x.size();
    std::vector<Vertex> s;
    s.reserve(n + 1);
    s.push_back(start);
    for (std::size_t i = 0; i < n && !exhausted(); ++i) {
      Vertex v = start;
      v.x[i] += v.x[i] > 0.5 ? -opt.initial_step : opt.initial_step;
      v.f = eval(v.x);
      s.push_back(std::move(v));
    }
    converged = false;
    if (s.size() < n + 1) return best_of(s);

    auto order = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
    std::vector<double> centroid(n);
    auto along = [&](double t) {
      // centroid + t * (centroid - worst)
      std::vector<double> x(n);
      for (std::size_t k = 0; k < n; ++k) x[k] = centroid[k] + t * (centroid[k] - s[n].x[k]);
      return x;
    };

    while (true) {
      std::stable_sort(s.begin(), s.end(), order);
      if (s[0].f <= opt.stop_value) break;
      if (diameter(s) < opt.tolerance) {
        converged = true;
        break;
      }
      if (exhausted()) break;

      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) centroid[k] += s[i].x[k];
      for (double& c : centroid) c /= static_cast<double>(n);

      Vertex r{along(1.0), 0.0};
      r.f = eval(r.x);
      if (r.f < s[0].f) {
        if (exhausted()) {
          s[n] = std::move(r);
          continue;
        }
        Vertex e{along(2.0), 0.0};
        e.f = eval(e.x);
        s[n] = e.f < r.f ? std::move(e) : std::move(r);
        continue;
      }
      if (r.f < s[n - 1].f) {
        s[n] = std::move(r);
        continue;
      }
      if (exhausted()) break;
      const bool outside = r.f < s[n].f;
      Vertex c{along(outside ? 0.5 : -0.5), 0.0};
      c.f = eval(c.x);
      if (outside ? c.f <= r.f : c.f < s[n].f) {
        s[n] = std::move(c);
        continue;
      }
      // Shrink toward the best vertex.
      for (std::size_t i = 1; i <= n && !exhausted(); ++i) {
        for (std::size_t k = 0; k < n; ++k) s[i].x[k] = s[0].x[k] + 0.5 * (s[i].x[k] - s[0].x[k]);
        s[i].f = eval(s[i].x);
      }
    }
    return best_of(s);
  }

 private:
  static Vertex best_of(const std::vector<Vertex>& s) {
    return *std::min_element(s.begin(), s.end(),
                             [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  }

  static double diameter(const std::vector<Vertex>& s) {
    double d = 0.0;
    for (std::size_t i = 1; i < s.size(); ++i)
      for (std::size_t k = 0; k < s[0].x.size(); ++k)
        d = std::max(d, std::abs(s[i].x[k] - s[0].x[k]));
    return d;
  }

  const ObjectiveFn& f_;
  int budget_;
  int evals_ = 0;
};

}  // namespace

NelderMeadResult nelder_mead(const ObjectiveFn& f, std::vector<double> x0,
                             const NelderMeadOptions& options) {
  Simplex simplex(f, std::max(options.max_evals, 1));
  Vertex best{std::move(x0), 0.0};
  best.f = simplex.eval(best.x);

  NelderMeadResult result;
  for (int round = 0; round <= options.max_restarts && !simplex.exhausted() &&
                     best.f > options.stop_value;
       ++round) {
    bool converged = false;
    Vertex next = simplex.run(best, options, converged);
    result.converged = converged;
    const bool improved = next.f < best.f;
    if (improved) best = std::move(next);
    if (!improved && round > 0) break;
  }
  result.x = std::move(best.x);
  result.value = best.f;
  result.evals = simplex.evals();
  return result;
}

}  // namespace camnet
