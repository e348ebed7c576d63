#include "caimdp/optimizers.hpp"

#include "caimdp/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace caimdp {

double QuadraticForm::value(const Vector& a) const {
  double acc = d;
  const auto n = a.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    double row = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) row += h(i, k) * a(k);
    acc += a(i) * (row + c(i));
  }
  return acc;
}

Vector QuadraticForm::gradient(const Vector& a) const { return 2.0 * (h * a) + c; }

SmoothObjective SmoothObjective::from_quadratic(QuadraticForm q, Shape shape) {
  SmoothObjective f;
  f.value = [q](const Vector& a) { return q.value(a); };
  f.gradient = [q](const Vector& a) { return q.gradient(a); };
  f.quadratic = std::move(q);
  f.shape = shape;
  return f;
}

void OptimizerConfig::validate() const {
  if (!(tolerance > 0.0)) throw ValidationError("optimizer tolerance must be > 0");
  if (max_iterations < 1 || multistart < 1) {
    throw ValidationError("optimizer iteration and multistart counts must be >= 1");
  }
  if (!(backtracking > 0.0 && backtracking < 1.0)) {
    throw ValidationError("backtracking factor must lie in (0, 1)");
  }
  if (!(sufficient_increase > 0.0 && sufficient_increase < 1.0)) {
    throw ValidationError("sufficient-increase constant must lie in (0, 1)");
  }
}

namespace {

void require_concave(const SmoothObjective& f, const char* who) {
  if (f.shape != Shape::Concave && f.shape != Shape::Linear) {
    throw CapabilityError(std::string(who) + " requires a concave or linear objective, got " +
                          to_string(f.shape));
  }
}

// Maximizes phi(t) = f(a + t d) over t in [0, tmax] for concave f.
double line_search(const SmoothObjective& f, const Vector& a, const Vector& d, double slope,
                   double tmax) {
  if (slope <= 0.0) return 0.0;
  if (f.shape == Shape::Linear) return tmax;
  if (f.quadratic) {
    const double curv = d.dot(f.quadratic->h * d);
    if (curv >= 0.0) return tmax;
    return std::clamp(-slope / (2.0 * curv), 0.0, tmax);
  }
  // Golden section on a unimodal function.
  constexpr double ratio = 0.6180339887498949;
  double lo = 0.0;
  double hi = tmax;
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = f.value(a + x1 * d);
  double f2 = f.value(a + x2 * d);
  for (int it = 0; it < 100 && hi - lo > 1e-12 * std::max(1.0, tmax); ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = f.value(a + x2 * d);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = f.value(a + x1 * d);
    }
  }
  const double t = 0.5 * (lo + hi);
  // Never return a step worse than the endpoints.
  const double ft = f.value(a + t * d);
  const double fmax = f.value(a + tmax * d);
  return fmax > ft ? tmax : t;
}

OptimumResult projected_gradient_run(const SmoothObjective& f, const ActionSet& set,
                                     const OptimizerConfig& cfg, const Vector& start) {
  OptimumResult res;
  Vector a = set.project(start);
  double fa = f.value(a);
  double step = 1.0;
  res.converged = false;
  for (res.iterations = 0; res.iterations < cfg.max_iterations; ++res.iterations) {
    const Vector g = f.gradient(a);
    const double residual = (a - set.project(a + g)).norm();
    res.gap = std::max(0.0, g.dot(set.linear_maximizer(g) - a));
    if (residual <= cfg.tolerance && res.gap <= cfg.tolerance) {
      res.converged = true;
      break;
    }
    double t = step;
    Vector cand;
    double fc = 0.0;
    bool accepted = false;
    while (t >= 1e-16) {
      cand = set.project(a + t * g);
      fc = f.value(cand);
      if (fc >= fa + cfg.sufficient_increase * g.dot(cand - a)) {
        accepted = true;
        break;
      }
      t *= cfg.backtracking;
    }
    if (!accepted || cand == a) break;  // stalled at working precision
    a = std::move(cand);
    fa = fc;
    step = std::min(t / cfg.backtracking, 1e8);
  }
  res.argmax = std::move(a);
  res.value = fa;
  return res;
}

}  // namespace

OptimumResult max_over_vertices(const SmoothObjective& f, const std::vector<Vector>& vertices) {
  if (vertices.empty()) throw CapabilityError("max_over_vertices needs a nonempty vertex list");
  OptimumResult res;
  res.value = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    const double v = f.value(vertices[k]);
    if (v > res.value) {
      res.value = v;
      res.vertex_index = static_cast<int>(k);
    }
  }
  res.argmax = vertices[res.vertex_index];
  res.iterations = static_cast<int>(vertices.size());
  return res;
}

OptimumResult projected_gradient_max(const SmoothObjective& f, const ActionSet& set,
                                     const OptimizerConfig& cfg) {
  cfg.validate();
  require_concave(f, "projected_gradient_max");
  if (!set.can_project()) {
    throw CapabilityError(set.kind_name() + " set has no projection oracle; use Frank-Wolfe");
  }
  std::vector<Vector> starts{set.center()};
  for (auto& p : quasi_random_points(set, cfg.multistart - 1)) starts.push_back(std::move(p));

  OptimumResult best;
  best.value = -std::numeric_limits<double>::infinity();
  int total_iterations = 0;
  for (const auto& s : starts) {
    OptimumResult r = projected_gradient_run(f, set, cfg, s);
    total_iterations += r.iterations;
    if (r.value > best.value || (r.value == best.value && r.gap < best.gap)) best = std::move(r);
  }
  best.iterations = total_iterations;
  return best;
}

namespace {

// Away-step Frank-Wolfe. The iterate is kept as a convex combination of the
// atoms returned by the linear-maximization oracle so that mass can be moved
// away from poor atoms, which avoids the zig-zag of the plain method near
// faces.
template <class Lmo>
OptimumResult away_step_frank_wolfe(const SmoothObjective& f, Vector start, Lmo lmo,
                                    const OptimizerConfig& cfg) {
  std::vector<Vector> atoms{start};
  std::vector<double> weight{1.0};
  Vector a = std::move(start);

  OptimumResult res;
  res.converged = false;
  for (res.iterations = 0; res.iterations < cfg.max_iterations; ++res.iterations) {
    const Vector g = f.gradient(a);
    const Vector s = lmo(g);
    const double ga = g.dot(a);
    res.gap = std::max(0.0, g.dot(s) - ga);
    if (res.gap <= cfg.tolerance) {
      res.converged = true;
      break;
    }
    int away = 0;
    double away_val = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      const double val = g.dot(atoms[k]);
      if (val < away_val) {
        away_val = val;
        away = static_cast<int>(k);
      }
    }
    const double away_gap = ga - away_val;
    if (res.gap >= away_gap || weight[away] >= 1.0) {
      const Vector d = s - a;
      const double t = line_search(f, a, d, res.gap, 1.0);
      if (t <= 0.0) break;
      for (auto& w : weight) w *= (1.0 - t);
      std::size_t k = 0;
      while (k < atoms.size() && atoms[k] != s) ++k;
      if (k == atoms.size()) {
        atoms.push_back(s);
        weight.push_back(0.0);
      }
      weight[k] += t;
      if (t >= 1.0) {
        atoms = {s};
        weight = {1.0};
        a = s;
        continue;
      }
      a += t * d;
    } else {
      const Vector d = a - atoms[away];
      const double tmax = weight[away] / (1.0 - weight[away]);
      const double t = line_search(f, a, d, away_gap, tmax);
      if (t <= 0.0) break;
      for (auto& w : weight) w *= (1.0 + t);
      weight[away] -= t;
      a += t * d;
      if (t >= tmax) {
        atoms.erase(atoms.begin() + away);
        weight.erase(weight.begin() + away);
      }
    }
  }
  res.argmax = std::move(a);
  res.value = f.value(res.argmax);
  return res;
}

}  // namespace

OptimumResult frank_wolfe_max(const SmoothObjective& f, const std::vector<Vector>& vertices,
                              const OptimizerConfig& cfg) {
  cfg.validate();
  require_concave(f, "frank_wolfe_max");
  if (vertices.empty()) throw CapabilityError("frank_wolfe_max needs a nonempty vertex list");
  auto lmo = [&vertices](const Vector& g) -> const Vector& {
    std::size_t best = 0;
    double best_val = g.dot(vertices[0]);
    for (std::size_t v = 1; v < vertices.size(); ++v) {
      const double val = g.dot(vertices[v]);
      if (val > best_val) {
        best_val = val;
        best = v;
      }
    }
    return vertices[best];
  };
  return away_step_frank_wolfe(f, max_over_vertices(f, vertices).argmax, lmo, cfg);
}

OptimumResult frank_wolfe_max(const SmoothObjective& f, const ActionSet& set,
                              const OptimizerConfig& cfg) {
  cfg.validate();
  require_concave(f, "frank_wolfe_max");
  auto lmo = [&set](const Vector& g) { return set.linear_maximizer(g); };
  return away_step_frank_wolfe(f, set.linear_maximizer(f.gradient(set.center())), lmo, cfg);
}

}  // namespace caimdp
