#include "caimdp/oracle.hpp"

#include <cmath>
#include <limits>

namespace caimdp {

namespace {

constexpr int kMaxInnerSize = 10;
constexpr double kPivotTol = 1e-12;
constexpr double kPolicyBudget = 1e6;

double enumerate_patterns(const Vector& lo, const Vector& hi, const Vector& v, bool minimize) {
  const int n = static_cast<int>(lo.size());
  if (n > kMaxInnerSize) {
    throw BudgetError("inner oracle is limited to " + std::to_string(kMaxInnerSize) +
                      " states, got " + std::to_string(n));
  }
  if (v.size() != n) throw ValidationError("value vector has the wrong length");
  double best = minimize ? std::numeric_limits<double>::infinity()
                         : -std::numeric_limits<double>::infinity();
  bool found = false;
  const unsigned patterns = 1u << (n - 1);
  for (int m = 0; m < n; ++m) {
    for (unsigned mask = 0; mask < patterns; ++mask) {
      double mass = 0.0;
      double val = 0.0;
      int bit = 0;
      for (int i = 0; i < n; ++i) {
        if (i == m) continue;
        const double x = ((mask >> bit) & 1u) ? hi(i) : lo(i);
        ++bit;
        mass += x;
        val += x * v(i);
      }
      const double pm = 1.0 - mass;
      if (pm < lo(m) - kPivotTol || pm > hi(m) + kPivotTol) continue;
      val += pm * v(m);
      found = true;
      best = minimize ? std::min(best, val) : std::max(best, val);
    }
  }
  if (!found) throw ValidationError("interval simplex has no feasible allocation");
  return best;
}

// Regular grid over the bounding box, about `target` points, projected onto
// the set. Returns the covering radius.
double grid_points(const ActionSet& set, long target, std::vector<Vector>& out) {
  const int d = set.dim();
  const Vector lo = set.bbox_lo();
  const Vector hi = set.bbox_hi();
  int active = 0;
  for (int i = 0; i < d; ++i) active += hi(i) > lo(i) ? 1 : 0;
  const long per_dim =
      active == 0 ? 1
                  : std::max(2L, static_cast<long>(std::floor(
                                     std::pow(static_cast<double>(target), 1.0 / active) + 1e-9)));
  std::vector<long> counts(d);
  double spacing = 0.0;
  long total = 1;
  for (int i = 0; i < d; ++i) {
    counts[i] = hi(i) > lo(i) ? per_dim : 1;
    total *= counts[i];
    if (counts[i] > 1) spacing = std::max(spacing, (hi(i) - lo(i)) / (counts[i] - 1));
  }
  out.clear();
  out.reserve(total);
  std::vector<long> idx(d, 0);
  Vector x(d);
  for (long k = 0; k < total; ++k) {
    for (int i = 0; i < d; ++i) {
      x(i) = counts[i] == 1 ? lo(i)
                            : lo(i) + (hi(i) - lo(i)) * static_cast<double>(idx[i]) /
                                          static_cast<double>(counts[i] - 1);
    }
    out.push_back(set.project(x));
    for (int i = 0; i < d; ++i) {
      if (++idx[i] < counts[i]) break;
      idx[i] = 0;
    }
  }
  return spacing * std::sqrt(static_cast<double>(active)) / 2.0;
}

double curvature_norm(const BoundFunction& b) {
  if (const auto* qd = b.as_quadratic()) return 2.0 * qd->h.operatorNorm();
  return 0.0;
}

}  // namespace

double oracle_inner_min(const IntervalSimplex& gamma, const Vector& v) {
  return enumerate_patterns(gamma.lo(), gamma.hi(), v, true);
}

double oracle_inner_max(const IntervalSimplex& gamma, const Vector& v) {
  return enumerate_patterns(gamma.lo(), gamma.hi(), v, false);
}

OracleBackup oracle_backup(const Caimdp& imdp, const Vector& v, double gamma, OracleMode mode,
                           long grid_target, Execution exec) {
  const int n = imdp.n_states();
  const ActionSet& set = imdp.action_set();
  if (v.size() != n) throw ValidationError("value vector has the wrong length");
  OracleBackup out;
  std::vector<Vector> actions;
  if (mode == OracleMode::Vertices) {
    if (!set.is_polytope()) throw CapabilityError("vertex oracle needs a polytopic action set");
    actions = set.vertices();
  } else {
    if (set.dim() > 3) throw BudgetError("grid oracle is limited to action dimension 3");
    if (!set.can_project()) throw CapabilityError(set.kind_name() + " set cannot be gridded");
    for (int q = 0; q < n; ++q) {
      for (int r = 0; r < n; ++r) {
        if (!imdp.lower(q, r).serializable() || !imdp.upper(q, r).serializable()) {
          throw CapabilityError("grid oracle needs affine or quadratic bounds");
        }
      }
    }
    out.mesh = grid_points(set, grid_target, actions);
  }
  out.points = static_cast<long>(actions.size());
  const double spread = v.maxCoeff() - v.minCoeff();

  out.value.resize(n);
  out.lipschitz = Vector::Zero(n);
  parallel_for(n, exec, [&](int q) {
    Vector lo(n), hi(n);
    double best = -std::numeric_limits<double>::infinity();
    double grad_sum = 0.0;
    for (const auto& a : actions) {
      imdp.evaluate_row(q, a, lo, hi);
      best = std::max(best, enumerate_patterns(lo, hi, v, true));
      if (mode == OracleMode::Grid) {
        double s = 0.0;
        for (int r = 0; r < n; ++r) {
          s += std::max(imdp.lower(q, r).gradient(a).norm(), imdp.upper(q, r).gradient(a).norm());
        }
        grad_sum = std::max(grad_sum, s);
      }
    }
    double margin = 0.0;
    for (int r = 0; r < n; ++r) {
      margin += std::max(curvature_norm(imdp.lower(q, r)), curvature_norm(imdp.upper(q, r)));
    }
    out.value(q) = imdp.reward()(q) + gamma * best;
    out.lipschitz(q) = spread * (grad_sum + margin * out.mesh);
  });
  out.envelope = gamma * out.mesh * out.lipschitz;
  return out;
}

Vector oracle_synthesize(const Caimdp& imdp, const std::vector<Vector>& actions, int horizon,
                         double gamma) {
  if (horizon < 0) throw ValidationError("horizon must be >= 0");
  if (actions.empty()) throw ValidationError("action list is empty");
  const int n = imdp.n_states();
  const int m = static_cast<int>(actions.size());
  const int slots = n * horizon;
  if (static_cast<double>(slots) * std::log(static_cast<double>(m)) >
      std::log(kPolicyBudget) + 1e-9) {
    throw BudgetError("policy enumeration exceeds 1e6 policies");
  }
  std::vector<Vector> lo(static_cast<std::size_t>(n) * m), hi(lo.size());
  for (int q = 0; q < n; ++q) {
    for (int k = 0; k < m; ++k) imdp.evaluate_row(q, actions[k], lo[q * m + k], hi[q * m + k]);
  }
  Vector best = Vector::Constant(n, -std::numeric_limits<double>::infinity());
  std::vector<int> choice(slots, 0);  // choice[t * n + q]
  while (true) {
    Vector val = imdp.reward();
    for (int t = horizon - 1; t >= 0; --t) {
      Vector next(n);
      for (int q = 0; q < n; ++q) {
        const int k = choice[t * n + q];
        next(q) = imdp.reward()(q) + gamma * enumerate_patterns(lo[q * m + k], hi[q * m + k], val, true);
      }
      val = std::move(next);
    }
    best = best.cwiseMax(val);
    int s = 0;
    while (s < slots && ++choice[s] == m) choice[s++] = 0;
    if (s == slots) break;
  }
  return best;
}

}  // namespace caimdp
