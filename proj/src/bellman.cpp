#include "caimdp/bellman.hpp"

#include "caimdp/lp.hpp"
#include "caimdp/sampling.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace caimdp {

void SolverStats::merge(const SolverStats& other) {
  problems += other.problems;
  iterations += other.iterations;
  unconverged += other.unconverged;
  max_gap = std::max(max_gap, other.max_gap);
}

SortedValues sort_descending(const Vector& v) {
  SortedValues s;
  s.order = descending_order(v);
  s.values.resize(v.size());
  for (std::size_t i = 0; i < s.order.size(); ++i) s.values(i) = v(s.order[i]);
  return s;
}

namespace {

struct Term {
  double coef;
  const BoundFunction* f;
};

// Linear combination of bound functions plus a constant. Terms refer into
// the model, which must outlive the objective.
SmoothObjective compose(std::vector<Term> terms, double constant, int dim) {
  bool linear = true;
  bool concave = true;
  bool convex = true;
  bool quadratic = true;
  for (const auto& t : terms) {
    Shape s = t.f->shape();
    if (t.coef < 0.0) {
      if (s == Shape::Concave) {
        s = Shape::Convex;
      } else if (s == Shape::Convex) {
        s = Shape::Concave;
      }
    }
    if (s != Shape::Linear) linear = false;
    if (s == Shape::Convex || s == Shape::Unknown) concave = false;
    if (s == Shape::Concave || s == Shape::Unknown) convex = false;
    if (t.f->as_opaque()) quadratic = false;
  }
  const Shape shape = linear    ? Shape::Linear
                      : concave ? Shape::Concave
                      : convex  ? Shape::Convex
                                : Shape::Unknown;
  if (quadratic) {
    QuadraticForm form{Matrix::Zero(dim, dim), Vector::Zero(dim), constant};
    for (const auto& t : terms) {
      if (const auto* a = t.f->as_affine()) {
        form.c += t.coef * a->c;
        form.d += t.coef * a->d;
      } else {
        const auto* qd = t.f->as_quadratic();
        form.h += t.coef * qd->h;
        form.c += t.coef * qd->c;
        form.d += t.coef * qd->d;
      }
    }
    return SmoothObjective::from_quadratic(std::move(form), shape);
  }
  SmoothObjective f;
  f.shape = shape;
  f.value = [terms, constant](const Vector& a) {
    double acc = constant;
    for (const auto& t : terms) acc += t.coef * (*t.f)(a);
    return acc;
  };
  f.gradient = [terms, dim](const Vector& a) {
    Vector g = Vector::Zero(dim);
    for (const auto& t : terms) g += t.coef * t.f->gradient(a);
    return g;
  };
  return f;
}

SmoothObjective split_objective(const Caimdp& imdp, int q, int j, const SortedValues& sorted,
                                bool optimistic) {
  const int n = imdp.n_states();
  if (q < 0 || q >= n) throw ValidationError("state index out of range");
  if (j < 0 || j >= n) throw ValidationError("objective index j out of range");
  if (sorted.values.size() != n || static_cast<int>(sorted.order.size()) != n) {
    throw ValidationError("value vector has the wrong length");
  }
  const double vj = sorted.values(j);
  std::vector<Term> terms;
  for (int i = 0; i < n; ++i) {
    if (i == j) continue;
    const double coef = sorted.values(i) - vj;
    if (coef == 0.0) continue;
    const int r = sorted.order[i];
    const bool use_lower = (i < j) != optimistic;
    terms.push_back({coef, use_lower ? &imdp.lower(q, r) : &imdp.upper(q, r)});
  }
  return compose(std::move(terms), vj, imdp.action_dim());
}

void check_inputs(const Caimdp& imdp, const Vector& v, double gamma) {
  if (v.size() != imdp.n_states()) throw ValidationError("value vector has the wrong length");
  if (!v.allFinite()) throw ValidationError("value vector must be finite");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw ValidationError("gamma must be finite and >= 0");
  }
}

void require_supported(const Caimdp& imdp, ShapeClass cls) {
  if (cls == ShapeClass::General) {
    throw UnsupportedClassError("model is outside every tractable shape class: " +
                                describe_general_class(imdp));
  }
}

bool exact_class(ShapeClass cls) {
  return cls == ShapeClass::Linear || cls == ShapeClass::ConvexConcave;
}

// Shared per-backup data.
struct BackupContext {
  const Caimdp& imdp;
  const Vector& v;
  ShapeClass cls;
  SortedValues sorted;
  std::vector<int> ascending;
  std::vector<int> descending;
  std::vector<Vector> vertices;
  const OptimizerConfig& cfg;

  BackupContext(const Caimdp& m, const Vector& values, ShapeClass c, const OptimizerConfig& config)
      : imdp(m), v(values), cls(c), sorted(sort_descending(values)), cfg(config) {
    ascending = ascending_order(values);
    descending = sorted.order;
    if (m.action_set().is_polytope()) vertices = m.action_set().vertices();
  }

  double worst(int q, const Vector& a) const {
    Vector lo, hi;
    imdp.evaluate_row(q, a, lo, hi);
    return allocate_in_order(lo, hi, v, ascending).value;
  }
  double best(int q, const Vector& a) const {
    Vector lo, hi;
    imdp.evaluate_row(q, a, lo, hi);
    return allocate_in_order(lo, hi, v, descending).value;
  }
};

struct StateSolve {
  double inner = 0.0;
  Vector action;
  int j = 0;
  std::vector<double> per_j;
  bool converged = true;
  SolverStats stats;
};

void record(SolverStats& stats, const OptimumResult& r) {
  ++stats.problems;
  stats.iterations += r.iterations;
  if (!r.converged) ++stats.unconverged;
  stats.max_gap = std::max(stats.max_gap, r.gap);
}

OptimumResult maximize_mp(const SmoothObjective& f, const BackupContext& ctx) {
  const ActionSet& set = ctx.imdp.action_set();
  if (exact_class(ctx.cls)) return max_over_vertices(f, ctx.vertices);
  if (f.shape == Shape::Linear) {
    if (set.is_polytope()) return max_over_vertices(f, ctx.vertices);
    OptimumResult r;
    r.argmax = set.linear_maximizer(f.gradient(set.center()));
    r.value = f.value(r.argmax);
    return r;
  }
  if (set.can_project()) return projected_gradient_max(f, set, ctx.cfg);
  if (set.is_polytope()) return frank_wolfe_max(f, ctx.vertices, ctx.cfg);
  return frank_wolfe_max(f, set, ctx.cfg);
}

StateSolve solve_pessimistic(const BackupContext& ctx, int q) {
  const int n = ctx.imdp.n_states();
  StateSolve s;
  s.per_j.resize(n);
  s.inner = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    const SmoothObjective f = mp_objective(ctx.imdp, q, j, ctx.sorted);
    OptimumResult r = maximize_mp(f, ctx);
    record(s.stats, r);
    if (!r.converged) s.converged = false;
    // The worst case at a_j dominates f_j(a_j) and is attained by an action.
    s.per_j[j] = ctx.worst(q, r.argmax);
    if (s.per_j[j] > s.inner) {
      s.inner = s.per_j[j];
      s.action = std::move(r.argmax);
      s.j = j;
    }
  }
  return s;
}

std::vector<SmoothObjective> optimistic_objectives(const BackupContext& ctx, int q) {
  std::vector<SmoothObjective> h;
  for (int j = 0; j < ctx.imdp.n_states(); ++j) {
    h.push_back(optimistic_objective(ctx.imdp, q, j, ctx.sorted));
  }
  return h;
}

// min_j h_j(a) and the minimizing j.
std::pair<double, int> lower_envelope(const std::vector<SmoothObjective>& h, const Vector& a) {
  double best = std::numeric_limits<double>::infinity();
  int arg = 0;
  for (std::size_t j = 0; j < h.size(); ++j) {
    const double val = h[j].value(a);
    if (val < best) {
      best = val;
      arg = static_cast<int>(j);
    }
  }
  return {best, arg};
}

Vector combine(const std::vector<Vector>& vertices, const Vector& weights) {
  Vector a = Vector::Zero(vertices.front().size());
  for (std::size_t k = 0; k < vertices.size(); ++k) a += weights(k + 1) * vertices[k];
  return a;
}

// max_a min_j h_j(a) over conv(vertices) for affine h_j: one epigraph LP
// over the vertex weights.
StateSolve optimistic_linear(const BackupContext& ctx, int q) {
  const auto h = optimistic_objectives(ctx, q);
  const auto& verts = ctx.vertices;
  const int m = static_cast<int>(verts.size());
  const int n = static_cast<int>(h.size());
  LinearProgram lp;
  lp.objective = Vector::Zero(m + 1);
  lp.objective(0) = 1.0;
  lp.a_ub = Matrix::Zero(n, m + 1);
  lp.b_ub = Vector::Zero(n);
  for (int j = 0; j < n; ++j) {
    lp.a_ub(j, 0) = 1.0;
    for (int k = 0; k < m; ++k) lp.a_ub(j, k + 1) = -h[j].value(verts[k]);
  }
  lp.a_eq = Matrix::Zero(1, m + 1);
  lp.a_eq.rightCols(m).setOnes();
  lp.b_eq = Vector::Ones(1);
  lp.lower = Vector::Zero(m + 1);
  lp.lower(0) = -std::numeric_limits<double>::infinity();
  lp.upper = Vector::Constant(m + 1, std::numeric_limits<double>::infinity());
  const LpSolution sol = simplex_lp_max(lp);
  if (sol.status != LpStatus::Optimal) throw SolverError("optimistic epigraph LP did not solve");

  StateSolve s;
  s.action = combine(verts, sol.x);
  s.inner = sol.value;
  s.j = lower_envelope(h, s.action).second;
  s.stats.problems = 1;
  s.stats.iterations = sol.pivots;
  s.per_j.resize(n);
  for (int j = 0; j < n; ++j) s.per_j[j] = h[j].value(s.action);
  return s;
}

// Kelley cutting planes for concave h_j over conv(vertices). The LP value
// is an upper bound on the optimum, the best evaluated point a lower bound.
// The reported value is the upper bound.
StateSolve optimistic_kelley(const BackupContext& ctx, int q) {
  constexpr int kMaxCuts = 500;
  const auto h = optimistic_objectives(ctx, q);
  const auto& verts = ctx.vertices;
  const int m = static_cast<int>(verts.size());
  const int n = static_cast<int>(h.size());

  std::vector<Vector> cuts;  // coefficient of each vertex weight
  auto add_cut = [&](int j, const Vector& a) {
    const double val = h[j].value(a);
    const Vector g = h[j].gradient(a);
    Vector row(m);
    for (int k = 0; k < m; ++k) row(k) = val + g.dot(verts[k] - a);
    cuts.push_back(std::move(row));
  };

  Vector a = Vector::Zero(verts.front().size());
  for (const auto& x : verts) a += x;
  a /= m;
  for (int j = 0; j < n; ++j) add_cut(j, a);
  auto [lb, lb_j] = lower_envelope(h, a);
  Vector best_a = a;

  StateSolve s;
  s.converged = false;
  double ub = std::numeric_limits<double>::infinity();
  for (int it = 0; it < kMaxCuts; ++it) {
    const int rows = static_cast<int>(cuts.size());
    LinearProgram lp;
    lp.objective = Vector::Zero(m + 1);
    lp.objective(0) = 1.0;
    lp.a_ub = Matrix::Zero(rows, m + 1);
    lp.b_ub = Vector::Zero(rows);
    for (int r = 0; r < rows; ++r) {
      lp.a_ub(r, 0) = 1.0;
      lp.a_ub.block(r, 1, 1, m) = -cuts[r].transpose();
    }
    lp.a_eq = Matrix::Zero(1, m + 1);
    lp.a_eq.rightCols(m).setOnes();
    lp.b_eq = Vector::Ones(1);
    lp.lower = Vector::Zero(m + 1);
    lp.lower(0) = -std::numeric_limits<double>::infinity();
    lp.upper = Vector::Constant(m + 1, std::numeric_limits<double>::infinity());
    const LpSolution sol = simplex_lp_max(lp);
    if (sol.status != LpStatus::Optimal) throw SolverError("cutting-plane LP did not solve");
    ++s.stats.iterations;
    ub = std::min(ub, sol.value);
    a = combine(verts, sol.x);
    const auto [val, j] = lower_envelope(h, a);
    if (val > lb) {
      lb = val;
      lb_j = j;
      best_a = a;
    }
    if (ub - lb <= ctx.cfg.tolerance) {
      s.converged = true;
      break;
    }
    add_cut(j, a);
  }
  s.stats.problems = 1;
  if (!s.converged) ++s.stats.unconverged;
  s.stats.max_gap = std::max(0.0, ub - lb);
  s.inner = std::max(ub, lb);
  s.action = best_a;
  s.j = lb_j;
  s.per_j.resize(n);
  for (int j = 0; j < n; ++j) s.per_j[j] = h[j].value(best_a);
  return s;
}

// Local search for max_a min_j h_j(a) with convex h_j. No certificate.
StateSolve optimistic_local(const BackupContext& ctx, int q) {
  constexpr int kSamples = 32;
  constexpr int kRefined = 5;
  constexpr int kSteps = 200;
  const ActionSet& set = ctx.imdp.action_set();
  const auto h = optimistic_objectives(ctx, q);

  std::vector<Vector> candidates{set.center()};
  if (set.is_polytope() && ctx.vertices.size() <= 64) {
    candidates.insert(candidates.end(), ctx.vertices.begin(), ctx.vertices.end());
  }
  for (auto& p : quasi_random_points(set, kSamples)) candidates.push_back(std::move(p));
  // The pessimistic maximizer keeps the estimate above the pessimistic value.
  StateSolve pess = solve_pessimistic(ctx, q);
  candidates.push_back(pess.action);

  std::vector<std::pair<double, int>> scored;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    scored.emplace_back(ctx.best(q, candidates[k]), static_cast<int>(k));
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });

  StateSolve s = std::move(pess);
  s.converged = false;
  s.inner = -std::numeric_limits<double>::infinity();
  const int refine = std::min<int>(kRefined, static_cast<int>(scored.size()));
  for (int r = 0; r < refine; ++r) {
    Vector a = candidates[scored[r].second];
    double fa = scored[r].first;
    if (set.can_project()) {
      double step = 1.0;
      for (int it = 0; it < kSteps && step > 1e-12; ++it) {
        const int j = lower_envelope(h, a).second;
        const Vector g = h[j].gradient(a);
        if (g.norm() == 0.0) break;
        const Vector cand = set.project(a + step * g);
        const double fc = ctx.best(q, cand);
        ++s.stats.iterations;
        if (fc > fa) {
          a = cand;
          fa = fc;
          step *= 2.0;
        } else {
          step *= 0.5;
        }
      }
    }
    if (fa > s.inner) {
      s.inner = fa;
      s.action = a;
    }
  }
  s.j = lower_envelope(h, s.action).second;
  ++s.stats.problems;
  ++s.stats.unconverged;
  for (int j = 0; j < static_cast<int>(h.size()); ++j) s.per_j[j] = h[j].value(s.action);
  return s;
}

template <class Solve>
BackupResult run_backup(const Caimdp& imdp, double gamma, const BackupOptions& opts,
                        Solve solve) {
  const int n = imdp.n_states();
  std::vector<StateSolve> solved(n);
  parallel_for(n, opts.execution, [&](int q) { solved[q] = solve(q); });

  BackupResult res;
  res.value.resize(n);
  res.action.resize(n);
  res.winning_j.resize(n);
  for (int q = 0; q < n; ++q) {
    res.value(q) = imdp.reward()(q) + gamma * solved[q].inner;
    res.action[q] = std::move(solved[q].action);
    res.winning_j[q] = solved[q].j;
    if (!solved[q].converged) res.certified = false;
    res.stats.merge(solved[q].stats);
    if (opts.keep_per_j) res.per_j.push_back(std::move(solved[q].per_j));
  }
  return res;
}

BackupResult pessimistic_backup_impl(const Caimdp& imdp, const Vector& v, double gamma,
                                     const BackupOptions& opts, ShapeClass cls) {
  const BackupContext ctx(imdp, v, cls, opts.optimizer);
  return run_backup(imdp, gamma, opts, [&](int q) { return solve_pessimistic(ctx, q); });
}

BackupResult optimistic_backup_impl(const Caimdp& imdp, const Vector& v, double gamma,
                                    const BackupOptions& opts, ShapeClass cls) {
  const BackupContext ctx(imdp, v, cls, opts.optimizer);
  return run_backup(imdp, gamma, opts, [&](int q) {
    switch (cls) {
      case ShapeClass::Linear:
        return optimistic_linear(ctx, q);
      case ShapeClass::ConvexConcave:
        return optimistic_kelley(ctx, q);
      default:
        return optimistic_local(ctx, q);
    }
  });
}

double slack_factor(int horizon, double gamma) {
  double acc = 0.0;
  double g = 1.0;
  for (int i = 1; i <= horizon; ++i) {
    g *= gamma;
    acc += g;
  }
  return acc;
}

void check_horizon(int horizon, double gamma) {
  if (horizon < 0) throw ValidationError("horizon must be >= 0");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw ValidationError("gamma must be finite and >= 0");
  }
}

template <class Backup>
SynthesisReport iterate(const Caimdp& imdp, int horizon, double gamma, const BackupOptions& opts,
                        ShapeClass cls, Backup backup) {
  SynthesisReport rep;
  rep.shape_class = to_string(cls);
  rep.horizon = horizon;
  rep.gamma = gamma;
  rep.tolerance = opts.optimizer.tolerance;
  rep.values.assign(horizon + 1, Vector());
  rep.values[horizon] = imdp.reward();
  rep.policy.horizon = horizon;
  rep.policy.actions.resize(horizon);
  for (int k = horizon; k >= 1; --k) {
    const auto start = std::chrono::steady_clock::now();
    BackupResult r = backup(rep.values[k]);
    rep.iteration_seconds.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    rep.values[k - 1] = std::move(r.value);
    rep.policy.actions[k - 1] = std::move(r.action);
    rep.stats.merge(r.stats);
    if (!r.certified) rep.certified = false;
  }
  return rep;
}

}  // namespace

SmoothObjective mp_objective(const Caimdp& imdp, int q, int j, const SortedValues& sorted) {
  return split_objective(imdp, q, j, sorted, false);
}

SmoothObjective optimistic_objective(const Caimdp& imdp, int q, int j,
                                     const SortedValues& sorted) {
  return split_objective(imdp, q, j, sorted, true);
}

BackupResult pessimistic_backup(const Caimdp& imdp, const Vector& v, double gamma,
                                const BackupOptions& opts) {
  check_inputs(imdp, v, gamma);
  opts.optimizer.validate();
  const ShapeClass cls = classify(imdp);
  require_supported(imdp, cls);
  return pessimistic_backup_impl(imdp, v, gamma, opts, cls);
}

BackupResult optimistic_backup(const Caimdp& imdp, const Vector& v, double gamma,
                               const BackupOptions& opts) {
  check_inputs(imdp, v, gamma);
  opts.optimizer.validate();
  const ShapeClass cls = classify(imdp);
  require_supported(imdp, cls);
  return optimistic_backup_impl(imdp, v, gamma, opts, cls);
}

SynthesisReport synthesize(const Caimdp& imdp, int horizon, double gamma,
                           const BackupOptions& opts) {
  check_horizon(horizon, gamma);
  opts.optimizer.validate();
  const ShapeClass cls = classify(imdp);
  require_supported(imdp, cls);
  SynthesisReport rep = iterate(imdp, horizon, gamma, opts, cls, [&](const Vector& v) {
    return pessimistic_backup_impl(imdp, v, gamma, opts, cls);
  });
  rep.certified_slack = exact_class(cls) ? 0.0 : opts.optimizer.tolerance * slack_factor(horizon, gamma);
  return rep;
}

SynthesisReport synthesize_optimistic(const Caimdp& imdp, int horizon, double gamma,
                                      const BackupOptions& opts) {
  check_horizon(horizon, gamma);
  opts.optimizer.validate();
  const ShapeClass cls = classify(imdp);
  require_supported(imdp, cls);
  SynthesisReport rep = iterate(imdp, horizon, gamma, opts, cls, [&](const Vector& v) {
    return optimistic_backup_impl(imdp, v, gamma, opts, cls);
  });
  rep.certified_slack = cls == ShapeClass::Linear
                            ? 0.0
                            : opts.optimizer.tolerance * slack_factor(horizon, gamma);
  if (cls == ShapeClass::ConcaveConvex) rep.certified = false;
  return rep;
}

Vector evaluate_policy(const Caimdp& imdp, const MarkovPolicy& policy, double gamma,
                       Adversary adversary) {
  check_horizon(policy.horizon, gamma);
  const int n = imdp.n_states();
  if (static_cast<int>(policy.actions.size()) != policy.horizon) {
    throw ValidationError("policy has " + std::to_string(policy.actions.size()) +
                          " time steps, expected " + std::to_string(policy.horizon));
  }
  for (int t = 0; t < policy.horizon; ++t) {
    if (static_cast<int>(policy.actions[t].size()) != n) {
      throw ValidationError("policy step " + std::to_string(t) + " does not cover every state");
    }
    for (int q = 0; q < n; ++q) {
      const Vector& a = policy.actions[t][q];
      if (a.size() != imdp.action_dim() || !imdp.action_set().contains(a)) {
        throw MembershipError("policy action at t=" + std::to_string(t) + ", q=" +
                                  std::to_string(q) + " is outside the action set",
                              static_cast<long>(t) * n + q);
      }
    }
  }
  Vector v = imdp.reward();
  Vector lo, hi;
  for (int t = policy.horizon - 1; t >= 0; --t) {
    const auto order = adversary == Adversary::Worst ? ascending_order(v) : descending_order(v);
    Vector next(n);
    for (int q = 0; q < n; ++q) {
      imdp.evaluate_row(q, policy.actions[t][q], lo, hi);
      next(q) = imdp.reward()(q) + gamma * allocate_in_order(lo, hi, v, order).value;
    }
    v = std::move(next);
  }
  return v;
}

SynthesisReport discrete_vi(const Caimdp& imdp, const std::vector<Vector>& actions, int horizon,
                            double gamma, Execution exec) {
  check_horizon(horizon, gamma);
  if (actions.empty()) throw ValidationError("discrete action list is empty");
  const int n = imdp.n_states();
  const int m = static_cast<int>(actions.size());
  for (int k = 0; k < m; ++k) {
    if (actions[k].size() != imdp.action_dim() || !imdp.action_set().contains(actions[k])) {
      throw MembershipError("action " + std::to_string(k) + " is outside the action set", k);
    }
  }
  // Bounds do not change across iterations.
  std::vector<Vector> lo(static_cast<std::size_t>(n) * m);
  std::vector<Vector> hi(lo.size());
  parallel_for(n, exec, [&](int q) {
    for (int k = 0; k < m; ++k) imdp.evaluate_row(q, actions[k], lo[q * m + k], hi[q * m + k]);
  });

  const BackupOptions opts;
  return iterate(imdp, horizon, gamma, opts, classify(imdp), [&](const Vector& v) {
    const auto order = ascending_order(v);
    std::vector<StateSolve> solved(n);
    parallel_for(n, exec, [&](int q) {
      StateSolve& s = solved[q];
      s.inner = -std::numeric_limits<double>::infinity();
      for (int k = 0; k < m; ++k) {
        const double val = allocate_in_order(lo[q * m + k], hi[q * m + k], v, order).value;
        if (val > s.inner) {
          s.inner = val;
          s.j = k;
        }
      }
      s.action = actions[s.j];
    });
    BackupResult r;
    r.value.resize(n);
    for (int q = 0; q < n; ++q) {
      r.value(q) = imdp.reward()(q) + gamma * solved[q].inner;
      r.action.push_back(std::move(solved[q].action));
    }
    r.stats.problems = n;
    r.stats.iterations = static_cast<long>(n) * m;
    return r;
  });
}

BoundReport suboptimality_bound(const Caimdp& lower_reward, const Caimdp& upper_reward,
                                int horizon, double gamma, const BackupOptions& opts) {
  if (lower_reward.n_states() != upper_reward.n_states() ||
      !(lower_reward.action_set() == upper_reward.action_set())) {
    throw ValidationError("bound models must share the state space and action set");
  }
  if (lower_reward.serializable() && upper_reward.serializable() &&
      (lower_reward.lower() != upper_reward.lower() ||
       lower_reward.upper() != upper_reward.upper())) {
    throw ValidationError("bound models must share the transition bounds");
  }
  const SynthesisReport opt = synthesize_optimistic(upper_reward, horizon, gamma, opts);
  const SynthesisReport pes = synthesize(lower_reward, horizon, gamma, opts);
  BoundReport b;
  b.optimistic = opt.initial_values();
  b.pessimistic = pes.initial_values();
  b.gap = b.optimistic - b.pessimistic;
  b.certified_slack = opt.certified_slack + pes.certified_slack;
  b.certified = opt.certified && pes.certified;
  return b;
}

}  // namespace caimdp
