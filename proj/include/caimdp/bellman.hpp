#pragma once

#include "caimdp/model.hpp"
#include "caimdp/optimizers.hpp"
#include "caimdp/parallel.hpp"

#include <string>
#include <vector>

namespace caimdp {

/// Values in descending order with the state behind each position:
/// values(i) = V(order[i]). Ties keep index order.
struct SortedValues {
  Vector values;
  std::vector<int> order;
};

SortedValues sort_descending(const Vector& v);

/// f_j(a) = sum_{i<j} (V_i - V_j) lower(q, order[i])(a)
///        + sum_{i>j} (V_i - V_j) upper(q, order[i])(a) + V_j
/// with i, j positions in the descending order (0-based). max_j f_j(a) is
/// the worst-case expectation of V at action a.
SmoothObjective mp_objective(const Caimdp& imdp, int q, int j, const SortedValues& sorted);

/// Mirror of mp_objective with the roles of the bounds swapped;
/// min_j h_j(a) is the best-case expectation of V at action a.
SmoothObjective optimistic_objective(const Caimdp& imdp, int q, int j, const SortedValues& sorted);

struct BackupOptions {
  OptimizerConfig optimizer;
  Execution execution = Execution::Parallel;
  /// Keep every per-j value in BackupResult::per_j.
  bool keep_per_j = false;
};

struct SolverStats {
  long problems = 0;
  long iterations = 0;
  long unconverged = 0;
  double max_gap = 0.0;

  void merge(const SolverStats& other);
};

struct BackupResult {
  /// R + gamma * (optimal inner value).
  Vector value;
  std::vector<Vector> action;
  std::vector<int> winning_j;
  /// Pessimistic: per_j[q][j] is the worst-case expectation at the
  /// maximizer of f_j. Optimistic: h_j at the chosen action. Empty unless
  /// requested.
  std::vector<std::vector<double>> per_j;
  bool certified = true;
  SolverStats stats;
};

/// One robust Bellman backup: R(q) + gamma * max_a min_{p} p·V.
/// Throws UnsupportedClassError for the General class.
BackupResult pessimistic_backup(const Caimdp& imdp, const Vector& v, double gamma,
                                const BackupOptions& opts = {});

/// R(q) + gamma * max_a max_{p} p·V. Certified for the Linear and
/// ConvexConcave classes; a local estimate (certified = false) for
/// ConcaveConvex.
BackupResult optimistic_backup(const Caimdp& imdp, const Vector& v, double gamma,
                               const BackupOptions& opts = {});

/// actions[t][q], t = 0..horizon-1.
struct MarkovPolicy {
  int horizon = 0;
  std::vector<std::vector<Vector>> actions;
};

struct SynthesisReport {
  std::string shape_class;
  int horizon = 0;
  double gamma = 1.0;
  double tolerance = 0.0;
  /// values[k] = V_k, k = 0..horizon; values[horizon] = R.
  std::vector<Vector> values;
  MarkovPolicy policy;
  /// Wall time of each backup, in execution order (V_{N-1} first).
  std::vector<double> iteration_seconds;
  SolverStats stats;
  /// Bound on the accumulated optimizer error in values[0].
  double certified_slack = 0.0;
  bool certified = true;

  const Vector& initial_values() const { return values.front(); }
};

/// Robust value iteration from V_N = R down to V_0.
SynthesisReport synthesize(const Caimdp& imdp, int horizon, double gamma,
                           const BackupOptions& opts = {});

/// Best-case value iteration (optimistic_backup at every step).
SynthesisReport synthesize_optimistic(const Caimdp& imdp, int horizon, double gamma,
                                      const BackupOptions& opts = {});

enum class Adversary { Worst, Best };

/// V_0 of a fixed Markov policy against the per-step worst- or best-case
/// distribution. Throws MembershipError (index t * n_states + q) for an
/// action outside the action set.
Vector evaluate_policy(const Caimdp& imdp, const MarkovPolicy& policy, double gamma,
                       Adversary adversary = Adversary::Worst);

/// Value iteration over a finite action list. Throws ValidationError on an
/// empty list and MembershipError for an action outside the set.
SynthesisReport discrete_vi(const Caimdp& imdp, const std::vector<Vector>& actions, int horizon,
                            double gamma, Execution exec = Execution::Parallel);

struct BoundReport {
  Vector gap;
  Vector optimistic;
  Vector pessimistic;
  double certified_slack = 0.0;
  bool certified = true;
};

/// Optimistic V_0 of `upper_reward` minus pessimistic V_0 of `lower_reward`.
/// The two models must share the state space, action set and bounds.
BoundReport suboptimality_bound(const Caimdp& lower_reward, const Caimdp& upper_reward,
                                int horizon, double gamma, const BackupOptions& opts = {});

}  // namespace caimdp
