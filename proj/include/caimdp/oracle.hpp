#pragma once

#include "caimdp/model.hpp"
#include "caimdp/parallel.hpp"

#include <vector>

namespace caimdp {

// Brute-force references. Slow by design; used to check the solvers.

/// min p·v over the interval simplex by enumerating every allocation
/// pattern (a pivot coordinate, each other coordinate at lo or hi).
/// Throws BudgetError for more than 10 coordinates.
double oracle_inner_min(const IntervalSimplex& gamma, const Vector& v);
double oracle_inner_max(const IntervalSimplex& gamma, const Vector& v);

enum class OracleMode { Vertices, Grid };

struct OracleBackup {
  /// R + gamma * max over the checked actions of the inner minimum.
  Vector value;
  /// Grid mode: every action of the set lies within `mesh` of a checked
  /// action. Zero in vertex mode.
  double mesh = 0.0;
  /// Per-state Lipschitz bound of a -> min_p p·V.
  Vector lipschitz;
  /// gamma * lipschitz * mesh: the true backup is at most value + envelope.
  Vector envelope;
  long points = 0;
};

/// Vertex mode needs a polytopic set. Grid mode needs a projectable set of
/// dimension <= 3 and affine or quadratic bounds; it checks the projection
/// of a regular grid over the bounding box with about `grid_points` points.
OracleBackup oracle_backup(const Caimdp& imdp, const Vector& v, double gamma, OracleMode mode,
                           long grid_points = 1000000, Execution exec = Execution::Parallel);

/// Exhaustive search over every Markov policy with values in `actions`,
/// each evaluated against the per-step worst case. Per-state maximum of
/// V_0. Throws BudgetError if |actions|^(n_states * horizon) > 1e6.
Vector oracle_synthesize(const Caimdp& imdp, const std::vector<Vector>& actions, int horizon,
                         double gamma);

}  // namespace caimdp
