#pragma once

#include "caimdp/action_set.hpp"
#include "caimdp/bound_function.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace caimdp {

/// q(a) = aᵀHa + c·a + d
struct QuadraticForm {
  Matrix h;
  Vector c;
  double d = 0.0;

  double value(const Vector& a) const;
  Vector gradient(const Vector& a) const;
};

/// A differentiable objective over the action space with a declared shape.
struct SmoothObjective {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
  Shape shape = Shape::Unknown;
  /// Set when the objective is exactly a quadratic; enables exact line search.
  std::optional<QuadraticForm> quadratic;

  static SmoothObjective from_quadratic(QuadraticForm q, Shape shape);
};

struct OptimizerConfig {
  double tolerance = 1e-4;
  int max_iterations = 5000;
  int multistart = 5;
  double backtracking = 0.5;
  double sufficient_increase = 1e-4;

  /// Throws ValidationError on nonpositive tolerance or counts.
  void validate() const;
};

struct OptimumResult {
  double value = 0.0;
  Vector argmax;
  /// Duality-gap certificate: f* - value <= gap for concave objectives.
  double gap = 0.0;
  bool converged = true;
  int iterations = 0;
  /// Index into the vertex list, when the argmax is a listed vertex.
  int vertex_index = -1;
};

/// Maximum of f over a finite list; the first maximizing vertex wins ties.
/// Exact for linear objectives over polytopes and convex objectives over
/// polytopes (both attain their maximum at a vertex).
OptimumResult max_over_vertices(const SmoothObjective& f, const std::vector<Vector>& vertices);

/// Projected gradient ascent with Armijo backtracking, restarted from the set
/// center and multistart-1 quasi-random points. Terminates when both the
/// projected-gradient residual and the linear-maximization gap are within
/// the tolerance. Requires a concave (or linear) objective and a set with a
/// projection oracle.
OptimumResult projected_gradient_max(const SmoothObjective& f, const ActionSet& set,
                                     const OptimizerConfig& cfg);

/// Away-step Frank-Wolfe over conv(vertices) for a concave objective.
OptimumResult frank_wolfe_max(const SmoothObjective& f, const std::vector<Vector>& vertices,
                              const OptimizerConfig& cfg);

/// Away-step Frank-Wolfe over the atoms returned by the set's
/// linear-maximization oracle.
OptimumResult frank_wolfe_max(const SmoothObjective& f, const ActionSet& set,
                              const OptimizerConfig& cfg);

/// Euclidean projection onto the set (Box, Ball, Product of those).
inline Vector project(const ActionSet& set, const Vector& x) { return set.project(x); }

}  // namespace caimdp
