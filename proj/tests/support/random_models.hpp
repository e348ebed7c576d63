#pragma once

#include "caimdp/model.hpp"
#include "caimdp/sampling.hpp"

namespace caimdp::testkit {

struct Intervals {
  Vector lo;
  Vector hi;
};

/// Valid interval simplex of size n around a random distribution; some
/// coordinates are degenerate (lo = hi) and some have lo = 0.
Intervals random_intervals(int n, Rng& rng);

/// Values in [0, 10]; with `ties`, values are drawn from a small set.
Vector random_values(int n, Rng& rng, bool ties = false);

/// Box, PolytopeV or Product of boxes, dimension <= 3, at most
/// `max_vertices` vertices.
ActionSet random_polytope(Rng& rng, int max_vertices = 8);

/// Ball, box, cylinder-like product or polytope.
ActionSet random_convex_set(Rng& rng, int max_dim = 3);

enum class ModelKind { Linear, ConvexConcave, ConcaveConvex };

/// Random model of the given class on `set`. Bounds are built around an
/// affine distribution P(a) that is nonnegative on the set, so interval
/// consistency holds everywhere on the set by construction.
Caimdp random_model(ModelKind kind, int n, const ActionSet& set, Rng& rng);

}  // namespace caimdp::testkit
