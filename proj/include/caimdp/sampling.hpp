#pragma once

#include "caimdp/action_set.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace caimdp {

using Rng = std::mt19937_64;

/// Halton point number `index` (index >= 1) in [0,1)^dims.
Vector halton(std::uint64_t index, int dims);

/// Number of unit-cube coordinates consumed by from_unit_cube.
int cube_dim(const ActionSet& set);

/// Deterministic map [0,1]^cube_dim(set) -> set. Boxes map affinely, balls
/// through their bounding box followed by projection, V-polytopes through
/// exponential-spacing barycentric weights.
Vector from_unit_cube(const ActionSet& set, const Vector& u);

/// `count` quasi-random points of the set (Halton indices start..start+count-1).
std::vector<Vector> quasi_random_points(const ActionSet& set, int count, std::uint64_t start = 1);

/// Uniform draw by rejection from the bounding box; acceptance uses contains().
Vector sample_uniform(const ActionSet& set, Rng& rng);

/// SplitMix64-style derivation of independent stream seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

}  // namespace caimdp
