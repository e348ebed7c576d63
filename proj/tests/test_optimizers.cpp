#include "caimdp/optimizers.hpp"
#include "caimdp/sampling.hpp"

#include "random_models.hpp"

#include <gtest/gtest.h>

#include <limits>

using namespace caimdp;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

SmoothObjective neg_distance(const Vector& c) {
  const int d = static_cast<int>(c.size());
  return SmoothObjective::from_quadratic({-Matrix::Identity(d, d), 2.0 * c, -c.squaredNorm()},
                                         Shape::Concave);
}

SmoothObjective random_concave(int d, Rng& rng, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, 1.0);
  const Matrix b = Matrix::NullaryExpr(d, d, [&] { return n(rng); });
  return SmoothObjective::from_quadratic(
      {-scale * b * b.transpose(), Vector::NullaryExpr(d, [&] { return 2.0 * n(rng); }), n(rng)},
      Shape::Concave);
}

// Max over the projection of a regular bounding-box grid.
double grid_max(const SmoothObjective& f, const ActionSet& set, int per_dim) {
  const Vector lo = set.bbox_lo();
  const Vector hi = set.bbox_hi();
  const int d = set.dim();
  double best = -std::numeric_limits<double>::infinity();
  std::vector<int> idx(d, 0);
  Vector x(d);
  while (true) {
    for (int i = 0; i < d; ++i) x(i) = lo(i) + (hi(i) - lo(i)) * idx[i] / (per_dim - 1.0);
    best = std::max(best, f.value(set.project(x)));
    int i = 0;
    while (i < d && ++idx[i] == per_dim) idx[i++] = 0;
    if (i == d) break;
  }
  return best;
}

}  // namespace

TEST(OptimizerConfig, Validation) {
  OptimizerConfig cfg;
  EXPECT_EQ(cfg.tolerance, 1e-4);
  EXPECT_EQ(cfg.max_iterations, 5000);
  EXPECT_EQ(cfg.multistart, 5);
  EXPECT_NO_THROW(cfg.validate());
  cfg.tolerance = 0.0;
  EXPECT_THROW(cfg.validate(), ValidationError);
  cfg = {};
  cfg.multistart = 0;
  EXPECT_THROW(cfg.validate(), ValidationError);
}

TEST(SmoothObjective, QuadraticGradientMatchesFiniteDifferences) {
  Rng rng(3);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + trial % 3;
    const auto f = random_concave(d, rng);
    const Vector a = Vector::NullaryExpr(d, [&] { return n(rng); });
    const Vector g = f.gradient(a);
    for (int i = 0; i < d; ++i) {
      const double h = 1e-6;
      const Vector e = h * Vector::Unit(d, i);
      const double fd = (f.value(a + e) - f.value(a - e)) / (2 * h);
      EXPECT_NEAR(fd, g(i), 1e-5 * std::max(1.0, std::abs(g(i))));
    }
  }
}

TEST(MaxOverVertices, LinearOverSquareFirstIndexWins) {
  const auto verts = ActionSet::box(Vector::Zero(2), Vector::Ones(2)).vertices();
  const auto f = SmoothObjective::from_quadratic({Matrix::Zero(2, 2), vec({1.0, 0.0}), 0.0},
                                                 Shape::Linear);
  const auto r = max_over_vertices(f, verts);
  EXPECT_EQ(r.value, 1.0);
  EXPECT_EQ(r.argmax, vec({1.0, 0.0}));
  EXPECT_EQ(r.vertex_index, 1);
}

TEST(MaxOverVertices, ConvexOverSquare) {
  const auto verts = ActionSet::box(-Vector::Ones(2), Vector::Ones(2)).vertices();
  const auto f = SmoothObjective::from_quadratic({Matrix::Identity(2, 2), Vector::Zero(2), 0.0},
                                                 Shape::Convex);
  EXPECT_EQ(max_over_vertices(f, verts).value, 2.0);
  EXPECT_THROW(max_over_vertices(f, {}), CapabilityError);
}

TEST(MaxOverVertices, AffineDominatesConvexCombinations) {
  Rng rng(17);
  std::normal_distribution<double> n(0.0, 1.0);
  std::exponential_distribution<double> e(1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const ActionSet set = testkit::random_polytope(rng);
    const auto verts = set.vertices();
    const int d = set.dim();
    const auto f = SmoothObjective::from_quadratic(
        {Matrix::Zero(d, d), Vector::NullaryExpr(d, [&] { return n(rng); }), n(rng)},
        Shape::Linear);
    const auto r = max_over_vertices(f, verts);
    double sampled = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < 100000 / 5; ++k) {
      Vector w = Vector::NullaryExpr(static_cast<Eigen::Index>(verts.size()), [&] { return std::pow(e(rng), 4.0); });
      w /= w.sum();
      Vector a = Vector::Zero(d);
      for (std::size_t i = 0; i < verts.size(); ++i) a += w(i) * verts[i];
      sampled = std::max(sampled, f.value(a));
    }
    EXPECT_LE(sampled, r.value + 1e-12);
    EXPECT_GE(sampled, r.value - 0.05 * (1.0 + std::abs(r.value)));
  }
}

TEST(ProjectedGradient, InteriorOptimum) {
  const ActionSet ball = ActionSet::ball(Vector::Zero(2), 1.0);
  const Vector c = vec({0.3, -0.2});
  const auto r = projected_gradient_max(neg_distance(c), ball, {});
  EXPECT_LE((r.argmax - c).norm(), 1e-6);
  EXPECT_NEAR(r.value, 0.0, 1e-6);
  EXPECT_TRUE(r.converged);
}

TEST(ProjectedGradient, BoundaryOptimumIsProjection) {
  const ActionSet ball = ActionSet::ball(Vector::Zero(2), 1.0);
  const Vector c = vec({3.0, 4.0});
  const auto r = projected_gradient_max(neg_distance(c), ball, {});
  EXPECT_LE((r.argmax - vec({0.6, 0.8})).norm(), 1e-6);
  EXPECT_TRUE(ball.contains(r.argmax));
}

TEST(ProjectedGradient, RejectsConvexObjectiveAndPolytope) {
  const ActionSet ball = ActionSet::ball(Vector::Zero(2), 1.0);
  const auto f = SmoothObjective::from_quadratic({Matrix::Identity(2, 2), Vector::Zero(2), 0.0},
                                                 Shape::Convex);
  EXPECT_THROW(projected_gradient_max(f, ball, {}), CapabilityError);
  const ActionSet tri = ActionSet::polytope({Vector::Zero(2), Vector::Unit(2, 0), Vector::Unit(2, 1)});
  EXPECT_THROW(projected_gradient_max(neg_distance(Vector::Zero(2)), tri, {}), CapabilityError);
}

TEST(ProjectedGradient, CylinderAgainstGridOracle) {
  Rng rng(99);
  const ActionSet cyl = cylinder_action_set();
  for (int trial = 0; trial < 4; ++trial) {
    const auto f = random_concave(3, rng);
    const auto r = projected_gradient_max(f, cyl, {});
    EXPECT_TRUE(cyl.contains(r.argmax, 1e-9));
    EXPECT_TRUE(r.converged);
    const double grid = grid_max(f, cyl, 100);
    // The grid only visits members, and the gap certifies the optimum.
    EXPECT_GE(r.value + r.gap, grid - 1e-12);
    EXPECT_GE(r.value, grid - 1e-4);
  }
}

TEST(FrankWolfe, LinearObjectiveStopsAtVertex) {
  const auto verts = ActionSet::box(Vector::Zero(2), Vector::Ones(2)).vertices();
  const auto f = SmoothObjective::from_quadratic({Matrix::Zero(2, 2), vec({1.0, 2.0}), 0.0},
                                                 Shape::Linear);
  const auto r = frank_wolfe_max(f, verts, {});
  EXPECT_EQ(r.gap, 0.0);
  EXPECT_EQ(r.argmax, vec({1.0, 1.0}));
  EXPECT_LE(r.iterations, 1);
}

TEST(FrankWolfe, InteriorOptimumOfConcaveQuadratic) {
  const auto verts = ActionSet::box(Vector::Zero(2), Vector::Ones(2)).vertices();
  const Vector c = vec({0.4, 0.7});
  const auto r = frank_wolfe_max(neg_distance(c), verts, {});
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.gap, 1e-4);
  EXPECT_GE(r.value, -1e-4);
}

TEST(FrankWolfe, AgreesWithProjectedGradientOnBoxes) {
  Rng rng(44);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + trial % 3;
    const ActionSet box = ActionSet::box(-Vector::Ones(d), Vector::Ones(d));
    const auto f = random_concave(d, rng);
    const auto pg = projected_gradient_max(f, box, {});
    const auto fw = frank_wolfe_max(f, box.vertices(), {});
    const auto lmo = frank_wolfe_max(f, box, {});
    EXPECT_NEAR(pg.value, fw.value, 2e-4) << trial;
    EXPECT_NEAR(pg.value, lmo.value, 2e-4) << trial;
    EXPECT_TRUE(box.contains(fw.argmax, 1e-9));
  }
}

TEST(FrankWolfe, GapBoundsSuboptimalityOnPolytopes) {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const ActionSet tri = ActionSet::polytope({vec({0.0, 0.0}), vec({2.0, 0.0}), vec({0.5, 1.5})});
    const auto f = random_concave(2, rng, 0.3);
    OptimizerConfig loose;
    loose.tolerance = 1e-2;
    const auto r = frank_wolfe_max(f, tri.vertices(), loose);
    const auto exact = frank_wolfe_max(f, tri.vertices(), OptimizerConfig{1e-9});
    EXPECT_LE(exact.value - r.value, r.gap + 1e-9);
    EXPECT_TRUE(tri.contains(r.argmax, 1e-9));
  }
}
