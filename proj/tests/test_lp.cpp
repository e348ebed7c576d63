#include "caimdp/lp.hpp"
#include "caimdp/sampling.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <limits>

using namespace caimdp;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Max of c·x over {A x <= b, 0 <= x <= u} by enumerating every basic
// solution: choose n active constraints, solve, keep the feasible ones.
double enumerate_vertices(const Vector& c, const Matrix& a, const Vector& b, const Vector& u) {
  const int n = static_cast<int>(c.size());
  const int m = static_cast<int>(b.size());
  // Rows: A x <= b, -x <= 0, x <= u.
  Matrix g(m + 2 * n, n);
  Vector h(m + 2 * n);
  g.topRows(m) = a;
  h.head(m) = b;
  g.middleRows(m, n) = -Matrix::Identity(n, n);
  h.segment(m, n).setZero();
  g.bottomRows(n) = Matrix::Identity(n, n);
  h.tail(n) = u;
  const int rows = static_cast<int>(h.size());
  double best = -kInf;
  std::vector<int> pick(n);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n) {
      Matrix sub(n, n);
      Vector rhs(n);
      for (int i = 0; i < n; ++i) {
        sub.row(i) = g.row(pick[i]);
        rhs(i) = h(pick[i]);
      }
      Eigen::FullPivLU<Matrix> lu(sub);
      if (!lu.isInvertible()) return;
      const Vector x = lu.solve(rhs);
      if (((g * x - h).array() > 1e-9).any()) return;
      best = std::max(best, c.dot(x));
      return;
    }
    for (int r = start; r < rows; ++r) {
      pick[depth] = r;
      rec(r + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace

TEST(SimplexLp, SimpleTriangle) {
  LinearProgram lp;
  lp.objective = Vector::Ones(2);
  lp.a_ub = Matrix::Ones(1, 2);
  lp.b_ub = Vector::Ones(1);
  const auto sol = simplex_lp_max(lp);
  ASSERT_EQ(sol.status, LpStatus::Optimal);
  EXPECT_NEAR(sol.value, 1.0, 1e-12);
}

TEST(SimplexLp, DegenerateRedundantConstraintsTerminate) {
  // Many copies of the same facet plus constraints through the optimum.
  LinearProgram lp;
  lp.objective = Vector::Ones(3);
  lp.a_ub = Matrix(6, 3);
  lp.a_ub << 1, 1, 1, 1, 1, 1, 2, 2, 2, 1, 0, 0, 0, 1, 0, 1, 1, 0;
  lp.b_ub = Vector(6);
  lp.b_ub << 1, 1, 2, 1, 1, 1;
  lp.a_eq = Matrix(2, 3);
  lp.a_eq << 1, 1, 1, 2, 2, 2;
  lp.b_eq = Vector(2);
  lp.b_eq << 1, 2;
  const auto sol = simplex_lp_max(lp);
  ASSERT_EQ(sol.status, LpStatus::Optimal);
  EXPECT_NEAR(sol.value, 1.0, 1e-12);
}

TEST(SimplexLp, KleeMintyCube) {
  const int n = 5;
  LinearProgram lp;
  lp.objective = Vector(n);
  lp.a_ub = Matrix::Zero(n, n);
  lp.b_ub = Vector(n);
  for (int i = 0; i < n; ++i) {
    lp.objective(i) = std::pow(2.0, n - 1 - i);
    for (int j = 0; j < i; ++j) lp.a_ub(i, j) = std::pow(2.0, i - j + 1);
    lp.a_ub(i, i) = 1.0;
    lp.b_ub(i) = std::pow(5.0, i + 1);
  }
  const auto sol = simplex_lp_max(lp);
  ASSERT_EQ(sol.status, LpStatus::Optimal);
  EXPECT_NEAR(sol.value, std::pow(5.0, n), 1e-6);
}

TEST(SimplexLp, Infeasible) {
  LinearProgram lp;
  lp.objective = Vector::Ones(1);
  lp.a_ub = Matrix::Ones(1, 1);
  lp.b_ub = Vector::Constant(1, -1.0);
  EXPECT_EQ(simplex_lp_max(lp).status, LpStatus::Infeasible);
}

TEST(SimplexLp, Unbounded) {
  LinearProgram lp;
  lp.objective = Vector::Ones(2);
  lp.a_ub = Matrix(1, 2);
  lp.a_ub << 1, -1;
  lp.b_ub = Vector::Ones(1);
  EXPECT_EQ(simplex_lp_max(lp).status, LpStatus::Unbounded);
}

TEST(SimplexLp, FreeAndUpperBoundedVariables) {
  // max t s.t. t <= 3 - x, t <= x - 1, x in [-inf, 10], t free.
  LinearProgram lp;
  lp.objective = Vector(2);
  lp.objective << 0, 1;
  lp.a_ub = Matrix(2, 2);
  lp.a_ub << 1, 1, -1, 1;
  lp.b_ub = Vector(2);
  lp.b_ub << 3, -1;
  lp.lower = Vector::Constant(2, -kInf);
  lp.upper = Vector(2);
  lp.upper << 10, kInf;
  const auto sol = simplex_lp_max(lp);
  ASSERT_EQ(sol.status, LpStatus::Optimal);
  EXPECT_NEAR(sol.value, 1.0, 1e-12);
  EXPECT_NEAR(sol.x(0), 2.0, 1e-12);
}

TEST(SimplexLp, RejectsInconsistentDimensions) {
  LinearProgram lp;
  lp.objective = Vector::Ones(2);
  lp.a_ub = Matrix::Ones(1, 3);
  lp.b_ub = Vector::Ones(1);
  EXPECT_THROW(simplex_lp_max(lp), ValidationError);
}

TEST(SimplexLp, RandomLpsMatchBasicSolutionEnumeration) {
  Rng rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 2;
    const int m = 2 + trial % 4;
    LinearProgram lp;
    lp.objective = Vector::NullaryExpr(n, [&] { return u(rng); });
    lp.a_ub = Matrix::NullaryExpr(m, n, [&] { return u(rng); });
    lp.b_ub = Vector::NullaryExpr(m, [&] { return 0.2 + std::abs(u(rng)); });
    lp.lower = Vector::Zero(n);
    lp.upper = Vector::NullaryExpr(n, [&] { return 0.5 + std::abs(u(rng)); });
    const auto sol = simplex_lp_max(lp);
    ASSERT_EQ(sol.status, LpStatus::Optimal) << "trial " << trial;
    EXPECT_NEAR(sol.value, enumerate_vertices(lp.objective, lp.a_ub, lp.b_ub, lp.upper), 1e-8)
        << "trial " << trial;
    EXPECT_LE(((lp.a_ub * sol.x - lp.b_ub).array()).maxCoeff(), 1e-9);
  }
}
