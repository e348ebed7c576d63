#include "caimdp/inner_opt.hpp"
#include "caimdp/oracle.hpp"

#include "oracles.hpp"
#include "random_models.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace caimdp;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

void expect_feasible(const IntervalSimplex& g, const Allocation& a) {
  EXPECT_LE(std::abs(a.p.sum() - 1.0), 1e-12);
  for (int i = 0; i < g.size(); ++i) {
    EXPECT_GE(a.p(i), g.lo()(i));
    EXPECT_LE(a.p(i), g.hi()(i));
  }
}

}  // namespace

TEST(IntervalSimplex, RejectsInvalidIntervals) {
  EXPECT_THROW(IntervalSimplex(vec({0.6, 0.6}), vec({0.7, 0.7})), ValidationError);
  EXPECT_THROW(IntervalSimplex(vec({0.1, 0.1}), vec({0.4, 0.4})), ValidationError);
  EXPECT_THROW(IntervalSimplex(vec({0.5, 0.2}), vec({0.4, 0.9})), ValidationError);
  EXPECT_THROW(IntervalSimplex(vec({-0.1, 0.2}), vec({0.4, 0.9})), ValidationError);
}

TEST(InnerOpt, DegenerateInterval) {
  const IntervalSimplex g(vec({0.3, 0.7}), vec({0.3, 0.7}));
  const auto a = worst_case_distribution(g, vec({5.0, 2.0}));
  EXPECT_EQ(a.p, vec({0.3, 0.7}));
  EXPECT_DOUBLE_EQ(a.value, 0.3 * 5.0 + 0.7 * 2.0);
}

TEST(InnerOpt, AllMassOnExtremeValue) {
  const IntervalSimplex g(vec({0.0, 0.0}), vec({1.0, 1.0}));
  const auto w = worst_case_distribution(g, vec({2.0, 1.0}));
  EXPECT_EQ(w.p, vec({0.0, 1.0}));
  EXPECT_EQ(w.value, 1.0);
  const auto b = best_case_distribution(g, vec({2.0, 1.0}));
  EXPECT_EQ(b.p, vec({1.0, 0.0}));
  EXPECT_EQ(b.value, 2.0);
}

TEST(InnerOpt, ConstantValues) {
  Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const auto iv = testkit::random_intervals(5, rng);
    const IntervalSimplex g(iv.lo, iv.hi);
    EXPECT_NEAR(worst_case_distribution(g, Vector::Constant(5, 3.5)).value, 3.5, 1e-14);
    EXPECT_NEAR(best_case_distribution(g, Vector::Constant(5, 3.5)).value, 3.5, 1e-14);
  }
}

TEST(InnerOpt, MatchesOrderingOracle) {
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 8;
    const auto iv = testkit::random_intervals(n, rng);
    const Vector v = testkit::random_values(n, rng, trial % 4 == 0);
    const IntervalSimplex g(iv.lo, iv.hi);
    const auto w = worst_case_distribution(g, v);
    const auto b = best_case_distribution(g, v);
    expect_feasible(g, w);
    expect_feasible(g, b);
    EXPECT_NEAR(w.value, testkit::orderings_oracle(iv.lo, iv.hi, v, true), 1e-12) << trial;
    EXPECT_NEAR(b.value, testkit::orderings_oracle(iv.lo, iv.hi, v, false), 1e-12) << trial;
    EXPECT_NEAR(w.value, oracle_inner_min(g, v), 1e-12) << trial;
    EXPECT_NEAR(b.value, oracle_inner_max(g, v), 1e-12) << trial;
    EXPECT_LE(w.value, b.value + 1e-12);
  }
}

TEST(InnerOpt, UpperSumJustBelowOne) {
  const Vector lo = vec({0.3879219982918965, 0.25888077645026603});
  const Vector hi = vec({0.56970308281068305, 0.43029691718931679});
  ASSERT_LT(hi.sum(), 1.0);
  const IntervalSimplex g(lo, hi);
  const Vector v = vec({9.68744, 4.2328});
  EXPECT_NEAR(worst_case_distribution(g, v).value, hi.dot(v), 1e-12);
  EXPECT_NEAR(best_case_distribution(g, v).value, hi.dot(v), 1e-12);
  for (int trial = 0; trial < 200; ++trial) {
    Rng rng(static_cast<std::uint64_t>(trial));
    const int n = 2 + trial % 6;
    auto iv = testkit::random_intervals(n, rng);
    iv.hi *= (1.0 - 1e-15) / iv.hi.sum();
    iv.lo = iv.lo.cwiseMin(iv.hi);
    const IntervalSimplex tight(iv.lo, iv.hi);
    const Vector w = testkit::random_values(n, rng);
    EXPECT_NEAR(worst_case_distribution(tight, w).value, iv.hi.dot(w), 1e-12);
    EXPECT_NEAR(best_case_distribution(tight, w).value, iv.hi.dot(w), 1e-12);
  }
}

TEST(InnerOpt, PivotStructure) {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 7;
    const auto iv = testkit::random_intervals(n, rng);
    const Vector v = testkit::random_values(n, rng);
    const auto order = ascending_order(v);
    const auto a = allocate_in_order(iv.lo, iv.hi, v, order);
    const auto pos = std::find(order.begin(), order.end(), a.pivot) - order.begin();
    for (int i = 0; i < n; ++i) {
      if (i < pos) EXPECT_EQ(a.p(order[i]), iv.hi(order[i]));
      if (i > pos) EXPECT_EQ(a.p(order[i]), iv.lo(order[i]));
    }
  }
}

TEST(InnerOpt, PermutationEquivariance) {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 7;
    const auto iv = testkit::random_intervals(n, rng);
    const Vector v = testkit::random_values(n, rng);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Vector lo2(n), hi2(n), v2(n);
    for (int i = 0; i < n; ++i) {
      lo2(perm[i]) = iv.lo(i);
      hi2(perm[i]) = iv.hi(i);
      v2(perm[i]) = v(i);
    }
    const auto a = worst_case_distribution(IntervalSimplex(iv.lo, iv.hi), v);
    const auto b = worst_case_distribution(IntervalSimplex(lo2, hi2), v2);
    for (int i = 0; i < n; ++i) EXPECT_EQ(b.p(perm[i]), a.p(i));
    EXPECT_NEAR(a.value, b.value, 1e-12);
  }
}

TEST(InnerOpt, TieOrderDoesNotChangeValue) {
  Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + trial % 6;
    const auto iv = testkit::random_intervals(n, rng);
    const Vector v = testkit::random_values(n, rng, true);
    std::vector<int> order = ascending_order(v);
    // Reverse each run of equal values.
    for (std::size_t i = 0; i < order.size();) {
      std::size_t j = i;
      while (j < order.size() && v(order[j]) == v(order[i])) ++j;
      std::reverse(order.begin() + static_cast<long>(i), order.begin() + static_cast<long>(j));
      i = j;
    }
    const auto a = worst_case_distribution(IntervalSimplex(iv.lo, iv.hi), v);
    const auto b = allocate_in_order(iv.lo, iv.hi, v, order);
    EXPECT_NEAR(a.value, b.value, 1e-12);
  }
}

TEST(InnerOracle, SmallCasesAndBudget) {
  EXPECT_EQ(oracle_inner_min(IntervalSimplex(vec({1.0}), vec({1.0})), vec({4.0})), 4.0);
  const IntervalSimplex g(vec({0.3, 0.7}), vec({0.3, 0.7}));
  EXPECT_DOUBLE_EQ(oracle_inner_min(g, vec({1.0, 2.0})), 0.3 + 1.4);
  const IntervalSimplex big(Vector::Zero(11), Vector::Ones(11));
  EXPECT_THROW(oracle_inner_min(big, Vector::Zero(11)), BudgetError);
}
