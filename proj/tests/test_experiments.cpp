#include "caimdp/experiments.hpp"
#include "caimdp/model_io.hpp"
#include "caimdp/sampling.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace caimdp;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<Vector> fresh_actions(const ActionSet& set, int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vector> out;
  for (int k = 0; k < count; ++k) out.push_back(sample_uniform(set, rng));
  return out;
}

GeneratorConfig small(std::uint64_t seed) {
  GeneratorConfig cfg;
  cfg.n_states = 5;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST(Generator, DefaultInstanceIsConcaveConvexAndValid) {
  GeneratorConfig cfg;
  cfg.seed = 7;
  const Caimdp m = generate(cfg);
  EXPECT_EQ(m.n_states(), 25);
  EXPECT_EQ(m.action_set(), cylinder_action_set());
  EXPECT_EQ(classify(m), ShapeClass::ConcaveConvex);
  const auto rep = validate_pointwise(m, fresh_actions(m.action_set(), 100, 99));
  EXPECT_TRUE(rep.passed) << rep.worst_violation;
  EXPECT_TRUE((m.reward().array() >= 0.0).all());
  EXPECT_TRUE((m.reward().array() <= 10.0).all());
}

TEST(Generator, ZeroWidthCollapsesIntervals) {
  GeneratorConfig cfg = small(3);
  cfg.eps = 0.0;
  const Caimdp m = generate(cfg);
  for (const auto& a : fresh_actions(m.action_set(), 20, 4)) {
    for (int q = 0; q < 5; ++q) {
      Vector lo, hi;
      m.evaluate_row(q, a, lo, hi);
      EXPECT_LE((lo - hi).cwiseAbs().maxCoeff(), 1e-15);
      EXPECT_NEAR(lo.sum(), 1.0, 1e-12);
    }
  }
}

TEST(Generator, ActionIndependentWithoutCurvature) {
  GeneratorConfig cfg = small(5);
  cfg.kappa = 0.0;
  const Caimdp m = generate(cfg);
  const auto actions = fresh_actions(m.action_set(), 10, 6);
  for (int q = 0; q < 5; ++q) {
    Vector lo0, hi0;
    m.evaluate_row(q, actions[0], lo0, hi0);
    // lower = B (1 - eps), so lower / (1 - eps) is a distribution.
    EXPECT_NEAR(lo0.sum() / (1.0 - cfg.eps), 1.0, 1e-12);
    for (int r = 0; r < 5; ++r) {
      const double base = lo0(r) / (1.0 - cfg.eps);
      const double e = std::min(cfg.eps, 1.0 / base - 1.0);
      EXPECT_NEAR(hi0(r), base * (1.0 + e), 1e-12);
    }
    for (const auto& a : actions) {
      Vector lo, hi;
      m.evaluate_row(q, a, lo, hi);
      EXPECT_LE((lo - lo0).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_LE((hi - hi0).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(Generator, BoundsStayWithinTheirBands) {
  GeneratorConfig cfg = small(8);
  cfg.eps = 0.3;
  cfg.kappa = 1.0;
  const Caimdp m = generate(cfg);
  for (const auto& a : fresh_actions(m.action_set(), 50, 9)) {
    for (int q = 0; q < 5; ++q) {
      Vector lo, hi;
      m.evaluate_row(q, a, lo, hi);
      EXPECT_TRUE((lo.array() >= -1e-12).all());
      EXPECT_TRUE((hi.array() <= 1.0 + 1e-12).all());
      EXPECT_TRUE((lo.array() <= hi.array() + 1e-12).all());
      EXPECT_LE(lo.sum(), 1.0 + 1e-12);
      EXPECT_GE(hi.sum(), 1.0 - 1e-12);
    }
  }
}

TEST(Generator, DeterministicInSeed) {
  const auto a = model_to_json(generate(small(11)));
  const auto b = model_to_json(generate(small(11)));
  const auto c = model_to_json(generate(small(12)));
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
}

TEST(Generator, RejectsBadConfig) {
  GeneratorConfig cfg = small(1);
  cfg.eps = 0.5;
  EXPECT_THROW(generate(cfg), ValidationError);
  cfg = small(1);
  cfg.kappa = 1.5;
  EXPECT_THROW(generate(cfg), ValidationError);
  cfg = small(1);
  cfg.n_states = 0;
  EXPECT_THROW(generate(cfg), ValidationError);
}

TEST(Compare, DiscreteNeverBeatsContinuous) {
  const Caimdp m = generate(small(13));
  ComparisonConfig cfg;
  cfg.sample_counts = {1, 4, 16};
  cfg.repetitions = 3;
  cfg.horizon = 4;
  cfg.seed = 14;
  const auto rep = compare(m, cfg);
  ASSERT_EQ(rep.rows.size(), 3u);
  ASSERT_EQ(rep.runs.size(), 9u);
  for (const auto& row : rep.rows) {
    EXPECT_GE(row.min_margin, -rep.continuous.certified_slack);
    EXPECT_GE(row.worst_max_subopt_pct, row.mean_max_subopt_pct - 1e-12);
  }
  for (const auto& run : rep.runs) EXPECT_EQ(run.values.size(), 5);
}

TEST(Compare, ValuesAreReproducible) {
  const Caimdp m = generate(small(15));
  ComparisonConfig cfg;
  cfg.sample_counts = {2, 8};
  cfg.repetitions = 2;
  cfg.horizon = 3;
  cfg.seed = 16;
  const auto a = compare(m, cfg);
  cfg.options.execution = Execution::Serial;
  const auto b = compare(m, cfg);
  ASSERT_EQ(a.runs.size(), b.runs.size());
  for (std::size_t i = 0; i < a.runs.size(); ++i) {
    EXPECT_EQ(a.runs[i].seed, b.runs[i].seed);
    EXPECT_EQ(a.runs[i].values, b.runs[i].values);
  }
  EXPECT_NE(a.runs[0].seed, a.runs[1].seed);
}

TEST(Compare, CsvLayout) {
  const Caimdp m = generate(small(17));
  ComparisonConfig cfg;
  cfg.sample_counts = {1, 8};
  cfg.repetitions = 2;
  cfg.horizon = 2;
  const auto rep = compare(m, cfg);
  const auto table = lines(comparison_csv(rep));
  ASSERT_EQ(table.size(), 4u);
  EXPECT_EQ(table[0], "s,mean_cpu_seconds,mean_max_subopt_pct");
  EXPECT_EQ(table[1].rfind("1,", 0), 0u);
  EXPECT_EQ(table[2].rfind("8,", 0), 0u);
  EXPECT_EQ(table[3].rfind("continuous,", 0), 0u);
  EXPECT_EQ(table[3].substr(table[3].size() - 4), ",0.0");
  const auto curves = lines(curves_csv(rep));
  ASSERT_EQ(curves.size(), 6u);
  EXPECT_EQ(curves[0], "state,R_star,R_1,R_8");
  EXPECT_EQ(curves[1].rfind("0,", 0), 0u);
}

TEST(Compare, RejectsBadConfig) {
  const Caimdp m = generate(small(18));
  ComparisonConfig cfg;
  cfg.sample_counts = {};
  EXPECT_THROW(compare(m, cfg), ValidationError);
  cfg.sample_counts = {0};
  EXPECT_THROW(compare(m, cfg), ValidationError);
  cfg.sample_counts = {1};
  cfg.repetitions = 0;
  EXPECT_THROW(compare(m, cfg), ValidationError);
}
