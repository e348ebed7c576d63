#pragma once

#include "caimdp/bellman.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace caimdp {

struct GeneratorConfig {
  int n_states = 25;
  ActionSet action_set = cylinder_action_set();
  /// Relative interval half-width, in [0, 0.5).
  double eps = 0.2;
  /// Share of the half-width that varies with the action, in [0, 1].
  double kappa = 0.5;
  double reward_max = 10.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Random concave/convex instance around a random row-stochastic matrix B:
///
///   lower(a) = B (1 - eps) + B eps kappa (1 - |a - z|^2 / D^2)
///   upper(a) = B (1 + e)   - B e kappa   (1 - |a - z'|^2 / D^2)
///
/// with z, z' uniform in the bounding box, D its diagonal and
/// e = min(eps, 1/B - 1) so that upper stays <= 1. Rewards are uniform in
/// [0, reward_max]. Draws are retried (at most 10 times) if the result fails
/// validation.
Caimdp generate(const GeneratorConfig& cfg);

struct ComparisonConfig {
  std::vector<int> sample_counts{1, 8, 27, 64, 125};
  int repetitions = 5;
  int horizon = 10;
  double gamma = 1.0;
  std::uint64_t seed = 0;
  BackupOptions options;
};

struct ComparisonRun {
  int samples = 0;
  int repetition = 0;
  std::uint64_t seed = 0;
  double seconds = 0.0;
  /// 100 * max_q (R*(q) - R_s(q)) / R*(q), over states with R*(q) > 0.
  double max_subopt_pct = 0.0;
  /// min_q (R*(q) - R_s(q)).
  double min_margin = 0.0;
  Vector values;
};

struct ComparisonRow {
  int samples = 0;
  double mean_seconds = 0.0;
  double mean_max_subopt_pct = 0.0;
  double worst_max_subopt_pct = 0.0;
  double min_margin = 0.0;
};

struct ComparisonReport {
  ComparisonConfig config;
  SynthesisReport continuous;
  double continuous_seconds = 0.0;
  std::vector<ComparisonRow> rows;
  std::vector<ComparisonRun> runs;
};

/// Continuous synthesis against value iteration over s uniformly sampled
/// actions, for every s and repetition. Runs execute in parallel; each has
/// its own seed derived from (seed, s, repetition).
ComparisonReport compare(const Caimdp& imdp, const ComparisonConfig& cfg);

/// `s,mean_cpu_seconds,mean_max_subopt_pct`, one row per s plus a
/// `continuous` row.
std::string comparison_csv(const ComparisonReport& report);

/// `state,R_star,R_<s>...`; R_<s> is the mean over repetitions.
std::string curves_csv(const ComparisonReport& report);

}  // namespace caimdp
