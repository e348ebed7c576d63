#include "caimdp/experiments.hpp"

#include "caimdp/json_writer.hpp"
#include "caimdp/sampling.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

namespace caimdp {

namespace {

constexpr int kGeneratorRetries = 10;

double elapsed(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Vector uniform_in_box(const Vector& lo, const Vector& hi, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vector x(lo.size());
  for (Eigen::Index i = 0; i < lo.size(); ++i) x(i) = lo(i) + (hi(i) - lo(i)) * u(rng);
  return x;
}

Caimdp draw(const GeneratorConfig& cfg, Rng& rng) {
  const int n = cfg.n_states;
  const int d = cfg.action_set.dim();
  const Vector lo = cfg.action_set.bbox_lo();
  const Vector hi = cfg.action_set.bbox_hi();
  const double diag2 = std::max((hi - lo).squaredNorm(), 1e-300);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  Matrix b(n, n);
  for (int q = 0; q < n; ++q) {
    for (int r = 0; r < n; ++r) b(q, r) = 1.0 - u(rng);  // (0, 1]
    b.row(q) /= b.row(q).sum();
  }

  const Matrix eye = Matrix::Identity(d, d);
  BoundMatrix lower(n), upper(n);
  for (int q = 0; q < n; ++q) {
    for (int r = 0; r < n; ++r) {
      const double base = b(q, r);
      const Vector z = uniform_in_box(lo, hi, rng);
      const Vector z2 = uniform_in_box(lo, hi, rng);

      const double al = base * cfg.eps * cfg.kappa / diag2;
      lower[q].push_back(BoundFunction::quadratic(
          -al * eye, 2.0 * al * z,
          base * (1.0 - cfg.eps) + base * cfg.eps * cfg.kappa - al * z.squaredNorm(),
          Shape::Concave));

      const double eu = std::min(cfg.eps, std::max(0.0, 1.0 / base - 1.0));
      const double au = base * eu * cfg.kappa / diag2;
      upper[q].push_back(BoundFunction::quadratic(
          au * eye, -2.0 * au * z2,
          base * (1.0 + eu) - base * eu * cfg.kappa + au * z2.squaredNorm(), Shape::Convex));
    }
  }
  Vector reward(n);
  for (int q = 0; q < n; ++q) reward(q) = cfg.reward_max * u(rng);
  return Caimdp(cfg.action_set, std::move(lower), std::move(upper), std::move(reward));
}

}  // namespace

void GeneratorConfig::validate() const {
  if (n_states < 1) throw ValidationError("generator needs at least one state");
  if (!(eps >= 0.0 && eps < 0.5)) throw ValidationError("eps must lie in [0, 0.5)");
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw ValidationError("kappa must lie in [0, 1]");
  if (!(reward_max >= 0.0) || !std::isfinite(reward_max)) {
    throw ValidationError("reward_max must be finite and >= 0");
  }
}

Caimdp generate(const GeneratorConfig& cfg) {
  cfg.validate();
  std::string last_error;
  for (int attempt = 0; attempt <= kGeneratorRetries; ++attempt) {
    Rng rng(derive_seed(cfg.seed, 0x67656e, static_cast<std::uint64_t>(attempt)));
    try {
      Caimdp imdp = draw(cfg, rng);
      validate_model(imdp, 256);
      return imdp;
    } catch (const ValidationError& e) {
      last_error = e.what();
    }
  }
  throw ValidationError("generator failed after " + std::to_string(kGeneratorRetries) +
                        " retries: " + last_error);
}

ComparisonReport compare(const Caimdp& imdp, const ComparisonConfig& cfg) {
  if (cfg.sample_counts.empty()) throw ValidationError("no sample counts given");
  for (int s : cfg.sample_counts) {
    if (s < 1) throw ValidationError("sample counts must be >= 1");
  }
  if (cfg.repetitions < 1) throw ValidationError("repetitions must be >= 1");

  ComparisonReport rep;
  rep.config = cfg;
  const auto start = std::chrono::steady_clock::now();
  rep.continuous = synthesize(imdp, cfg.horizon, cfg.gamma, cfg.options);
  rep.continuous_seconds = elapsed(start);
  const Vector& star = rep.continuous.initial_values();

  const int reps = cfg.repetitions;
  const int jobs = static_cast<int>(cfg.sample_counts.size()) * reps;
  rep.runs.resize(jobs);
  parallel_for(jobs, cfg.options.execution, [&](int job) {
    ComparisonRun& run = rep.runs[job];
    run.samples = cfg.sample_counts[job / reps];
    run.repetition = job % reps;
    run.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(run.samples),
                           static_cast<std::uint64_t>(run.repetition));
    Rng rng(run.seed);
    std::vector<Vector> actions;
    for (int k = 0; k < run.samples; ++k) actions.push_back(sample_uniform(imdp.action_set(), rng));
    const auto t0 = std::chrono::steady_clock::now();
    const SynthesisReport r = discrete_vi(imdp, actions, cfg.horizon, cfg.gamma, Execution::Serial);
    run.seconds = elapsed(t0);
    run.values = r.initial_values();
    run.min_margin = std::numeric_limits<double>::infinity();
    run.max_subopt_pct = 0.0;
    for (Eigen::Index q = 0; q < star.size(); ++q) {
      const double margin = star(q) - run.values(q);
      run.min_margin = std::min(run.min_margin, margin);
      if (star(q) > 0.0) run.max_subopt_pct = std::max(run.max_subopt_pct, 100.0 * margin / star(q));
    }
  });

  for (std::size_t i = 0; i < cfg.sample_counts.size(); ++i) {
    ComparisonRow row;
    row.samples = cfg.sample_counts[i];
    row.worst_max_subopt_pct = -std::numeric_limits<double>::infinity();
    row.min_margin = std::numeric_limits<double>::infinity();
    for (int r = 0; r < reps; ++r) {
      const ComparisonRun& run = rep.runs[i * reps + r];
      row.mean_seconds += run.seconds / reps;
      row.mean_max_subopt_pct += run.max_subopt_pct / reps;
      row.worst_max_subopt_pct = std::max(row.worst_max_subopt_pct, run.max_subopt_pct);
      row.min_margin = std::min(row.min_margin, run.min_margin);
    }
    rep.rows.push_back(row);
  }
  return rep;
}

std::string comparison_csv(const ComparisonReport& report) {
  std::ostringstream out;
  out << "s,mean_cpu_seconds,mean_max_subopt_pct\n";
  for (const auto& row : report.rows) {
    out << row.samples << ',' << format_double(row.mean_seconds) << ','
        << format_double(row.mean_max_subopt_pct) << '\n';
  }
  out << "continuous," << format_double(report.continuous_seconds) << ",0.0\n";
  return out.str();
}

std::string curves_csv(const ComparisonReport& report) {
  std::ostringstream out;
  out << "state,R_star";
  for (const auto& row : report.rows) out << ",R_" << row.samples;
  out << '\n';
  const Vector& star = report.continuous.initial_values();
  const int reps = report.config.repetitions;
  for (Eigen::Index q = 0; q < star.size(); ++q) {
    out << q << ',' << format_double(star(q));
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
      double mean = 0.0;
      for (int r = 0; r < reps; ++r) mean += report.runs[i * reps + r].values(q) / reps;
      out << ',' << format_double(mean);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace caimdp
