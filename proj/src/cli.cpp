#include "caimdp/cli.hpp"

#include "caimdp/json_writer.hpp"
#include "caimdp/model_io.hpp"
#include "caimdp/report_io.hpp"
#include "caimdp/sampling.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

namespace caimdp::cli {

namespace {

using nlohmann::json;

void emit_error(const std::string& category, const std::string& message) {
  std::cerr << json{{"error", category}, {"message", message}}.dump() << "\n";
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  out << text;
}

BackupOptions backup_options(double tol, bool serial) {
  BackupOptions opts;
  opts.optimizer.tolerance = tol;
  opts.execution = serial ? Execution::Serial : Execution::Parallel;
  return opts;
}

struct Common {
  int horizon = 0;
  double gamma = 1.0;
  double tol = 1e-4;
  bool serial = false;
  bool timing = false;
};

void add_horizon(CLI::App* cmd, Common& c) {
  cmd->add_option("--horizon", c.horizon, "Horizon N")->required()->check(CLI::NonNegativeNumber);
  cmd->add_option("--gamma", c.gamma, "Discount factor")->required()->check(
      CLI::NonNegativeNumber);
}

void add_solver(CLI::App* cmd, Common& c) {
  cmd->add_option("--tol", c.tol, "Optimizer tolerance")->check(CLI::PositiveNumber);
  cmd->add_flag("--serial", c.serial, "Disable OpenMP parallelism");
  cmd->add_flag("--timing", c.timing, "Include wall-clock timings in JSON output");
}

std::vector<Vector> parse_actions(const std::string& source, const Caimdp& imdp,
                                  std::uint64_t seed) {
  if (source == "vertices") return imdp.action_set().vertices();
  if (source.rfind("sample:", 0) == 0) {
    int s = 0;
    try {
      s = std::stoi(source.substr(7));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--actions", "bad sample count in " + source);
    }
    if (s < 1) throw CLI::ValidationError("--actions", "sample count must be >= 1");
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    std::vector<Vector> out;
    for (int k = 0; k < s; ++k) out.push_back(sample_uniform(imdp.action_set(), rng));
    return out;
  }
  return actions_from_json(read_json_file(source), imdp.action_dim());
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Robust synthesis for continuous-action interval MDPs", "caimdp"};
  app.require_subcommand(1);
  Common c;
  std::string model_path, second_path, out_path, policy_out, json_out, curves_out;
  int exit_code = 0;

  // validate
  int samples = 256;
  auto* validate = app.add_subcommand("validate", "Check interval consistency at sampled actions");
  validate->add_option("model", model_path, "Model file")->required();
  validate->add_option("--samples", samples, "Quasi-random actions")->check(CLI::NonNegativeNumber);

  // synthesize
  bool optimistic = false;
  auto* synth = app.add_subcommand("synthesize", "Robust value iteration");
  synth->add_option("model", model_path, "Model file")->required();
  add_horizon(synth, c);
  add_solver(synth, c);
  synth->add_option("--out", out_path, "Report file (default: stdout)");
  synth->add_option("--policy-out", policy_out, "Write the policy file");
  synth->add_flag("--optimistic", optimistic, "Best-case adversary instead of worst-case");

  // evaluate
  std::string mode = "worst";
  auto* eval = app.add_subcommand("evaluate", "Value of a fixed Markov policy");
  eval->add_option("model", model_path, "Model file")->required();
  eval->add_option("policy", second_path, "Policy file")->required();
  eval->add_option("--mode", mode, "Adversary")->check(CLI::IsMember({"worst", "best"}));
  eval->add_option("--gamma", c.gamma, "Discount factor")->check(CLI::NonNegativeNumber);

  // discrete
  std::string actions_source;
  std::uint64_t seed = 0;
  auto* disc = app.add_subcommand("discrete", "Value iteration over a finite action list");
  disc->add_option("model", model_path, "Model file")->required();
  disc->add_option("--actions", actions_source, "vertices | file.json | sample:s")->required();
  add_horizon(disc, c);
  disc->add_flag("--serial", c.serial, "Disable OpenMP parallelism");
  disc->add_flag("--timing", c.timing, "Include wall-clock timings");
  disc->add_option("--seed", seed, "Seed for sample:s");
  disc->add_option("--out", out_path, "Report file (default: stdout)");

  // bound
  auto* bound = app.add_subcommand("bound", "Optimistic minus pessimistic values");
  bound->add_option("model_lo", model_path, "Model with inf-aggregated rewards")->required();
  bound->add_option("model_hi", second_path, "Model with sup-aggregated rewards")->required();
  add_horizon(bound, c);
  add_solver(bound, c);

  // gen
  GeneratorConfig gen_cfg;
  auto* gen = app.add_subcommand("gen", "Random concave/convex instance on the cylinder");
  gen->add_option("--states", gen_cfg.n_states, "Number of states")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_cfg.seed, "Seed");
  gen->add_option("--eps", gen_cfg.eps, "Interval half-width in [0, 0.5)");
  gen->add_option("--kappa", gen_cfg.kappa, "Action-dependent share in [0, 1]");
  gen->add_option("--out", out_path, "Model file (default: stdout)");

  // compare
  ComparisonConfig cmp;
  auto* comp = app.add_subcommand("compare", "Continuous synthesis against sampled actions");
  comp->add_option("model", model_path, "Model file")->required();
  comp->add_option("--samples", cmp.sample_counts, "Sample counts")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  comp->add_option("--reps", cmp.repetitions, "Repetitions per sample count")
      ->check(CLI::PositiveNumber);
  add_horizon(comp, c);
  add_solver(comp, c);
  comp->add_option("--seed", cmp.seed, "Seed");
  comp->add_option("--out", out_path, "CSV summary (default: stdout)");
  comp->add_option("--json", json_out, "JSON report");
  comp->add_option("--curves", curves_out, "Per-state CSV of R_star and R_s");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error("usage", e.what());
    return 2;
  }

  try {
    if (*validate) {
      const Caimdp imdp = load_model(model_path, false);
      const ValidationReport rep =
          validate_pointwise(imdp, default_validation_actions(imdp.action_set(), samples));
      write_json(std::cout, validation_report_to_json(rep));
      exit_code = rep.passed ? 0 : 1;
    } else if (*synth) {
      const Caimdp imdp = load_model(model_path);
      const BackupOptions opts = backup_options(c.tol, c.serial);
      const SynthesisReport rep = optimistic ? synthesize_optimistic(imdp, c.horizon, c.gamma, opts)
                                             : synthesize(imdp, c.horizon, c.gamma, opts);
      write_text(out_path, dump_json(synthesis_report_to_json(rep, c.timing)));
      if (!policy_out.empty()) write_json_file(policy_to_json(rep.policy), policy_out);
    } else if (*eval) {
      const Caimdp imdp = load_model(model_path);
      const MarkovPolicy policy = load_policy(second_path, imdp.n_states(), imdp.action_dim());
      const Vector v = evaluate_policy(imdp, policy, c.gamma,
                                       mode == "best" ? Adversary::Best : Adversary::Worst);
      write_json(std::cout, json{{"mode", mode}, {"gamma", c.gamma}, {"values", vector_to_json(v)}});
    } else if (*disc) {
      const Caimdp imdp = load_model(model_path);
      const auto actions = parse_actions(actions_source, imdp, seed);
      const SynthesisReport rep = discrete_vi(imdp, actions, c.horizon, c.gamma,
                                              c.serial ? Execution::Serial : Execution::Parallel);
      write_text(out_path, dump_json(synthesis_report_to_json(rep, c.timing)));
    } else if (*bound) {
      const Caimdp lo = load_model(model_path);
      const Caimdp hi = load_model(second_path);
      const BoundReport rep =
          suboptimality_bound(lo, hi, c.horizon, c.gamma, backup_options(c.tol, c.serial));
      write_json(std::cout, bound_report_to_json(rep));
    } else if (*gen) {
      const Caimdp imdp = generate(gen_cfg);
      write_text(out_path, dump_json(model_to_json(imdp)));
    } else if (*comp) {
      const Caimdp imdp = load_model(model_path);
      cmp.horizon = c.horizon;
      cmp.gamma = c.gamma;
      cmp.options = backup_options(c.tol, c.serial);
      const ComparisonReport rep = compare(imdp, cmp);
      write_text(out_path, comparison_csv(rep));
      if (!json_out.empty()) write_json_file(comparison_report_to_json(rep, c.timing), json_out);
      if (!curves_out.empty()) write_text(curves_out, curves_csv(rep));
    }
  } catch (const CLI::ParseError& e) {
    emit_error("usage", e.what());
    return 2;
  } catch (const Error& e) {
    emit_error(e.category(), e.what());
    return 1;
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
    return 1;
  }
  return exit_code;
}

}  // namespace caimdp::cli
