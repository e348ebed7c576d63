#include "caimdp/report_io.hpp"

#include "caimdp/model_io.hpp"

namespace caimdp {

using nlohmann::json;

namespace {

json vectors_to_json(const std::vector<Vector>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(vector_to_json(v));
  return out;
}

json stats_to_json(const SolverStats& s) {
  return {{"problems", s.problems},
          {"iterations", s.iterations},
          {"unconverged", s.unconverged},
          {"max_gap", s.max_gap}};
}

}  // namespace

json policy_to_json(const MarkovPolicy& policy) {
  json actions = json::array();
  for (const auto& step : policy.actions) actions.push_back(vectors_to_json(step));
  return {{"horizon", policy.horizon}, {"actions", actions}};
}

MarkovPolicy policy_from_json(const json& j, int n_states, int action_dim) {
  if (!j.is_object()) throw ParseError("policy: expected an object");
  if (!j.contains("horizon") || !j["horizon"].is_number_integer()) {
    throw ParseError("policy.horizon: expected an integer");
  }
  if (!j.contains("actions") || !j["actions"].is_array()) {
    throw ParseError("policy.actions: expected an array");
  }
  MarkovPolicy p;
  p.horizon = j["horizon"].get<int>();
  if (p.horizon < 0) throw ValidationError("policy.horizon: must be >= 0");
  const json& acts = j["actions"];
  if (static_cast<int>(acts.size()) != p.horizon) {
    throw ValidationError("policy.actions: expected " + std::to_string(p.horizon) + " time steps");
  }
  for (std::size_t t = 0; t < acts.size(); ++t) {
    const std::string path = "policy.actions[" + std::to_string(t) + "]";
    if (!acts[t].is_array()) throw ParseError(path + ": expected an array");
    if (static_cast<int>(acts[t].size()) != n_states) {
      throw ValidationError(path + ": expected " + std::to_string(n_states) + " states");
    }
    std::vector<Vector> step;
    for (std::size_t q = 0; q < acts[t].size(); ++q) {
      step.push_back(vector_from_json(acts[t][q], path + "[" + std::to_string(q) + "]", action_dim));
    }
    p.actions.push_back(std::move(step));
  }
  return p;
}

MarkovPolicy load_policy(const std::filesystem::path& path, int n_states, int action_dim) {
  return policy_from_json(read_json_file(path), n_states, action_dim);
}

json synthesis_report_to_json(const SynthesisReport& r, bool timing) {
  json out = {{"shape_class", r.shape_class},
              {"horizon", r.horizon},
              {"gamma", r.gamma},
              {"tolerance", r.tolerance},
              {"values", vectors_to_json(r.values)},
              {"policy", policy_to_json(r.policy)},
              {"solver", stats_to_json(r.stats)},
              {"certified_slack", r.certified_slack},
              {"certified", r.certified}};
  if (timing) out["iteration_seconds"] = r.iteration_seconds;
  return out;
}

json validation_report_to_json(const ValidationReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"action", e.action_index},
                       {"ordering", e.ordering},
                       {"range", e.range},
                       {"lower_sum", e.lower_sum},
                       {"upper_sum", e.upper_sum}});
  }
  return {{"passed", r.passed},
          {"tolerance", ValidationReport::kTol},
          {"worst_violation", r.worst_violation},
          {"checked_actions", r.entries.size()},
          {"entries", entries}};
}

json bound_report_to_json(const BoundReport& r) {
  return {{"gap", vector_to_json(r.gap)},
          {"optimistic", vector_to_json(r.optimistic)},
          {"pessimistic", vector_to_json(r.pessimistic)},
          {"certified_slack", r.certified_slack},
          {"certified", r.certified}};
}

json comparison_report_to_json(const ComparisonReport& r, bool timing) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json j = {{"s", row.samples},
              {"mean_max_subopt_pct", row.mean_max_subopt_pct},
              {"worst_max_subopt_pct", row.worst_max_subopt_pct},
              {"min_margin", row.min_margin}};
    if (timing) j["mean_cpu_seconds"] = row.mean_seconds;
    rows.push_back(j);
  }
  json runs = json::array();
  for (const auto& run : r.runs) {
    json j = {{"s", run.samples},
              {"repetition", run.repetition},
              {"seed", run.seed},
              {"max_subopt_pct", run.max_subopt_pct},
              {"min_margin", run.min_margin},
              {"values", vector_to_json(run.values)}};
    if (timing) j["cpu_seconds"] = run.seconds;
    runs.push_back(j);
  }
  json cont = {{"values", vector_to_json(r.continuous.initial_values())},
               {"certified_slack", r.continuous.certified_slack},
               {"certified", r.continuous.certified},
               {"mean_max_subopt_pct", 0.0}};
  if (timing) cont["cpu_seconds"] = r.continuous_seconds;
  return {{"seed", r.config.seed},
          {"horizon", r.config.horizon},
          {"gamma", r.config.gamma},
          {"tolerance", r.config.options.optimizer.tolerance},
          {"repetitions", r.config.repetitions},
          {"continuous", cont},
          {"rows", rows},
          {"runs", runs}};
}

std::vector<Vector> actions_from_json(const json& j, int action_dim) {
  if (!j.is_array()) throw ParseError("actions: expected an array of actions");
  std::vector<Vector> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(vector_from_json(j[k], "actions[" + std::to_string(k) + "]", action_dim));
  }
  return out;
}

}  // namespace caimdp
