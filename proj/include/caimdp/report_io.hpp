#pragma once

#include "caimdp/experiments.hpp"

#include "json.hpp"

#include <filesystem>

namespace caimdp {

// JSON forms of solver outputs. Timings are left out unless `timing` is set,
// so reports for equal inputs are byte-identical.

nlohmann::json policy_to_json(const MarkovPolicy& policy);
/// {"horizon": N, "actions": [[[float]]]} indexed [t][q][dim].
MarkovPolicy policy_from_json(const nlohmann::json& j, int n_states, int action_dim);
MarkovPolicy load_policy(const std::filesystem::path& path, int n_states, int action_dim);

nlohmann::json synthesis_report_to_json(const SynthesisReport& report, bool timing = false);
nlohmann::json validation_report_to_json(const ValidationReport& report);
nlohmann::json bound_report_to_json(const BoundReport& report);
nlohmann::json comparison_report_to_json(const ComparisonReport& report, bool timing = false);

/// Action list file: [[float]].
std::vector<Vector> actions_from_json(const nlohmann::json& j, int action_dim);

}  // namespace caimdp
