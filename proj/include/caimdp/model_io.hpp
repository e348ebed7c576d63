#pragma once

#include "caimdp/model.hpp"

#include "json.hpp"

#include <filesystem>

namespace caimdp {

nlohmann::json action_set_to_json(const ActionSet& set);
ActionSet action_set_from_json(const nlohmann::json& j, const std::string& path = "action_set");

nlohmann::json bound_to_json(const BoundFunction& b);
BoundFunction bound_from_json(const nlohmann::json& j, int dim, const std::string& path);

/// Throws CapabilityError for models holding opaque bounds.
nlohmann::json model_to_json(const Caimdp& imdp);
/// Schema errors throw ParseError with the offending field path; invariant
/// violations throw ValidationError. Only structural invariants are checked.
Caimdp model_from_json(const nlohmann::json& j);

/// Parse, then validate interval consistency on sampled actions unless
/// `check_intervals` is false.
Caimdp load_model(const std::filesystem::path& path, bool check_intervals = true);
void save_model(const Caimdp& imdp, const std::filesystem::path& path);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const nlohmann::json& j, const std::filesystem::path& path);

/// Helpers shared by the policy and action-list readers.
Vector vector_from_json(const nlohmann::json& j, const std::string& path, long expected = -1);
nlohmann::json vector_to_json(const Vector& v);

}  // namespace caimdp
