#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "samon/plan_model.hpp"

namespace samon {

/// Parses a plan library from its JSON form. Rejects (ConfigError listing
/// the violations) anything that fails validate_library.
PlanLibrary library_from_json(const nlohmann::json& j);

/// Team definition from a JSON array of {agent, role} objects.
TeamDefinition team_from_json(const nlohmann::json& j);

/// Reads and parses a JSON file; ConfigError on missing file or bad syntax.
nlohmann::json read_json_file(const std::string& path);

/// Condition literal notation: "Name" is positive, "!Name" negative.
Literal literal_from_string(const std::string& s);
std::string literal_to_string(const Literal& l);

}  // namespace samon
