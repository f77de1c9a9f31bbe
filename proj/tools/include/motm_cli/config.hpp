#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "motm/model_spec.hpp"

namespace motm::cli {

/// Malformed or schema-violating model configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// {"model": "bs" | "localvol_power" | "heston" | "three_halves", "params": {...}}.
/// Unknown or missing keys are rejected; parameter invariants are enforced.
ModelSpec parse_model_config(const nlohmann::json& doc);
ModelSpec parse_model_config_text(const std::string& text);
ModelSpec load_model_config(const std::string& path);

}  // namespace motm::cli
