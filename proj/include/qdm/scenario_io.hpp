#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "qdm/scenarios.hpp"

namespace qdm::scenarios {

/// Full config as JSON; keys mirror the ScenarioConfig fields.
nlohmann::json to_json(const ScenarioConfig& config);

/// Strict parse: unknown keys or wrong types raise ConfigError. Missing keys
/// keep the defaults of `base`.
ScenarioConfig from_json(const nlohmann::json& j, const ScenarioConfig& base = {});

/// Preset name or path to a JSON file. Throws UnknownScenarioError when
/// neither exists, ConfigError on schema violations.
ScenarioConfig load_scenario(const std::string& name_or_path);

/// FNV-1a 64-bit hash of the canonical JSON dump, as 16 hex digits.
std::string config_hash(const ScenarioConfig& config);

/// Shortest round-trip decimal, independent of the global locale.
std::string format_number(double x);

/// Header t_ns, concurrence, leak, p_<label>... then one row per snapshot.
void write_trajectory_csv(std::ostream& os, const dynamics::Trajectory& tr);
void write_sweep_csv(std::ostream& os, const SweepResult& result);

}  // namespace qdm::scenarios
