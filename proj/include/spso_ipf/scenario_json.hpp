#pragma once

#include <string>

#include <json.hpp>

#include "spso_ipf/scenario.hpp"

namespace spso_ipf::cli {

/// Parses a scenario document. Strict: duplicate fields, unknown fields and
/// wrong types raise ParseError; violated invariants raise ValidationError.
sim::Scenario parse_scenario(const std::string& text);

/// Reads and parses a scenario file. Unreadable paths raise ParseError.
sim::Scenario load_scenario(const std::string& path);

/// Effective configuration as JSON, defaults included (the config echo).
nlohmann::ordered_json scenario_to_json(const sim::Scenario& scenario);

/// Applies one "dotted.key=value" override in place. Unknown keys or bad
/// values raise ValidationError. Supported keys: seed, goal_tolerance,
/// robot.radius, limits.*, ipf.*, pso.*, sim.*, objective.one_sided_penalties.
void apply_override(sim::Scenario& scenario, const std::string& key_value);

}  // namespace spso_ipf::cli
