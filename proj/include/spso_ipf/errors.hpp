#pragma once

#include <stdexcept>
#include <string>

namespace spso_ipf {

/// Robot coincides with an obstacle center / sits inside an obstacle disc,
/// or a repulsive force is requested exactly at the goal while in range.
struct SingularConfiguration : std::runtime_error {
    explicit SingularConfiguration(const std::string& what) : std::runtime_error(what) {}
};

/// Every particle of a planning epoch scored +inf (robot boxed in).
struct NoFeasibleCandidate : std::runtime_error {
    explicit NoFeasibleCandidate(const std::string& what) : std::runtime_error(what) {}
};

/// Scenario document is syntactically broken (bad JSON, duplicate or
/// unknown field, wrong type).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Scenario parsed but violates an invariant (start in collision, dt <= 0, ...).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

using InvalidScenario = ValidationError;

}  // namespace spso_ipf
