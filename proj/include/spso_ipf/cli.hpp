#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spso_ipf/sim.hpp"

namespace spso_ipf::cli {

struct RunConfig {
    std::string scenario_path;
    sim::Algorithm algorithm = sim::Algorithm::SPSO_IPF;
    std::optional<std::uint64_t> seed;  // overrides the scenario's seed when set
    std::string output_dir;
    std::vector<std::string> overrides;  // "dotted.key=value"
};

struct CompareConfig {
    std::string scenario_path;
    std::vector<sim::Algorithm> algorithms;
    std::vector<std::uint64_t> seeds;
    std::string output_dir;
    std::vector<std::string> overrides;
};

/// Executes one run and writes trace.csv, metrics.json and path.svg into the
/// output directory (created if needed; files written only after the run
/// completes). Exit status: 0 ReachedGoal, 2 Collision, 3 budget/stuck, 1 error.
int cmd_run(const RunConfig& config);

/// Runs every (algorithm, seed) cell and writes comparison.csv, summary.json
/// and overlay.svg (paths of every algorithm for the first seed). Per-cell
/// failures become rows, not aborts. Exit status: 0 on success, 1 on error.
/// SPSO_IPF_THREADS caps cell parallelism.
int cmd_compare(const CompareConfig& config);

/// Loads and validates a scenario without running it. 0 if valid, 1 otherwise.
int cmd_validate(const std::string& scenario_path);

/// Parallelism cap from SPSO_IPF_THREADS (0 = unset/invalid, meaning "auto").
int threads_from_env();

}  // namespace spso_ipf::cli
