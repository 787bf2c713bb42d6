#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "spso_ipf/sim.hpp"

namespace spso_ipf::cli {

/// trace.csv body: header `epoch,x,y,heading,gbest_fitness[,obsI_x,obsI_y...]`,
/// one row per epoch, '.' decimals, 9 significant digits, LF line endings.
std::string trace_csv(const sim::PlanTrace& trace);

/// metrics.json body: PathMetrics fields, termination, and a config echo
/// (scenario path, algorithm, seed, verbatim overrides, effective scenario).
nlohmann::ordered_json metrics_json(const sim::PathMetrics& metrics, sim::Termination termination,
                                    const sim::Scenario& scenario, const std::string& scenario_path,
                                    sim::Algorithm algorithm, std::uint64_t seed,
                                    const std::vector<std::string>& overrides);

/// comparison.csv body: one row per (algorithm, seed) cell with all metrics.
std::string comparison_csv(const sim::ComparisonTable& table);

/// summary.json body: per-algorithm mean/min/max of each metric + success rate.
nlohmann::ordered_json summary_json(const sim::ComparisonTable& table,
                                    const std::string& scenario_path,
                                    const std::vector<std::uint64_t>& seeds);

/// path.svg: workspace, obstacle discs with motion trails, path polyline,
/// start marker, goal star. Y axis points up.
std::string path_svg(const sim::PlanTrace& trace, const sim::Scenario& scenario);

/// overlay.svg: one path per algorithm for a single seed.
std::string overlay_svg(const std::vector<std::pair<sim::Algorithm, sim::PlanTrace>>& traces,
                        const sim::Scenario& scenario);

}  // namespace spso_ipf::cli
