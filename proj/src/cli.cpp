#include "spso_ipf/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "spso_ipf/outputs.hpp"
#include "spso_ipf/scenario_json.hpp"

namespace spso_ipf::cli {

namespace fs = std::filesystem;

namespace {

int exit_code_for(sim::Termination t) {
    switch (t) {
        case sim::Termination::ReachedGoal: return 0;
        case sim::Termination::Collision: return 2;
        case sim::Termination::EpochBudgetExhausted:
        case sim::Termination::Stuck: return 3;
    }
    return 1;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path.string());
    }
    out << content;
    if (!out) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

sim::Scenario load_with_overrides(const std::string& path,
                                  const std::vector<std::string>& overrides) {
    sim::Scenario scenario = load_scenario(path);
    for (const std::string& kv : overrides) {
        apply_override(scenario, kv);
    }
    scenario.validate();
    return scenario;
}

}  // namespace

int threads_from_env() {
    const char* env = std::getenv("SPSO_IPF_THREADS");
    if (env == nullptr) {
        return 0;
    }
    const int n = std::atoi(env);
    return n > 0 ? n : 0;
}

int cmd_run(const RunConfig& config) {
    try {
        sim::Scenario scenario = load_with_overrides(config.scenario_path, config.overrides);
        if (config.seed) {
            scenario.pso.seed = *config.seed;
        }

        const sim::PlanTrace trace = sim::run(scenario, config.algorithm);
        const sim::PathMetrics metrics = sim::compute_metrics(trace, scenario);

        const std::string csv = trace_csv(trace);
        const std::string json = metrics_json(metrics, trace.termination, scenario,
                                              config.scenario_path, config.algorithm,
                                              scenario.pso.seed, config.overrides)
                                     .dump(2) +
                                 "\n";
        const std::string svg = path_svg(trace, scenario);

        fs::create_directories(config.output_dir);
        write_file(fs::path(config.output_dir) / "trace.csv", csv);
        write_file(fs::path(config.output_dir) / "metrics.json", json);
        write_file(fs::path(config.output_dir) / "path.svg", svg);

        std::cout << sim::to_string(config.algorithm) << " seed " << scenario.pso.seed << ": "
                  << sim::to_string(trace.termination) << " in " << metrics.epochs
                  << " epochs, length " << metrics.length << " m, smoothness "
                  << metrics.smoothness << " rad\n";
        return exit_code_for(trace.termination);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_compare(const CompareConfig& config) {
    try {
        if (config.algorithms.empty() || config.seeds.empty()) {
            throw ValidationError("compare needs at least one algorithm and one seed");
        }
        sim::Scenario scenario = load_with_overrides(config.scenario_path, config.overrides);

        const sim::ComparisonTable table =
            sim::compare(scenario, config.algorithms, config.seeds, threads_from_env());

        // Overlay: every algorithm on the first seed.
        std::vector<std::pair<sim::Algorithm, sim::PlanTrace>> first_seed_traces;
        for (const sim::Algorithm algorithm : config.algorithms) {
            sim::Scenario cell = scenario;
            cell.pso.seed = config.seeds.front();
            first_seed_traces.emplace_back(algorithm, sim::run(cell, algorithm));
        }

        const std::string csv = comparison_csv(table);
        const std::string json =
            summary_json(table, config.scenario_path, config.seeds).dump(2) + "\n";
        const std::string svg = overlay_svg(first_seed_traces, scenario);

        fs::create_directories(config.output_dir);
        write_file(fs::path(config.output_dir) / "comparison.csv", csv);
        write_file(fs::path(config.output_dir) / "summary.json", json);
        write_file(fs::path(config.output_dir) / "overlay.svg", svg);

        std::cout << "compared " << config.algorithms.size() << " algorithm(s) over "
                  << config.seeds.size() << " seed(s): " << table.rows.size() << " runs\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_validate(const std::string& scenario_path) {
    try {
        load_scenario(scenario_path);
        std::cout << "scenario OK: " << scenario_path << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace spso_ipf::cli
