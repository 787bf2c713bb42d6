#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spso_ipf/cli.hpp"

namespace {

bool parse_seed_range(const std::string& text, std::vector<std::uint64_t>& out) {
    const std::size_t dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            out.push_back(std::stoull(text));
            return true;
        }
        const std::uint64_t first = std::stoull(text.substr(0, dots));
        const std::uint64_t last = std::stoull(text.substr(dots + 2));
        if (last < first) {
            return false;
        }
        for (std::uint64_t s = first; s <= last; ++s) {
            out.push_back(s);
        }
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

bool parse_algorithms(const std::string& text, std::vector<spso_ipf::sim::Algorithm>& out) {
    std::size_t begin = 0;
    while (begin <= text.size()) {
        const std::size_t comma = text.find(',', begin);
        const std::string name =
            text.substr(begin, comma == std::string::npos ? std::string::npos : comma - begin);
        spso_ipf::sim::Algorithm algorithm;
        if (!spso_ipf::sim::algorithm_from_string(name, algorithm)) {
            return false;
        }
        out.push_back(algorithm);
        if (comma == std::string::npos) {
            break;
        }
        begin = comma + 1;
    }
    return !out.empty();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SPSO-IPF path planner: potential-field fitness minimized per epoch by a "
                 "particle swarm, with kinematic smoothness penalties"};
    app.require_subcommand(1);

    spso_ipf::cli::RunConfig run_config;
    std::string run_algo = "SPSO_IPF";
    std::int64_t run_seed = -1;
    CLI::App* run = app.add_subcommand("run", "run one scenario and write trace/metrics/plot");
    run->add_option("--scenario", run_config.scenario_path, "scenario JSON file")->required();
    run->add_option("--algo", run_algo, "SPSO_IPF | PSO_IPF_NONSMOOTH | PSO_PLAIN");
    run->add_option("--seed", run_seed, "seed override (default: scenario's seed)");
    run->add_option("--out", run_config.output_dir, "output directory")->required();
    run->add_option("--set", run_config.overrides,
                    "parameter override key=value (e.g. pso.num_particles=30), repeatable");

    spso_ipf::cli::CompareConfig compare_config;
    std::string compare_algos;
    std::string compare_seeds;
    CLI::App* compare =
        app.add_subcommand("compare", "sweep algorithms x seeds and write a comparison table");
    compare->add_option("--scenario", compare_config.scenario_path, "scenario JSON file")
        ->required();
    compare->add_option("--algos", compare_algos, "comma-separated algorithm list")->required();
    compare->add_option("--seeds", compare_seeds, "seed range M..N (inclusive) or single seed")
        ->required();
    compare->add_option("--out", compare_config.output_dir, "output directory")->required();
    compare->add_option("--set", compare_config.overrides,
                        "parameter override key=value, repeatable");

    std::string validate_path;
    CLI::App* validate = app.add_subcommand("validate", "check a scenario file without running");
    validate->add_option("--scenario", validate_path, "scenario JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        if (!spso_ipf::sim::algorithm_from_string(run_algo, run_config.algorithm)) {
            std::cerr << "error: unknown algorithm \"" << run_algo << "\"\n";
            return 1;
        }
        if (run_seed >= 0) {
            run_config.seed = static_cast<std::uint64_t>(run_seed);
        }
        return spso_ipf::cli::cmd_run(run_config);
    }
    if (compare->parsed()) {
        if (!parse_algorithms(compare_algos, compare_config.algorithms)) {
            std::cerr << "error: bad algorithm list \"" << compare_algos << "\"\n";
            return 1;
        }
        if (!parse_seed_range(compare_seeds, compare_config.seeds)) {
            std::cerr << "error: bad seed range \"" << compare_seeds << "\" (expected M..N)\n";
            return 1;
        }
        return spso_ipf::cli::cmd_compare(compare_config);
    }
    return spso_ipf::cli::cmd_validate(validate_path);
}
