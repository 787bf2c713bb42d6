#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "spso_ipf/cli.hpp"
#include "spso_ipf/outputs.hpp"
#include "spso_ipf/scenario_json.hpp"

using namespace spso_ipf;
using nlohmann::ordered_json;

namespace {

const char* kMinimalScenario = R"({
  "workspace": { "min": [0, 0], "max": [10, 10] },
  "start": [1, 1],
  "goal": [9, 9],
  "obstacles": [
    { "position": [5, 5], "radius": 0.5 }
  ]
})";

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Minimal well-formedness check: every opened tag is closed in order.
bool xml_well_formed(const std::string& text) {
    std::vector<std::string> stack;
    std::size_t i = 0;
    while ((i = text.find('<', i)) != std::string::npos) {
        const std::size_t end = text.find('>', i);
        if (end == std::string::npos) {
            return false;
        }
        std::string tag = text.substr(i + 1, end - i - 1);
        i = end + 1;
        if (tag.empty()) {
            return false;
        }
        if (tag[0] == '?' || tag[0] == '!') {
            continue;
        }
        if (tag.back() == '/') {
            continue;  // self-closing
        }
        if (tag[0] == '/') {
            const std::string name = tag.substr(1);
            if (stack.empty() || stack.back() != name) {
                return false;
            }
            stack.pop_back();
        } else {
            stack.push_back(tag.substr(0, tag.find_first_of(" \t\n")));
        }
    }
    return stack.empty();
}

}  // namespace

TEST_CASE("parse_scenario: minimal document gets the documented defaults") {
    const sim::Scenario sc = cli::parse_scenario(kMinimalScenario);
    CHECK(sc.goal_tolerance == 0.1);
    CHECK(sc.robot_radius == 0.15);
    CHECK(sc.limits.v_max == 0.8);
    CHECK(sc.limits.omega_max == doctest::Approx(kPi / 6.0));
    CHECK(sc.ipf.epsilon == 1.0);
    CHECK(sc.ipf.d01 == 0.2);
    CHECK(sc.pso.num_particles == 50);
    CHECK(sc.pso.max_iterations == 100);
    CHECK(sc.pso.w == 0.7);
    CHECK(sc.pso.c1 == 2.0);
    CHECK(sc.pso.c2 == 2.0);
    CHECK(sc.dt == 0.1);
    CHECK(sc.max_epochs == 500);
    CHECK(sc.pso.seed == 0);
    REQUIRE(sc.obstacles.size() == 1);
    CHECK(sc.obstacles[0].motion.type == sim::MotionType::Static);
    CHECK(sc.obstacles[0].knowledge == VelocityKnowledge::Exact);
}

TEST_CASE("parse_scenario: start inside an obstacle is a validation error") {
    const char* doc = R"({
      "workspace": { "min": [0, 0], "max": [10, 10] },
      "start": [5.2, 5],
      "goal": [9, 9],
      "obstacles": [ { "position": [5, 5], "radius": 0.5 } ]
    })";
    CHECK_THROWS_WITH_AS(cli::parse_scenario(doc), "start in collision with obstacles[0]",
                         ValidationError);
}

TEST_CASE("parse_scenario: duplicate field is a parse error") {
    const char* doc = R"({
      "workspace": { "min": [0, 0], "max": [10, 10] },
      "start": [1, 1],
      "start": [2, 2],
      "goal": [9, 9]
    })";
    CHECK_THROWS_AS(cli::parse_scenario(doc), ParseError);
}

TEST_CASE("parse_scenario: unknown field is a parse error") {
    const char* doc = R"({
      "workspace": { "min": [0, 0], "max": [10, 10] },
      "start": [1, 1],
      "goal": [9, 9],
      "obstacle": []
    })";
    CHECK_THROWS_AS(cli::parse_scenario(doc), ParseError);
}

TEST_CASE("parse_scenario: malformed JSON and wrong types are parse errors") {
    CHECK_THROWS_AS(cli::parse_scenario("{"), ParseError);
    CHECK_THROWS_AS(cli::parse_scenario(R"({"workspace": 3, "start": [0,0], "goal": [1,1]})"),
                    ParseError);
    const char* bad_vec = R"({
      "workspace": { "min": [0, 0], "max": [10, 10] },
      "start": [1, 1, 1],
      "goal": [9, 9]
    })";
    CHECK_THROWS_AS(cli::parse_scenario(bad_vec), ParseError);
}

TEST_CASE("scenario_to_json round-trips through parse_scenario") {
    sim::Scenario sc = cli::parse_scenario(kMinimalScenario);
    sc.pso.seed = 99;
    sc.obstacles[0].motion.type = sim::MotionType::ConstantVelocity;
    sc.obstacles[0].motion.velocity = {0.1, -0.2};
    sc.obstacles[0].knowledge = VelocityKnowledge::MaxSpeed;
    sc.obstacles[0].max_speed = 0.25;
    const std::string text = cli::scenario_to_json(sc).dump(2);
    const sim::Scenario back = cli::parse_scenario(text);
    CHECK(back.pso.seed == 99);
    CHECK(back.obstacles[0].motion.velocity == Vec2{0.1, -0.2});
    CHECK(back.obstacles[0].max_speed == 0.25);
    CHECK(cli::scenario_to_json(back).dump(2) == text);
}

TEST_CASE("apply_override: known keys apply, unknown keys are rejected") {
    sim::Scenario sc = cli::parse_scenario(kMinimalScenario);
    cli::apply_override(sc, "pso.num_particles=30");
    CHECK(sc.pso.num_particles == 30);
    cli::apply_override(sc, "ipf.eta=2.5");
    CHECK(sc.ipf.eta == 2.5);
    cli::apply_override(sc, "seed=77");
    CHECK(sc.pso.seed == 77);
    cli::apply_override(sc, "objective.one_sided_penalties=true");
    CHECK(sc.one_sided_penalties);
    CHECK_THROWS_AS(cli::apply_override(sc, "pso.momentum=1"), ValidationError);
    CHECK_THROWS_AS(cli::apply_override(sc, "pso.w"), ValidationError);
    CHECK_THROWS_AS(cli::apply_override(sc, "pso.w=abc"), ValidationError);
}

TEST_CASE("trace_csv: exact header and row shape") {
    sim::PlanTrace trace;
    sim::EpochRecord r;
    r.epoch = 0;
    r.robot = RobotState{{1.25, 2.5}, {0, 0}, 0.5};
    r.waypoint = r.robot.position;
    r.gbest_fitness = 3.25;
    r.obstacle_positions = {{4, 5}};
    trace.records.push_back(r);
    const std::string csv = cli::trace_csv(trace);
    CHECK(csv == "epoch,x,y,heading,gbest_fitness,obs0_x,obs0_y\n0,1.25,2.5,0.5,3.25,4,5\n");
}

TEST_CASE("cmd_run writes deterministic, well-formed artifacts with exit code 0") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "spso_ipf_test_run";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path scenario_path = dir / "scenario.json";
    {
        std::ofstream out(scenario_path);
        out << R"({
          "workspace": { "min": [0, 0], "max": [10, 10] },
          "start": [1, 1],
          "goal": [6, 1],
          "goal_tolerance": 0.2,
          "ipf": { "epsilon": 3.0, "eta": 2.0, "d01": 0.3 },
          "pso": { "num_particles": 25, "max_iterations": 30 },
          "sim": { "dt": 0.1, "max_epochs": 200 },
          "obstacles": [ { "position": [3.5, 1.1], "radius": 0.4 } ]
        })";
    }

    cli::RunConfig config;
    config.scenario_path = scenario_path.string();
    config.algorithm = sim::Algorithm::SPSO_IPF;
    config.seed = 3;
    config.output_dir = (dir / "out1").string();
    config.overrides = {"pso.num_particles=20"};
    CHECK(cli::cmd_run(config) == 0);

    config.output_dir = (dir / "out2").string();
    CHECK(cli::cmd_run(config) == 0);

    // Determinism: byte-identical artifacts.
    CHECK(slurp(dir / "out1" / "trace.csv") == slurp(dir / "out2" / "trace.csv"));
    CHECK(slurp(dir / "out1" / "metrics.json") == slurp(dir / "out2" / "metrics.json"));

    // metrics.json round-trips and echoes the override verbatim.
    const ordered_json metrics = ordered_json::parse(slurp(dir / "out1" / "metrics.json"));
    CHECK(metrics["metrics"]["success"].get<bool>());
    CHECK(metrics["termination"] == "ReachedGoal");
    CHECK(metrics["config"]["seed"] == 3);
    CHECK(metrics["config"]["overrides"][0] == "pso.num_particles=20");
    CHECK(metrics["config"]["scenario"]["pso"]["num_particles"] == 20);

    // SVG is well-formed XML.
    CHECK(xml_well_formed(slurp(dir / "out1" / "path.svg")));

    // Unreadable scenario: diagnostic and exit 1.
    config.scenario_path = (dir / "missing.json").string();
    CHECK(cli::cmd_run(config) == 1);
    fs::remove_all(dir);
}

TEST_CASE("cmd_compare writes table, summary and overlay; aggregates match rows") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "spso_ipf_test_compare";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path scenario_path = dir / "scenario.json";
    {
        std::ofstream out(scenario_path);
        out << R"({
          "workspace": { "min": [0, 0], "max": [10, 10] },
          "start": [1, 1],
          "goal": [6, 1],
          "goal_tolerance": 0.2,
          "ipf": { "epsilon": 3.0, "eta": 2.0, "d01": 0.3 },
          "pso": { "num_particles": 20, "max_iterations": 25 },
          "sim": { "dt": 0.1, "max_epochs": 200 }
        })";
    }

    cli::CompareConfig config;
    config.scenario_path = scenario_path.string();
    config.algorithms = {sim::Algorithm::SPSO_IPF, sim::Algorithm::PSO_IPF_NONSMOOTH};
    config.seeds = {0, 1, 2};
    config.output_dir = (dir / "out").string();
    CHECK(cli::cmd_compare(config) == 0);

    const std::string csv = slurp(dir / "out" / "comparison.csv");
    std::size_t lines = 0;
    for (const char c : csv) {
        lines += c == '\n';
    }
    CHECK(lines == 7);  // header + 2 algorithms x 3 seeds

    const ordered_json summary = ordered_json::parse(slurp(dir / "out" / "summary.json"));
    // Mean length equals the mean of the CSV rows for that algorithm.
    std::istringstream rows(csv);
    std::string line;
    std::getline(rows, line);  // header
    double sum = 0.0;
    int count = 0;
    while (std::getline(rows, line)) {
        if (line.rfind("SPSO_IPF,", 0) == 0) {
            std::size_t pos = 0;
            for (int comma = 0; comma < 4; ++comma) {
                pos = line.find(',', pos) + 1;
            }
            sum += std::stod(line.substr(pos));
            ++count;
        }
    }
    REQUIRE(count == 3);
    CHECK(summary["algorithms"]["SPSO_IPF"]["length"]["mean"].get<double>() ==
          doctest::Approx(sum / 3.0).epsilon(1e-8));
    CHECK(summary["algorithms"]["SPSO_IPF"]["runs"] == 3);

    CHECK(xml_well_formed(slurp(dir / "out" / "overlay.svg")));
    fs::remove_all(dir);
}
