#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spso_ipf/objective.hpp"
#include "spso_ipf/scenario.hpp"
#include "spso_ipf/spso.hpp"

namespace spso_ipf::sim {

enum class Algorithm {
    SPSO_IPF,            // potential field + smoothness penalties (the full method)
    PSO_IPF_NONSMOOTH,   // potential field only
    PSO_PLAIN,           // distance to goal + fixed penalty per obstacle within d01
};

enum class Termination {
    ReachedGoal,
    Collision,
    EpochBudgetExhausted,
    Stuck,
};

const char* to_string(Algorithm a);
const char* to_string(Termination t);
bool algorithm_from_string(const std::string& name, Algorithm& out);

struct EpochRecord {
    int epoch = 0;
    RobotState robot;
    Vec2 waypoint;
    double gbest_fitness = 0.0;
    std::vector<Vec2> obstacle_positions;
};

/// Per-epoch history of one run. Record 0 is the initial state; records are
/// strictly ordered by epoch and consecutive positions differ by at most
/// v_max*dt (+1e-9 slack).
struct PlanTrace {
    std::vector<EpochRecord> records;
    Termination termination = Termination::EpochBudgetExhausted;
};

struct PathMetrics {
    double length = 0.0;         // m
    double smoothness = 0.0;     // rad, sum of |wrapped heading change|
    double max_turn_rate = 0.0;  // rad/s
    double min_clearance = 0.0;  // m, +inf when the scenario has no obstacles
    int epochs = 0;
    bool success = false;
};

/// Simulator-side obstacle: current state plus its motion script progress.
struct ObstacleState {
    Obstacle obstacle;
    MotionScript motion;
    std::size_t next_waypoint = 0;
};

std::vector<ObstacleState> init_obstacles(const Scenario& scenario);

/// Advances every obstacle by dt: constant-velocity obstacles reflect off the
/// workspace walls (disc surface), waypoint scripts stop at their last point.
/// Each obstacle's velocity field is updated to its true average velocity
/// over the step.
std::vector<ObstacleState> step_obstacles(std::vector<ObstacleState> states,
                                          const Rect& workspace, double dt);

/// One planning epoch of the full method: PSO over the smoothness-augmented
/// fitness inside the reachable box, projected through enforce_kinematics.
/// Throws NoFeasibleCandidate when every particle scored +inf.
Vec2 plan_epoch(const objective::EpochContext& ctx, const pso::PsoParams& params);

/// Full closed loop: plan, move, advance obstacles, check collisions, detect
/// goal/stuck/budget. Deterministic for a fixed (scenario, algorithm, seed).
PlanTrace run(const Scenario& scenario, Algorithm algorithm);

PathMetrics compute_metrics(const PlanTrace& trace, const Scenario& scenario);

struct ComparisonRow {
    Algorithm algorithm;
    std::uint64_t seed = 0;
    Termination termination = Termination::EpochBudgetExhausted;
    PathMetrics metrics;
    std::string error;  // non-empty when the cell failed instead of running
};

struct Aggregate {
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
};

struct AlgorithmSummary {
    Algorithm algorithm;
    int runs = 0;
    double success_rate = 0.0;
    Aggregate length, smoothness, max_turn_rate, min_clearance, epochs;
};

struct ComparisonTable {
    std::vector<ComparisonRow> rows;  // ordered by (algorithm list position, seed)
    std::vector<AlgorithmSummary> summaries;
};

/// Runs every (algorithm, seed) cell, overriding the scenario's PSO seed with
/// the cell seed. Cells may execute in parallel (max_threads, 0 = hardware
/// concurrency); the table is independent of scheduling.
ComparisonTable compare(const Scenario& scenario, const std::vector<Algorithm>& algorithms,
                        const std::vector<std::uint64_t>& seeds, int max_threads = 0);

}  // namespace spso_ipf::sim
