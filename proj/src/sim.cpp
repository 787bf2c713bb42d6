#include "spso_ipf/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "spso_ipf/ipf.hpp"

namespace spso_ipf::sim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Stuck detector thresholds: below this improvement and displacement an epoch
// counts as stagnant; this many consecutive stagnant epochs end the run.
constexpr double kStuckFitnessDelta = 1e-6;
constexpr double kStuckDisplacement = 1e-4;
constexpr int kStuckEpochs = 20;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Per-epoch PSO seed: each cold-started swarm gets fresh, reproducible draws.
std::uint64_t epoch_seed(std::uint64_t base, int epoch) {
    return splitmix64(base ^ splitmix64(static_cast<std::uint64_t>(epoch)));
}

double initial_heading(const Scenario& sc) {
    const Vec2 d = sc.goal - sc.start;
    if (d.norm() <= 1e-12) {
        return 0.0;
    }
    return std::atan2(d.y, d.x);
}

// Mirrors pos into [lo, hi], flipping vel once per wall hit.
void reflect_axis(double& pos, double& vel, double lo, double hi) {
    if (lo >= hi) {
        pos = std::clamp(pos, std::min(lo, hi), std::max(lo, hi));
        vel = 0.0;
        return;
    }
    while (pos < lo || pos > hi) {
        if (pos < lo) {
            pos = lo + (lo - pos);
        } else {
            pos = hi - (pos - hi);
        }
        vel = -vel;
    }
}

std::vector<Vec2> obstacle_positions(const std::vector<ObstacleState>& states) {
    std::vector<Vec2> out;
    out.reserve(states.size());
    for (const ObstacleState& s : states) {
        out.push_back(s.obstacle.position);
    }
    return out;
}

std::vector<Obstacle> obstacle_snapshot(const std::vector<ObstacleState>& states) {
    std::vector<Obstacle> out;
    out.reserve(states.size());
    for (const ObstacleState& s : states) {
        out.push_back(s.obstacle);
    }
    return out;
}

// Collision test along the robot's segment, against obstacles interpolated
// over the same epoch. Samples t = 1/10 .. 10/10; t = 0 was the previous
// epoch's endpoint.
bool segment_collides(const Vec2& from, const Vec2& to,
                      const std::vector<ObstacleState>& before,
                      const std::vector<ObstacleState>& after, double robot_radius) {
    for (int k = 1; k <= 10; ++k) {
        const double t = static_cast<double>(k) / 10.0;
        const Vec2 rp = lerp(from, to, t);
        for (std::size_t i = 0; i < before.size(); ++i) {
            const Vec2 op = lerp(before[i].obstacle.position, after[i].obstacle.position, t);
            const double clearance =
                distance(rp, op) - before[i].obstacle.radius - robot_radius;
            if (clearance < 0.0) {
                return true;
            }
        }
    }
    return false;
}

pso::FitnessFn make_fitness(Algorithm algorithm, const objective::EpochContext& ctx) {
    switch (algorithm) {
        case Algorithm::SPSO_IPF:
            return [&ctx](const Vec2& q) { return objective::fitness(q, ctx); };
        case Algorithm::PSO_IPF_NONSMOOTH:
            return [&ctx](const Vec2& q) {
                if (!objective::is_feasible(q, ctx)) {
                    return kInf;
                }
                return ipf::total_field(q, ctx.goal, ctx.obstacles, ctx.robot.velocity.norm(),
                                        ctx.limits, ctx.params)
                    .potential;
            };
        case Algorithm::PSO_PLAIN:
            return [&ctx](const Vec2& q) {
                if (!objective::is_feasible(q, ctx)) {
                    return kInf;
                }
                double f = distance(q, ctx.goal);
                for (const Obstacle& obstacle : ctx.obstacles) {
                    if (surface_distance(q, obstacle) - ctx.robot_radius < ctx.params.d01) {
                        f += 1e6;
                    }
                }
                return f;
            };
    }
    return {};
}

struct PlannedStep {
    Vec2 waypoint;
    double heading = 0.0;
    double gbest = 0.0;
};

PlannedStep plan_epoch_impl(const objective::EpochContext& ctx, const pso::PsoParams& params,
                            const pso::FitnessFn& fitness_fn) {
    const pso::SwarmResult result = pso::optimize(objective::search_bounds(ctx), params, fitness_fn);
    if (std::isinf(result.best_fitness) && result.best_fitness > 0.0) {
        throw NoFeasibleCandidate("plan_epoch: every candidate scored +inf");
    }
    const objective::EnforcedWaypoint enforced =
        objective::enforce_kinematics_ex(result.best_position, ctx);
    return {enforced.position, enforced.heading, result.best_fitness};
}

objective::EpochContext make_context(const Scenario& sc, const RobotState& robot,
                                     const std::vector<ObstacleState>& states) {
    return objective::EpochContext{
        .robot = robot,
        .goal = sc.goal,
        .goal_velocity = {0.0, 0.0},
        .obstacles = obstacle_snapshot(states),
        .limits = sc.limits,
        .params = sc.ipf,
        .dt = sc.dt,
        .workspace = sc.workspace,
        .robot_radius = sc.robot_radius,
        .one_sided_penalties = sc.one_sided_penalties,
    };
}

}  // namespace

const char* to_string(Algorithm a) {
    switch (a) {
        case Algorithm::SPSO_IPF: return "SPSO_IPF";
        case Algorithm::PSO_IPF_NONSMOOTH: return "PSO_IPF_NONSMOOTH";
        case Algorithm::PSO_PLAIN: return "PSO_PLAIN";
    }
    return "?";
}

const char* to_string(Termination t) {
    switch (t) {
        case Termination::ReachedGoal: return "ReachedGoal";
        case Termination::Collision: return "Collision";
        case Termination::EpochBudgetExhausted: return "EpochBudgetExhausted";
        case Termination::Stuck: return "Stuck";
    }
    return "?";
}

bool algorithm_from_string(const std::string& name, Algorithm& out) {
    if (name == "SPSO_IPF") {
        out = Algorithm::SPSO_IPF;
    } else if (name == "PSO_IPF_NONSMOOTH") {
        out = Algorithm::PSO_IPF_NONSMOOTH;
    } else if (name == "PSO_PLAIN") {
        out = Algorithm::PSO_PLAIN;
    } else {
        return false;
    }
    return true;
}

std::vector<ObstacleState> init_obstacles(const Scenario& scenario) {
    std::vector<ObstacleState> states;
    states.reserve(scenario.obstacles.size());
    for (const ObstacleSpec& spec : scenario.obstacles) {
        ObstacleState state;
        state.obstacle.position = spec.position;
        state.obstacle.radius = spec.radius;
        state.obstacle.knowledge = spec.knowledge;
        state.obstacle.max_speed = spec.max_speed;
        state.motion = spec.motion;
        switch (spec.motion.type) {
            case MotionType::Static:
                state.obstacle.velocity = {0.0, 0.0};
                break;
            case MotionType::ConstantVelocity:
                state.obstacle.velocity = spec.motion.velocity;
                break;
            case MotionType::Waypoints: {
                while (state.next_waypoint < spec.motion.waypoints.size() &&
                       distance(spec.motion.waypoints[state.next_waypoint], spec.position) <= 1e-12) {
                    ++state.next_waypoint;
                }
                state.obstacle.velocity = {0.0, 0.0};
                if (state.next_waypoint < spec.motion.waypoints.size() && spec.motion.speed > 0.0) {
                    const Vec2 dir = spec.motion.waypoints[state.next_waypoint] - spec.position;
                    state.obstacle.velocity = dir / dir.norm() * spec.motion.speed;
                }
                break;
            }
        }
        states.push_back(std::move(state));
    }
    return states;
}

std::vector<ObstacleState> step_obstacles(std::vector<ObstacleState> states,
                                          const Rect& workspace, double dt) {
    for (ObstacleState& state : states) {
        Obstacle& obstacle = state.obstacle;
        switch (state.motion.type) {
            case MotionType::Static:
                obstacle.velocity = {0.0, 0.0};
                break;
            case MotionType::ConstantVelocity: {
                Vec2 p = obstacle.position + state.motion.velocity * dt;
                const double r = obstacle.radius;
                reflect_axis(p.x, state.motion.velocity.x, workspace.min.x + r, workspace.max.x - r);
                reflect_axis(p.y, state.motion.velocity.y, workspace.min.y + r, workspace.max.y - r);
                obstacle.position = p;
                obstacle.velocity = state.motion.velocity;
                break;
            }
            case MotionType::Waypoints: {
                double remaining = state.motion.speed * dt;
                Vec2 p = obstacle.position;
                while (remaining > 0.0 && state.next_waypoint < state.motion.waypoints.size()) {
                    const Vec2 target = state.motion.waypoints[state.next_waypoint];
                    const double seg = distance(p, target);
                    if (seg <= remaining) {
                        p = target;
                        remaining -= seg;
                        ++state.next_waypoint;
                    } else {
                        p += (target - p) * (remaining / seg);
                        remaining = 0.0;
                    }
                }
                obstacle.position = p;
                obstacle.velocity = {0.0, 0.0};
                if (state.next_waypoint < state.motion.waypoints.size() && state.motion.speed > 0.0) {
                    const Vec2 dir = state.motion.waypoints[state.next_waypoint] - p;
                    const double len = dir.norm();
                    if (len > 1e-12) {
                        obstacle.velocity = dir / len * state.motion.speed;
                    }
                }
                break;
            }
        }
    }
    return states;
}

Vec2 plan_epoch(const objective::EpochContext& ctx, const pso::PsoParams& params) {
    const pso::FitnessFn fn = [&ctx](const Vec2& q) { return objective::fitness(q, ctx); };
    return plan_epoch_impl(ctx, params, fn).waypoint;
}

PlanTrace run(const Scenario& scenario, Algorithm algorithm) {
    scenario.validate();

    std::vector<ObstacleState> states = init_obstacles(scenario);
    RobotState robot{scenario.start, {0.0, 0.0}, initial_heading(scenario)};

    PlanTrace trace;
    {
        const objective::EpochContext ctx = make_context(scenario, robot, states);
        const double f0 = make_fitness(algorithm, ctx)(robot.position);
        trace.records.push_back({0, robot, robot.position, f0, obstacle_positions(states)});
    }
    if (distance(robot.position, scenario.goal) <= scenario.goal_tolerance) {
        trace.termination = Termination::ReachedGoal;
        return trace;
    }

    double prev_gbest = trace.records.front().gbest_fitness;
    int stagnant_epochs = 0;

    for (int epoch = 1; epoch <= scenario.max_epochs; ++epoch) {
        const objective::EpochContext ctx = make_context(scenario, robot, states);
        pso::PsoParams params = scenario.pso;
        params.seed = epoch_seed(scenario.pso.seed, epoch);

        PlannedStep planned;
        try {
            planned = plan_epoch_impl(ctx, params, make_fitness(algorithm, ctx));
        } catch (const NoFeasibleCandidate&) {
            // Boxed in: hold position and let the stuck/budget detectors decide.
            planned = {robot.position, robot.heading, kInf};
        }

        std::vector<ObstacleState> next_states = step_obstacles(states, scenario.workspace, scenario.dt);
        const bool collided = segment_collides(robot.position, planned.waypoint, states,
                                               next_states, scenario.robot_radius);

        const Vec2 previous_position = robot.position;
        const double previous_heading = robot.heading;
        robot = RobotState{planned.waypoint, (planned.waypoint - previous_position) / scenario.dt,
                           planned.heading};
        states = std::move(next_states);
        trace.records.push_back(
            {epoch, robot, planned.waypoint, planned.gbest, obstacle_positions(states)});

        if (collided) {
            trace.termination = Termination::Collision;
            return trace;
        }
        if (distance(robot.position, scenario.goal) <= scenario.goal_tolerance) {
            trace.termination = Termination::ReachedGoal;
            return trace;
        }

        const double displacement = distance(planned.waypoint, previous_position);
        const double turned = std::abs(wrap_angle(robot.heading - previous_heading));
        const bool stagnant = displacement < kStuckDisplacement &&
                              turned < kStuckDisplacement &&
                              !(prev_gbest - planned.gbest >= kStuckFitnessDelta);
        stagnant_epochs = stagnant ? stagnant_epochs + 1 : 0;
        prev_gbest = planned.gbest;
        if (stagnant_epochs >= kStuckEpochs) {
            trace.termination = Termination::Stuck;
            return trace;
        }
    }

    trace.termination = Termination::EpochBudgetExhausted;
    return trace;
}

PathMetrics compute_metrics(const PlanTrace& trace, const Scenario& scenario) {
    PathMetrics metrics;
    metrics.success = trace.termination == Termination::ReachedGoal;
    metrics.epochs = trace.records.empty() ? 0 : trace.records.back().epoch;
    metrics.min_clearance = kInf;

    const double dt = scenario.dt;
    for (std::size_t k = 1; k < trace.records.size(); ++k) {
        const RobotState& prev = trace.records[k - 1].robot;
        const RobotState& cur = trace.records[k].robot;
        metrics.length += distance(cur.position, prev.position);
        const double turn = std::abs(wrap_angle(cur.heading - prev.heading));
        metrics.smoothness += turn;
        metrics.max_turn_rate = std::max(metrics.max_turn_rate, turn / dt);
    }
    for (const EpochRecord& record : trace.records) {
        for (std::size_t i = 0; i < record.obstacle_positions.size(); ++i) {
            const double clearance = distance(record.robot.position, record.obstacle_positions[i]) -
                                     scenario.obstacles[i].radius - scenario.robot_radius;
            metrics.min_clearance = std::min(metrics.min_clearance, clearance);
        }
    }
    return metrics;
}

namespace {

Aggregate aggregate_of(const std::vector<double>& values) {
    Aggregate agg;
    if (values.empty()) {
        return agg;
    }
    agg.min = values.front();
    agg.max = values.front();
    double sum = 0.0;
    for (const double v : values) {
        agg.min = std::min(agg.min, v);
        agg.max = std::max(agg.max, v);
        sum += v;
    }
    agg.mean = sum / static_cast<double>(values.size());
    return agg;
}

}  // namespace

ComparisonTable compare(const Scenario& scenario, const std::vector<Algorithm>& algorithms,
                        const std::vector<std::uint64_t>& seeds, int max_threads) {
    scenario.validate();

    ComparisonTable table;
    const std::size_t cells = algorithms.size() * seeds.size();
    table.rows.resize(cells);

    const auto run_cell = [&](std::size_t idx) {
        const Algorithm algorithm = algorithms[idx / seeds.size()];
        const std::uint64_t seed = seeds[idx % seeds.size()];
        ComparisonRow& row = table.rows[idx];
        row.algorithm = algorithm;
        row.seed = seed;
        try {
            Scenario cell_scenario = scenario;
            cell_scenario.pso.seed = seed;
            const PlanTrace trace = run(cell_scenario, algorithm);
            row.termination = trace.termination;
            row.metrics = compute_metrics(trace, cell_scenario);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    };

    int threads = max_threads > 0 ? max_threads
                                  : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp<int>(threads, 1, static_cast<int>(std::max<std::size_t>(cells, 1)));
    if (threads <= 1 || cells <= 1) {
        for (std::size_t i = 0; i < cells; ++i) {
            run_cell(i);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        workers.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) {
            workers.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < cells; i = next.fetch_add(1)) {
                    run_cell(i);
                }
            });
        }
        for (std::thread& w : workers) {
            w.join();
        }
    }

    for (std::size_t a = 0; a < algorithms.size(); ++a) {
        AlgorithmSummary summary;
        summary.algorithm = algorithms[a];
        std::vector<double> length, smoothness, turn_rate, clearance, epochs;
        int successes = 0;
        for (std::size_t i = a * seeds.size(); i < (a + 1) * seeds.size(); ++i) {
            const ComparisonRow& row = table.rows[i];
            ++summary.runs;
            if (!row.error.empty()) {
                continue;
            }
            if (row.metrics.success) {
                ++successes;
            }
            length.push_back(row.metrics.length);
            smoothness.push_back(row.metrics.smoothness);
            turn_rate.push_back(row.metrics.max_turn_rate);
            clearance.push_back(row.metrics.min_clearance);
            epochs.push_back(static_cast<double>(row.metrics.epochs));
        }
        summary.success_rate =
            summary.runs > 0 ? static_cast<double>(successes) / summary.runs : 0.0;
        summary.length = aggregate_of(length);
        summary.smoothness = aggregate_of(smoothness);
        summary.max_turn_rate = aggregate_of(turn_rate);
        summary.min_clearance = aggregate_of(clearance);
        summary.epochs = aggregate_of(epochs);
        table.summaries.push_back(summary);
    }
    return table;
}

}  // namespace spso_ipf::sim
