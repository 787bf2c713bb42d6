#include "spso_ipf/scenario.hpp"

#include <cmath>
#include <string>

namespace spso_ipf::sim {

void Scenario::validate() const {
    if (!workspace.min.finite() || !workspace.max.finite() || !workspace.valid() ||
        workspace.width() <= 0.0 || workspace.height() <= 0.0) {
        throw ValidationError("workspace must be a non-degenerate rectangle with min < max");
    }
    if (!start.finite() || !workspace.contains(start)) {
        throw ValidationError("start must lie inside the workspace");
    }
    if (!goal.finite() || !workspace.contains(goal)) {
        throw ValidationError("goal must lie inside the workspace");
    }
    if (!(goal_tolerance > 0.0)) {
        throw ValidationError("goal_tolerance must be > 0");
    }
    if (robot_radius < 0.0 || !std::isfinite(robot_radius)) {
        throw ValidationError("robot.radius must be >= 0");
    }
    if (!(limits.v_max > 0.0) || !(limits.omega_max > 0.0)) {
        throw ValidationError("limits.v_max and limits.omega_max must be > 0");
    }
    if (!(ipf.epsilon > 0.0)) {
        throw ValidationError("ipf.epsilon must be > 0");
    }
    if (!(ipf.eta > 0.0)) {
        throw ValidationError("ipf.eta must be > 0");
    }
    if (!(ipf.n >= 1.0)) {
        throw ValidationError("ipf.n must be >= 1");
    }
    if (!(ipf.d_goal_star > 0.0)) {
        throw ValidationError("ipf.d_goal_star must be > 0");
    }
    if (ipf.d01 < 0.0) {
        throw ValidationError("ipf.d01 must be >= 0");
    }
    if (!(ipf.epsilon0 > 0.0)) {
        throw ValidationError("ipf.epsilon0 must be > 0");
    }
    pso.validate();
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ValidationError("sim.dt must be > 0");
    }
    if (max_epochs < 1) {
        throw ValidationError("sim.max_epochs must be >= 1");
    }
    for (std::size_t i = 0; i < obstacles.size(); ++i) {
        const ObstacleSpec& spec = obstacles[i];
        const std::string label = "obstacles[" + std::to_string(i) + "]";
        if (!spec.position.finite() || !workspace.contains(spec.position)) {
            throw ValidationError(label + ".position must lie inside the workspace");
        }
        if (spec.radius < 0.0 || !std::isfinite(spec.radius)) {
            throw ValidationError(label + ".radius must be >= 0");
        }
        if (spec.knowledge == VelocityKnowledge::MaxSpeed &&
            (spec.max_speed < 0.0 || !std::isfinite(spec.max_speed))) {
            throw ValidationError(label + ".max_speed must be >= 0");
        }
        switch (spec.motion.type) {
            case MotionType::Static:
                break;
            case MotionType::ConstantVelocity:
                if (!spec.motion.velocity.finite()) {
                    throw ValidationError(label + ".motion.velocity must be finite");
                }
                break;
            case MotionType::Waypoints:
                if (spec.motion.waypoints.empty()) {
                    throw ValidationError(label + ".motion.points must not be empty");
                }
                for (const Vec2& wp : spec.motion.waypoints) {
                    if (!wp.finite()) {
                        throw ValidationError(label + ".motion.points must be finite");
                    }
                }
                if (spec.motion.speed < 0.0 || !std::isfinite(spec.motion.speed)) {
                    throw ValidationError(label + ".motion.speed must be >= 0");
                }
                break;
        }
        const double clearance = distance(start, spec.position) - spec.radius - robot_radius;
        if (clearance < 0.0) {
            throw ValidationError("start in collision with " + label);
        }
    }
}

}  // namespace spso_ipf::sim
