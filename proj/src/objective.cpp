#include "spso_ipf/objective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spso_ipf/ipf.hpp"

namespace spso_ipf::objective {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
// Displacements below this are treated as "no motion": their direction is
// numerically meaningless.
constexpr double kMotionFloor = 1e-9;
// Absolute slack on the speed/turn clamps so re-applying the projection to
// its own output never re-triggers a clamp.
constexpr double kClampSlack = 1e-10;
}  // namespace

void EpochContext::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ValidationError("EpochContext: dt must be positive and finite");
    }
    if (!goal_velocity.finite()) {
        throw ValidationError("EpochContext: goal_velocity must be finite");
    }
    if (!workspace.valid()) {
        throw ValidationError("EpochContext: workspace min must not exceed max");
    }
    if (robot_radius < 0.0) {
        throw ValidationError("EpochContext: robot_radius must be >= 0");
    }
}

Vec2 candidate_velocity(const Vec2& q_candidate, const EpochContext& ctx) {
    return (q_candidate - ctx.robot.position) / ctx.dt;
}

double angular_velocity(const Vec2& q, const Vec2& q_dot, const EpochContext& ctx) {
    const Vec2 to_goal = ctx.goal - q;
    const Vec2 relative = ctx.goal_velocity - q_dot;
    return relative.dot(perp_rotate(to_goal)) / (to_goal.norm_sq() + ctx.params.epsilon0);
}

bool is_feasible(const Vec2& q_candidate, const EpochContext& ctx) {
    if (!ctx.workspace.contains(q_candidate)) {
        return false;
    }
    for (const Obstacle& obstacle : ctx.obstacles) {
        const double d_obs = surface_distance(q_candidate, obstacle);
        if (d_obs <= 0.0 || d_obs - ctx.robot_radius < 0.0) {
            return false;
        }
    }
    return true;
}

FitnessTerms fitness_terms(const Vec2& q_candidate, const EpochContext& ctx) {
    FitnessTerms terms;
    terms.feasible = is_feasible(q_candidate, ctx);
    if (!terms.feasible) {
        return terms;
    }
    const Vec2 q_dot = candidate_velocity(q_candidate, ctx);
    const double speed = q_dot.norm();
    const double theta_dot = angular_velocity(q_candidate, q_dot, ctx);

    // The adaptive threshold d0 uses the robot's current (observed) speed, so
    // every candidate of the epoch sees the same field.
    terms.potential = ipf::total_field(q_candidate, ctx.goal, ctx.obstacles,
                                       ctx.robot.velocity.norm(), ctx.limits, ctx.params)
                          .potential;
    if (ctx.one_sided_penalties) {
        const double turn_excess = std::max(0.0, std::abs(theta_dot) - ctx.limits.omega_max);
        const double speed_excess = std::max(0.0, speed - ctx.limits.v_max);
        terms.angular_penalty = turn_excess * turn_excess;
        terms.speed_penalty = speed_excess * speed_excess;
    } else {
        const double turn_dev = theta_dot - ctx.limits.omega_max;
        const double speed_dev = speed - ctx.limits.v_max;
        terms.angular_penalty = turn_dev * turn_dev;
        terms.speed_penalty = speed_dev * speed_dev;
    }
    return terms;
}

double fitness(const Vec2& q_candidate, const EpochContext& ctx) {
    const FitnessTerms terms = fitness_terms(q_candidate, ctx);
    if (!terms.feasible) {
        return kInf;
    }
    return terms.potential + terms.angular_penalty + terms.speed_penalty;
}

SearchBounds search_bounds(const EpochContext& ctx) {
    const double reach = ctx.limits.v_max * ctx.dt;
    const Vec2 q = ctx.robot.position;
    SearchBounds bounds{{q.x - reach, q.y - reach}, {q.x + reach, q.y + reach}};
    bounds.lower.x = std::max(bounds.lower.x, ctx.workspace.min.x);
    bounds.lower.y = std::max(bounds.lower.y, ctx.workspace.min.y);
    bounds.upper.x = std::min(bounds.upper.x, ctx.workspace.max.x);
    bounds.upper.y = std::min(bounds.upper.y, ctx.workspace.max.y);
    return bounds;
}

namespace {

// Largest step length t in [0, t_max] keeping p + t*dir inside the workspace.
double clip_to_workspace(const Vec2& p, const Vec2& dir, double t_max, const Rect& ws) {
    double t = t_max;
    if (dir.x > 0.0) {
        t = std::min(t, (ws.max.x - p.x) / dir.x);
    } else if (dir.x < 0.0) {
        t = std::min(t, (ws.min.x - p.x) / dir.x);
    }
    if (dir.y > 0.0) {
        t = std::min(t, (ws.max.y - p.y) / dir.y);
    } else if (dir.y < 0.0) {
        t = std::min(t, (ws.min.y - p.y) / dir.y);
    }
    return std::max(t, 0.0);
}

}  // namespace

EnforcedWaypoint enforce_kinematics_ex(const Vec2& q_candidate, const EpochContext& ctx) {
    const Vec2 p = ctx.robot.position;
    const Vec2 disp = q_candidate - p;
    const double dist = disp.norm();
    if (dist <= kMotionFloor) {
        return {p, ctx.robot.heading};
    }

    const double speed = dist / ctx.dt;
    const double scale =
        speed > ctx.limits.v_max + kClampSlack ? ctx.limits.v_max * ctx.dt / dist : 1.0;

    const double desired_heading = std::atan2(disp.y, disp.x);
    const double turn = wrap_angle(desired_heading - ctx.robot.heading);
    const double max_turn = ctx.limits.omega_max * ctx.dt;
    const bool clamped = std::abs(turn) > max_turn + kClampSlack;

    if (!clamped && scale == 1.0 && ctx.workspace.contains(q_candidate)) {
        return {q_candidate, desired_heading};
    }

    const double heading =
        clamped ? wrap_angle(ctx.robot.heading + std::copysign(max_turn, turn))
                : desired_heading;
    Vec2 new_disp = clamped ? dist * scale * Vec2{std::cos(heading), std::sin(heading)}
                            : disp * scale;
    const double length = new_disp.norm();
    if (length <= kMotionFloor) {
        return {p, ctx.robot.heading};
    }
    const Vec2 dir = new_disp / length;
    const double t = clip_to_workspace(p, dir, length, ctx.workspace);
    if (t <= kMotionFloor) {
        // Translation blocked by the workspace edge: spend the epoch turning
        // in place toward the candidate so the robot cannot wedge against a
        // wall with a frozen heading.
        return {p, heading};
    }
    return {ctx.workspace.clamp(p + t * dir), heading};
}

Vec2 enforce_kinematics(const Vec2& q_candidate, const EpochContext& ctx) {
    return enforce_kinematics_ex(q_candidate, ctx).position;
}

}  // namespace spso_ipf::objective
