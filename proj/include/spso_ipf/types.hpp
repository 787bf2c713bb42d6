#pragma once

#include "spso_ipf/geometry.hpp"

namespace spso_ipf {

/// Hard kinematic bounds of the point robot.
struct KinematicLimits {
    double v_max = 0.8;            // m/s
    double omega_max = kPi / 6.0;  // rad/s
};

/// What the planner is allowed to know about an obstacle's motion.
enum class VelocityKnowledge {
    Exact,     // current velocity vector is observable
    MaxSpeed,  // only a speed bound is known
    Unknown,   // nothing is known
};

/// Disc obstacle. `velocity` is the true instantaneous velocity maintained by
/// the simulator; the planner may only consult it when knowledge == Exact.
struct Obstacle {
    Vec2 position;
    double radius = 0.0;
    VelocityKnowledge knowledge = VelocityKnowledge::Exact;
    Vec2 velocity;
    double max_speed = 0.0;  // used when knowledge == MaxSpeed
};

/// Distance from a point to the obstacle's disc surface (center distance
/// minus radius). Negative inside the disc.
inline double surface_distance(const Vec2& q, const Obstacle& o) {
    return distance(q, o.position) - o.radius;
}

struct RobotState {
    Vec2 position;
    Vec2 velocity;
    double heading = 0.0;  // radians in (-pi, pi]
};

/// Potential-field scalars.
struct IpfParams {
    double epsilon = 1.0;      // attraction gain
    double eta = 1.0;          // repulsion gain
    double n = 2.0;            // goal-distance exponent in the repulsive term
    double d_goal_star = 3.0;  // m, conic/quadratic switch distance
    double d01 = 0.2;          // m, uncertainty margin of the adaptive threshold
    double epsilon0 = 1e-6;    // singularity guard of the angular-velocity estimate
};

}  // namespace spso_ipf
