#pragma once

#include <vector>

#include "spso_ipf/errors.hpp"
#include "spso_ipf/types.hpp"

namespace spso_ipf::objective {

/// Everything one planning epoch needs to score a candidate waypoint.
struct EpochContext {
    RobotState robot;
    Vec2 goal;
    Vec2 goal_velocity;  // zero for static goals
    std::vector<Obstacle> obstacles;
    KinematicLimits limits;
    IpfParams params;
    double dt = 0.1;  // s, planning-epoch duration
    Rect workspace;
    double robot_radius = 0.15;
    bool one_sided_penalties = false;

    /// Throws ValidationError on dt <= 0, non-finite goal velocity, or a
    /// degenerate workspace.
    void validate() const;
};

/// Axis-aligned PSO search box, centered on the robot before workspace clipping.
struct SearchBounds {
    Vec2 lower;
    Vec2 upper;
};

/// Velocity implied by moving to the candidate within one epoch.
Vec2 candidate_velocity(const Vec2& q_candidate, const EpochContext& ctx);

/// Rate of change of the bearing angle from q to the goal, estimated from the
/// relative velocity:  (q̇_goal - q̇) · R90 · (q_goal - q) / (d² + ε₀).
/// Finite for all inputs, including q at the goal.
double angular_velocity(const Vec2& q, const Vec2& q_dot, const EpochContext& ctx);

/// True when the candidate is inside the workspace and strictly clear of
/// every obstacle disc inflated by the robot radius.
bool is_feasible(const Vec2& q_candidate, const EpochContext& ctx);

/// The three summands of the smoothness-augmented fitness.
struct FitnessTerms {
    bool feasible = false;
    double potential = 0.0;
    double angular_penalty = 0.0;
    double speed_penalty = 0.0;
};

FitnessTerms fitness_terms(const Vec2& q_candidate, const EpochContext& ctx);

/// Smoothness-augmented fitness:
///   U(q) + (θ̇ - ω_max)² + (|q̇| - v_max)²
/// Infeasible candidates score +inf instead of erroring, so the optimizer can
/// tolerate bad particles. With one_sided_penalties set, only excess over the
/// limits is penalized.
double fitness(const Vec2& q_candidate, const EpochContext& ctx);

/// One-epoch reachable box [q - v_max·dt, q + v_max·dt] per axis, intersected
/// with the workspace.
SearchBounds search_bounds(const EpochContext& ctx);

/// Projects a candidate onto the kinematically reachable set: displacement
/// scaled so the implied speed stays within v_max, heading change clamped to
/// omega_max·dt (the displacement is re-aimed along the clamped heading), and
/// the result kept inside the workspace without changing the final heading.
/// Idempotent; displacements under 1e-9 m count as no motion.
Vec2 enforce_kinematics(const Vec2& q_candidate, const EpochContext& ctx);

/// enforce_kinematics plus the exact heading after the move (the robot's
/// previous heading when the move is zero). The simulator uses this so the
/// recorded heading matches the clamp arithmetic bit for bit.
struct EnforcedWaypoint {
    Vec2 position;
    double heading;
};

EnforcedWaypoint enforce_kinematics_ex(const Vec2& q_candidate, const EpochContext& ctx);

}  // namespace spso_ipf::objective
