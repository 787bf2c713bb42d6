#pragma once

#include <span>

#include "spso_ipf/errors.hpp"
#include "spso_ipf/types.hpp"

namespace spso_ipf::ipf {

/// Potential value and its force (negative gradient with respect to q).
struct FieldSample {
    double potential = 0.0;
    Vec2 force;
};

/// Attractive potential: quadratic within d_goal_star of the goal, conic
/// beyond it. Continuous at the switch distance.
double attractive_potential(const Vec2& q, const Vec2& q_goal, const IpfParams& params);

/// Negative gradient of attractive_potential. Magnitude is constant
/// (epsilon * d_goal_star) on the conic branch.
Vec2 attractive_force(const Vec2& q, const Vec2& q_goal, const IpfParams& params);

/// Repulsive potential of one obstacle, weighted by the goal distance to the
/// power n so it vanishes at the goal. Obstacle distance is measured to the
/// disc surface. Zero beyond the influence threshold d0.
///
/// Throws SingularConfiguration when the query point is on or inside the disc.
double repulsive_potential(const Vec2& q, const Obstacle& obstacle, const Vec2& q_goal,
                           double d0, const IpfParams& params);

/// Negative gradient of repulsive_potential: a push away from the obstacle
/// plus a pull toward the goal. Zero beyond d0.
///
/// Throws SingularConfiguration when on/inside the disc, or when in range and
/// exactly at the goal (the goal-direction term is undefined there).
Vec2 repulsive_force(const Vec2& q, const Obstacle& obstacle, const Vec2& q_goal,
                     double d0, const IpfParams& params);

/// Velocity-adaptive influence threshold. Grows with the closing speeds so
/// that repulsion switches on early enough to react:
///   robot_speed + |obstacle velocity| + d01   when the velocity is known,
///   robot_speed + speed bound + d01           when only a bound is known,
///   2 * v_max + d01                           when nothing is known.
double adaptive_d0(double robot_speed, const Obstacle& obstacle,
                   const KinematicLimits& limits, const IpfParams& params);

/// Superposition of the attractive term and one repulsive term per obstacle,
/// each with its own adaptive threshold. robot_speed only feeds adaptive_d0,
/// so the force stays the exact negative gradient at fixed robot_speed.
FieldSample total_field(const Vec2& q, const Vec2& q_goal, std::span<const Obstacle> obstacles,
                        double robot_speed, const KinematicLimits& limits,
                        const IpfParams& params);

}  // namespace spso_ipf::ipf
