#include "spso_ipf/ipf.hpp"

#include <cmath>

namespace spso_ipf::ipf {

double attractive_potential(const Vec2& q, const Vec2& q_goal, const IpfParams& params) {
    const double d = distance(q, q_goal);
    if (d <= params.d_goal_star) {
        return 0.5 * params.epsilon * d * d;
    }
    return params.d_goal_star * params.epsilon * d -
           0.5 * params.epsilon * params.d_goal_star * params.d_goal_star;
}

Vec2 attractive_force(const Vec2& q, const Vec2& q_goal, const IpfParams& params) {
    const double d = distance(q, q_goal);
    if (d <= params.d_goal_star) {
        return -params.epsilon * (q - q_goal);
    }
    return (-params.d_goal_star * params.epsilon / d) * (q - q_goal);
}

double repulsive_potential(const Vec2& q, const Obstacle& obstacle, const Vec2& q_goal,
                           double d0, const IpfParams& params) {
    const double d_obs = surface_distance(q, obstacle);
    if (d_obs <= 0.0) {
        throw SingularConfiguration("repulsive_potential: point on or inside obstacle disc");
    }
    if (d_obs > d0) {
        return 0.0;
    }
    const double gap = 1.0 / d_obs - 1.0 / d0;
    const double d_goal = distance(q, q_goal);
    return 0.5 * params.eta * gap * gap * std::pow(d_goal, params.n);
}

Vec2 repulsive_force(const Vec2& q, const Obstacle& obstacle, const Vec2& q_goal,
                     double d0, const IpfParams& params) {
    const double d_obs = surface_distance(q, obstacle);
    if (d_obs <= 0.0) {
        throw SingularConfiguration("repulsive_force: point on or inside obstacle disc");
    }
    if (d_obs > d0) {
        return {0.0, 0.0};
    }
    const double d_goal = distance(q, q_goal);
    if (d_goal <= 0.0) {
        throw SingularConfiguration("repulsive_force: point at goal inside obstacle influence");
    }
    const double gap = 1.0 / d_obs - 1.0 / d0;
    const Vec2 away = (q - obstacle.position) / distance(q, obstacle.position);
    const Vec2 toward_goal = (q - q_goal) / d_goal;
    const Vec2 push = params.eta * gap * std::pow(d_goal, params.n) / (d_obs * d_obs) * away;
    const Vec2 pull =
        -0.5 * params.n * params.eta * gap * gap * std::pow(d_goal, params.n - 1.0) * toward_goal;
    return push + pull;
}

double adaptive_d0(double robot_speed, const Obstacle& obstacle,
                   const KinematicLimits& limits, const IpfParams& params) {
    switch (obstacle.knowledge) {
        case VelocityKnowledge::Exact:
            return robot_speed + obstacle.velocity.norm() + params.d01;
        case VelocityKnowledge::MaxSpeed:
            return robot_speed + obstacle.max_speed + params.d01;
        case VelocityKnowledge::Unknown:
            return 2.0 * limits.v_max + params.d01;
    }
    return 2.0 * limits.v_max + params.d01;  // unreachable
}

FieldSample total_field(const Vec2& q, const Vec2& q_goal, std::span<const Obstacle> obstacles,
                        double robot_speed, const KinematicLimits& limits,
                        const IpfParams& params) {
    FieldSample sample;
    sample.potential = attractive_potential(q, q_goal, params);
    sample.force = attractive_force(q, q_goal, params);
    for (const Obstacle& obstacle : obstacles) {
        const double d0 = adaptive_d0(robot_speed, obstacle, limits, params);
        sample.potential += repulsive_potential(q, obstacle, q_goal, d0, params);
        sample.force += repulsive_force(q, obstacle, q_goal, d0, params);
    }
    return sample;
}

}  // namespace spso_ipf::ipf
