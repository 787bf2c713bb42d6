#pragma once

#include <vector>

#include "spso_ipf/errors.hpp"
#include "spso_ipf/spso.hpp"
#include "spso_ipf/types.hpp"

namespace spso_ipf::sim {

enum class MotionType {
    Static,
    ConstantVelocity,  // advances by velocity*dt, reflecting off workspace walls
    Waypoints,         // follows a polyline at fixed speed, stops at the last point
};

struct MotionScript {
    MotionType type = MotionType::Static;
    Vec2 velocity;                // ConstantVelocity
    std::vector<Vec2> waypoints;  // Waypoints
    double speed = 0.0;           // Waypoints, m/s
};

struct ObstacleSpec {
    Vec2 position;
    double radius = 0.0;
    MotionScript motion;
    VelocityKnowledge knowledge = VelocityKnowledge::Exact;
    double max_speed = 0.0;  // for knowledge == MaxSpeed
};

/// A complete benchmark description, loadable from JSON (see the cli module).
struct Scenario {
    Rect workspace;
    Vec2 start;
    Vec2 goal;
    double goal_tolerance = 0.1;
    double robot_radius = 0.15;
    KinematicLimits limits;
    std::vector<ObstacleSpec> obstacles;
    IpfParams ipf;
    pso::PsoParams pso;
    double dt = 0.1;
    int max_epochs = 500;
    bool one_sided_penalties = false;

    /// Throws ValidationError naming the violated invariant.
    void validate() const;
};

}  // namespace spso_ipf::sim
