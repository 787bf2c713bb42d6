#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "spso_ipf/objective.hpp"

namespace spso_ipf::pso {

struct PsoParams {
    int num_particles = 50;
    int max_iterations = 100;
    double w = 0.7;    // inertia weight
    double c1 = 2.0;   // cognitive acceleration
    double c2 = 2.0;   // social acceleration
    std::optional<double> target_fitness;  // early-stop threshold
    std::uint64_t seed = 0;
    // Draw r1/r2 per dimension instead of one shared scalar per term.
    bool per_dimension_r = false;

    void validate() const;
};

struct Particle {
    Vec2 position;
    Vec2 velocity;
    Vec2 best_position;
    double fitness = 0.0;       // fitness of the current position
    double best_fitness = 0.0;  // fitness of best_position
};

struct SwarmResult {
    Vec2 best_position;
    double best_fitness = 0.0;
    int iterations_used = 0;
    std::vector<double> fitness_history;  // global best per iteration, element 0 = initial
};

using FitnessFn = std::function<double(const Vec2&)>;

/// Swarm state between iterations. The generator lives here so that random
/// draws happen in a fixed per-particle order, independent of how fitness
/// evaluations are scheduled.
struct Swarm {
    std::vector<Particle> particles;
    std::size_t best_index = 0;
    std::mt19937_64 rng;

    const Vec2& best_position() const { return particles[best_index].best_position; }
    double best_fitness() const { return particles[best_index].best_fitness; }
};

/// Positions uniform in [lower, upper] per axis, velocities uniform in
/// +/-(upper - lower) per axis, personal bests at the initial positions,
/// global best the argmin of the initial fitnesses.
Swarm initialize_swarm(const objective::SearchBounds& bounds, const PsoParams& params,
                       const FitnessFn& fitness_fn);

/// One synchronous iteration: per particle draw fresh r1/r2, update velocity
/// and position, clamp to bounds (zeroing the violating velocity component),
/// re-evaluate, then refresh personal and global bests.
void step(Swarm& swarm, const PsoParams& params, const objective::SearchBounds& bounds,
          const FitnessFn& fitness_fn);

/// Personal bests replaced on strict improvement; global best is the argmin
/// over personal bests, ties broken by lowest particle index.
void update_bests(Swarm& swarm);

/// initialize + step until target_fitness is reached or max_iterations are
/// exhausted. Identical (bounds, params, seed, fitness) give identical results.
SwarmResult optimize(const objective::SearchBounds& bounds, const PsoParams& params,
                     const FitnessFn& fitness_fn);

}  // namespace spso_ipf::pso
