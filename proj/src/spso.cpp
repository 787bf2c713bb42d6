#include "spso_ipf/spso.hpp"

#include <cmath>

#include "spso_ipf/errors.hpp"

namespace spso_ipf::pso {

namespace {

// Uniform double in [0, 1) built from the top 53 bits of the generator, so
// draws are identical across standard-library implementations.
double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_in(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform_unit(rng);
}

void clamp_axis(double& pos, double& vel, double lo, double hi) {
    if (pos < lo) {
        pos = lo;
        vel = 0.0;
    } else if (pos > hi) {
        pos = hi;
        vel = 0.0;
    }
}

}  // namespace

void PsoParams::validate() const {
    if (num_particles < 1) {
        throw ValidationError("pso.num_particles must be >= 1");
    }
    if (max_iterations < 1) {
        throw ValidationError("pso.max_iterations must be >= 1");
    }
    if (!(w >= 0.0) || !std::isfinite(w)) {
        throw ValidationError("pso.w must be >= 0 and finite");
    }
    if (!(c1 >= 0.0 && c1 <= 2.0)) {
        throw ValidationError("pso.c1 must be in [0, 2]");
    }
    if (!(c2 >= 0.0 && c2 <= 2.0)) {
        throw ValidationError("pso.c2 must be in [0, 2]");
    }
}

Swarm initialize_swarm(const objective::SearchBounds& bounds, const PsoParams& params,
                       const FitnessFn& fitness_fn) {
    Swarm swarm;
    swarm.rng.seed(params.seed);
    swarm.particles.resize(static_cast<std::size_t>(params.num_particles));

    const double span_x = bounds.upper.x - bounds.lower.x;
    const double span_y = bounds.upper.y - bounds.lower.y;
    for (Particle& p : swarm.particles) {
        p.position.x = uniform_in(swarm.rng, bounds.lower.x, bounds.upper.x);
        p.position.y = uniform_in(swarm.rng, bounds.lower.y, bounds.upper.y);
        p.velocity.x = uniform_in(swarm.rng, -span_x, span_x);
        p.velocity.y = uniform_in(swarm.rng, -span_y, span_y);
    }
    for (Particle& p : swarm.particles) {
        p.fitness = fitness_fn(p.position);
        p.best_position = p.position;
        p.best_fitness = p.fitness;
    }
    update_bests(swarm);
    return swarm;
}

void step(Swarm& swarm, const PsoParams& params, const objective::SearchBounds& bounds,
          const FitnessFn& fitness_fn) {
    // Global best is snapshotted so every particle in this iteration sees the
    // same attractor regardless of evaluation order.
    const Vec2 gbest = swarm.best_position();
    for (Particle& p : swarm.particles) {
        Vec2 r1{uniform_unit(swarm.rng), 0.0};
        Vec2 r2{uniform_unit(swarm.rng), 0.0};
        if (params.per_dimension_r) {
            r1.y = uniform_unit(swarm.rng);
            r2.y = uniform_unit(swarm.rng);
        } else {
            r1.y = r1.x;
            r2.y = r2.x;
        }
        p.velocity.x = params.w * p.velocity.x + params.c1 * r1.x * (p.best_position.x - p.position.x) +
                       params.c2 * r2.x * (gbest.x - p.position.x);
        p.velocity.y = params.w * p.velocity.y + params.c1 * r1.y * (p.best_position.y - p.position.y) +
                       params.c2 * r2.y * (gbest.y - p.position.y);
        p.position += p.velocity;
        clamp_axis(p.position.x, p.velocity.x, bounds.lower.x, bounds.upper.x);
        clamp_axis(p.position.y, p.velocity.y, bounds.lower.y, bounds.upper.y);
    }
    for (Particle& p : swarm.particles) {
        p.fitness = fitness_fn(p.position);
    }
    update_bests(swarm);
}

void update_bests(Swarm& swarm) {
    for (Particle& p : swarm.particles) {
        if (p.fitness < p.best_fitness) {
            p.best_fitness = p.fitness;
            p.best_position = p.position;
        }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < swarm.particles.size(); ++i) {
        if (swarm.particles[i].best_fitness < swarm.particles[best].best_fitness) {
            best = i;
        }
    }
    swarm.best_index = best;
}

SwarmResult optimize(const objective::SearchBounds& bounds, const PsoParams& params,
                     const FitnessFn& fitness_fn) {
    params.validate();
    Swarm swarm = initialize_swarm(bounds, params, fitness_fn);

    SwarmResult result;
    result.fitness_history.reserve(static_cast<std::size_t>(params.max_iterations) + 1);
    result.fitness_history.push_back(swarm.best_fitness());

    const auto reached_target = [&] {
        return params.target_fitness && swarm.best_fitness() <= *params.target_fitness;
    };

    int iterations = 0;
    while (iterations < params.max_iterations && !reached_target()) {
        step(swarm, params, bounds, fitness_fn);
        ++iterations;
        result.fitness_history.push_back(swarm.best_fitness());
    }

    result.best_position = swarm.best_position();
    result.best_fitness = swarm.best_fitness();
    result.iterations_used = iterations;
    return result;
}

}  // namespace spso_ipf::pso
