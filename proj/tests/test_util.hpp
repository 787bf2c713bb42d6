#pragma once

#include <cmath>
#include <functional>
#include <random>

#include "spso_ipf/geometry.hpp"

namespace test_util {

// Independent gradient oracle: central finite difference of a scalar field.
// The force under test must equal MINUS this.
inline spso_ipf::Vec2 central_difference_gradient(
    const std::function<double(const spso_ipf::Vec2&)>& potential, const spso_ipf::Vec2& q,
    double h = 1e-6) {
    const double dx = potential({q.x + h, q.y}) - potential({q.x - h, q.y});
    const double dy = potential({q.x, q.y + h}) - potential({q.x, q.y - h});
    return {dx / (2.0 * h), dy / (2.0 * h)};
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

inline spso_ipf::Vec2 random_point(std::mt19937_64& rng, double lo, double hi) {
    return {uniform(rng, lo, hi), uniform(rng, lo, hi)};
}

}  // namespace test_util
