#pragma once

#include <algorithm>
#include <cmath>

namespace spso_ipf {

inline constexpr double kPi = 3.14159265358979323846;

/// 2-D vector in meters (or m/s when used as a velocity).
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    constexpr bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }

    constexpr double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    constexpr double norm_sq() const { return x * x + y * y; }
    double norm() const { return std::hypot(x, y); }
    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr Vec2 operator*(double s, const Vec2& v) { return v * s; }

/// Euclidean distance between two points.
inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

/// Multiplies by the rotation matrix [0 -1; 1 0]: (x, y) -> (-y, x).
/// A 90-degree counterclockwise rotation; preserves the norm.
constexpr Vec2 perp_rotate(const Vec2& v) { return {-v.y, v.x}; }

inline Vec2 lerp(const Vec2& a, const Vec2& b, double t) { return a + (b - a) * t; }

/// Normalizes an angle to (-pi, pi].
inline double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a <= -kPi) {
        a += 2.0 * kPi;
    } else if (a > kPi) {
        a -= 2.0 * kPi;
    }
    return a;
}

/// Axis-aligned rectangle, used for the workspace and PSO search boxes.
struct Rect {
    Vec2 min;
    Vec2 max;

    bool valid() const { return min.x <= max.x && min.y <= max.y; }

    bool contains(const Vec2& p) const {
        return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
    }

    Vec2 clamp(const Vec2& p) const {
        return {std::clamp(p.x, min.x, max.x), std::clamp(p.y, min.y, max.y)};
    }

    double width() const { return max.x - min.x; }
    double height() const { return max.y - min.y; }
};

}  // namespace spso_ipf
