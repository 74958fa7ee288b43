#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace frostlab {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Error raised on contract violations (bad inputs, undersampled grids, ...).
/// The message is the short, stable token callers and tests match against.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator*(double t) const { return {x * t, y * t}; }
    constexpr bool operator==(const Vec2&) const = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

inline Vec2 rotate(Vec2 a, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * a.x - s * a.y, s * a.x + c * a.y};
}

/// e(t) = exp(2 pi i t). The integer part of t is removed before the
/// trigonometric call so large arguments keep full relative accuracy.
inline cplx unit_phase(double t) {
    const double frac = t - std::nearbyint(t);
    return {std::cos(kTwoPi * frac), std::sin(kTwoPi * frac)};
}

/// Largest power of two not exceeding v (v > 0). Dyadic levels use this
/// rounding: v lies in [level, 2 * level).
inline double dyadic_floor(double v) { return std::exp2(std::floor(std::log2(v))); }

}  // namespace frostlab
