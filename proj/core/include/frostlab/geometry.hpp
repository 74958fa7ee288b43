#pragma once

#include <array>

#include "frostlab/common.hpp"

namespace frostlab {

/// Closed rectangle {center + a u + b v : |a| <= half_u, |b| <= half_v} with
/// u a unit vector and v = perp(u).
struct OrientedRect {
    Vec2 center;
    Vec2 u{1.0, 0.0};
    double half_u = 0.0;
    double half_v = 0.0;

    Vec2 v() const { return perp(u); }
    std::array<Vec2, 4> corners() const;
    /// Closed containment with absolute slack eps.
    bool contains(Vec2 p, double eps = 0.0) const;
    /// Every corner of r lies in this rectangle (rectangles are convex).
    bool contains(const OrientedRect& r, double eps = 0.0) const;
};

/// Axis-aligned closed square [x0, x0 + side] x [y0, y0 + side].
struct Square {
    double x0 = 0.0;
    double y0 = 0.0;
    double side = 1.0;

    OrientedRect as_rect() const {
        return {{x0 + side / 2, y0 + side / 2}, {1.0, 0.0}, side / 2, side / 2};
    }
};

/// Separating-axis test for two closed convex rectangles. Touching
/// boundaries count as intersecting.
bool intersects(const OrientedRect& a, const OrientedRect& b);

/// Rectangle versus axis-aligned square, the same closed predicate.
bool intersects(const OrientedRect& a, const Square& q);

}  // namespace frostlab
