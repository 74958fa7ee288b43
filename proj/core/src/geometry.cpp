#include "frostlab/geometry.hpp"

#include <cmath>

namespace frostlab {

std::array<Vec2, 4> OrientedRect::corners() const {
    const Vec2 a = u * half_u, b = v() * half_v;
    return {center + a + b, center + a - b, center - a - b, center - a + b};
}

bool OrientedRect::contains(Vec2 p, double eps) const {
    const Vec2 d = p - center;
    return std::fabs(dot(d, u)) <= half_u + eps && std::fabs(dot(d, v())) <= half_v + eps;
}

bool OrientedRect::contains(const OrientedRect& r, double eps) const {
    for (Vec2 c : r.corners())
        if (!contains(c, eps)) return false;
    return true;
}

namespace {

// Half extent of r projected on the unit axis n.
double radius_along(const OrientedRect& r, Vec2 n) {
    return r.half_u * std::fabs(dot(r.u, n)) + r.half_v * std::fabs(dot(r.v(), n));
}

}  // namespace

bool intersects(const OrientedRect& a, const OrientedRect& b) {
    const Vec2 d = b.center - a.center;
    for (Vec2 n : {a.u, a.v(), b.u, b.v()})
        if (std::fabs(dot(d, n)) > radius_along(a, n) + radius_along(b, n)) return false;
    return true;
}

bool intersects(const OrientedRect& a, const Square& q) { return intersects(a, q.as_rect()); }

}  // namespace frostlab
