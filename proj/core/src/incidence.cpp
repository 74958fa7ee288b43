#include "frostlab/incidence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace frostlab {

SquareGrid::SquareGrid(double R) : R_(R), side_(std::sqrt(R)) {
    if (!(R > 0.0)) throw Error("R must be positive");
    n_ = static_cast<int>(std::ceil(2.0 * R / side_ - 1e-9));
}

Square SquareGrid::square(int i, int j) const {
    return {-R_ + i * side_, -R_ + j * side_, side_};
}

namespace {

// x-range of the convex polygon clipped to ylo <= y <= yhi; empty if lo > hi.
std::pair<double, double> strip_extent(const std::array<Vec2, 4>& poly, double ylo, double yhi) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    auto take = [&](double x) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    };
    for (int k = 0; k < 4; ++k) {
        const Vec2 a = poly[k], b = poly[(k + 1) % 4];
        if (a.y >= ylo && a.y <= yhi) take(a.x);
        for (double y : {ylo, yhi})
            if ((a.y - y) * (b.y - y) < 0.0) take(a.x + (b.x - a.x) * (y - a.y) / (b.y - a.y));
    }
    return {lo, hi};
}

template <class Visit>
void sweep(const OrientedRect& r, const SquareGrid& g, Visit&& visit) {
    const auto poly = r.corners();
    double ylo = poly[0].y, yhi = ylo;
    for (const Vec2& c : poly) {
        ylo = std::min(ylo, c.y);
        yhi = std::max(yhi, c.y);
    }
    const double R = g.R(), h = g.side();
    const int n = g.n();
    const int j0 = std::max(0, static_cast<int>(std::floor((ylo + R) / h)) - 1);
    const int j1 = std::min(n - 1, static_cast<int>(std::floor((yhi + R) / h)) + 1);
    for (int j = j0; j <= j1; ++j) {
        const double y0 = -R + j * h;
        // Widened slightly so that a touching corner is not lost to rounding.
        const auto [xlo, xhi] = strip_extent(poly, y0 - 1e-9 * h, y0 + h + 1e-9 * h);
        if (xlo > xhi) continue;
        const int i0 = std::max(0, static_cast<int>(std::floor((xlo + R) / h)) - 1);
        const int i1 = std::min(n - 1, static_cast<int>(std::floor((xhi + R) / h)) + 1);
        for (int i = i0; i <= i1; ++i)
            if (intersects(r, g.square(i, j))) visit(g.id(i, j));
    }
}

}  // namespace

std::vector<std::size_t> squares_meeting(const OrientedRect& tube, const SquareGrid& grid) {
    std::vector<std::size_t> ids;
    sweep(tube, grid, [&](std::size_t id) { ids.push_back(id); });
    std::sort(ids.begin(), ids.end());
    return ids;
}

IncidenceResult incidence_count(const std::vector<OrientedRect>& tubes, const SquareGrid& grid) {
    IncidenceResult res;
    res.per_square.assign(grid.size(), 0);
    for (const OrientedRect& t : tubes)
        sweep(t, grid, [&](std::size_t id) {
            ++res.per_square[id];
            ++res.total;
        });
    return res;
}

HeavyLightSplit heavy_light_split(const IncidenceResult& inc, const SquareGrid& grid, double s,
                                  double alpha) {
    if (inc.per_square.size() != grid.size()) throw Error("incidence/grid size mismatch");
    if (!(s > 0.0 && s < 1.0)) throw Error("s must lie in (0,1)");
    HeavyLightSplit sp;
    const double R = grid.R();
    sp.s = s;
    sp.alpha = alpha;
    sp.threshold = std::pow(R, s / 2 - alpha);
    for (std::size_t id = 0; id < inc.per_square.size(); ++id) {
        const auto c = inc.per_square[id];
        if (c == 0) continue;
        (c >= sp.threshold ? sp.heavy : sp.light).push_back(id);
    }
    sp.bound_easy = std::pow(R, 1.0 - s) * std::pow(R, 10 * alpha + 2 * alpha / s);
    sp.ratio_easy = sp.heavy.size() / sp.bound_easy;
    sp.bound_improved = std::pow(R, 1.0 - s - 2 * alpha);
    sp.ratio_improved = sp.heavy.size() / sp.bound_improved;
    return sp;
}

PerTubeHeavy per_tube_heavy_count(const OrientedRect& tube, std::size_t family_size,
                                  const HeavyLightSplit& split, const SquareGrid& grid) {
    PerTubeHeavy out;
    for (std::size_t id : squares_meeting(tube, grid))
        if (std::binary_search(split.heavy.begin(), split.heavy.end(), id)) ++out.count;
    const double s = split.s, a = split.alpha;
    out.bound = family_size / std::pow(grid.R(), s / 2 - a - 2 * a / s);
    out.ratio = out.bound > 0.0 ? out.count / out.bound : 0.0;
    return out;
}

}  // namespace frostlab
