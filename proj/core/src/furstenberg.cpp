#include "frostlab/furstenberg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace frostlab {

namespace {

constexpr double kSlack = 1e-9;
constexpr int kMaxBins = 80;

// Ball counts for all centers over r = delta 2^b up to the diameter and the
// diameter itself; dist(i, j) is symmetric.
template <class Dist>
DeltaSetVerdict ball_scan(std::size_t n, Dist&& dist, double delta, double s, double C) {
    DeltaSetVerdict v;
    v.s = s;
    v.C = C;
    v.delta = delta;
    v.size = n;
    if (n == 0) return v;
    if (!(delta > 0.0)) throw Error("delta must be positive");

    double diam = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) diam = std::max(diam, dist(i, j));

    std::vector<double> radii;
    for (int b = 0; b < kMaxBins && delta * std::exp2(b) <= diam * (1 + kSlack); ++b)
        radii.push_back(delta * std::exp2(b));
    if (radii.empty() || radii.back() < diam) radii.push_back(std::max(diam, delta));
    v.radii = radii.size();

    std::vector<std::size_t> hist(radii.size());
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(hist.begin(), hist.end(), 0);
        for (std::size_t j = 0; j < n; ++j) {
            const double d = j == i ? 0.0 : dist(i, j);
            // First radius containing d; radii are increasing.
            const double q = d / (delta * (1 + kSlack));
            std::size_t b = q <= 1.0 ? 0 : static_cast<std::size_t>(std::max(0.0, std::ceil(std::log2(q))));
            b = std::min(b, radii.size() - 1);
            while (b + 1 < radii.size() && radii[b] * (1 + kSlack) < d) ++b;
            while (b > 0 && radii[b - 1] * (1 + kSlack) >= d) --b;
            ++hist[b];
        }
        std::size_t count = 0;
        for (std::size_t b = 0; b < radii.size(); ++b) {
            count += hist[b];
            const double bound = C * std::pow(radii[b] / delta, s);
            const double ratio = count / bound;
            if (count > bound * (1 + kSlack)) {
                ++v.violations;
                v.passed = false;
            }
            if (ratio > v.worst_ratio) {
                v.worst_ratio = ratio;
                v.worst_center = i;
                v.worst_r = radii[b];
                v.worst_count = count;
            }
        }
    }
    return v;
}

// Parameter range {t : foot + t e in r}; empty when lo >= hi.
std::pair<double, double> chord_interval(const Line& l, const OrientedRect& r) {
    const Vec2 e = l.direction();
    const Vec2 p = l.foot() - r.center;
    double lo = -std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& [axis, half] : {std::pair{r.u, r.half_u}, std::pair{r.v(), r.half_v}}) {
        const double c = dot(p, axis), de = dot(e, axis);
        if (std::fabs(de) < 1e-15) {
            if (std::fabs(c) > half) return {0.0, 0.0};
            continue;
        }
        double t0 = (-half - c) / de, t1 = (half - c) / de;
        if (t0 > t1) std::swap(t0, t1);
        lo = std::max(lo, t0);
        hi = std::min(hi, t1);
    }
    return {lo, hi};
}

double reduce_angle(double phi) {
    phi = std::fmod(phi, kPi);
    if (phi < 0.0) phi += kPi;
    if (phi >= kPi) phi -= kPi;
    return phi;
}

}  // namespace

Line Line::through(Vec2 p, Vec2 dir) {
    Line l;
    l.phi = reduce_angle(std::atan2(dir.y, dir.x));
    l.a = dot(p, l.normal());
    return l;
}

Line RigidMotion::apply(const Line& l) const {
    return Line::through(apply(l.foot()), rotate(l.direction(), angle));
}

double line_distance(const Line& l1, const Line& l2) {
    return std::fabs(std::sin(l1.phi - l2.phi)) + norm(l1.foot() - l2.foot());
}

double point_line_distance(Vec2 p, const Line& l) { return std::fabs(dot(p, l.normal()) - l.a); }

double chord_length(const Line& l, const OrientedRect& r) {
    const auto [lo, hi] = chord_interval(l, r);
    return hi > lo ? hi - lo : 0.0;
}

DeltaSetVerdict check_delta_set_points(const std::vector<Vec2>& points, double delta, double s,
                                       double C) {
    return ball_scan(
        points.size(), [&](std::size_t i, std::size_t j) { return norm(points[i] - points[j]); },
        delta, s, C);
}

DeltaSetVerdict check_delta_set_lines(const LineFamily& family, double s, double C,
                                      double full_length) {
    const auto& L = family.lines;
    const double delta = family.delta;
    DeltaSetVerdict v = ball_scan(
        L.size(), [&](std::size_t i, std::size_t j) { return line_distance(L[i], L[j]); }, delta, s,
        C);

    const OrientedRect dom = family.domain.as_rect();
    for (std::size_t i = 0; i < L.size(); ++i) {
        const auto [lo, hi] = chord_interval(L[i], dom);
        if (hi <= lo) continue;
        const Vec2 e = L[i].direction();
        const Vec2 mid = L[i].foot() + e * (0.5 * (lo + hi));
        for (int b = 1; delta * std::exp2(b) <= 1.0 * (1 + kSlack); ++b) {
            const double r = delta * std::exp2(b);
            const OrientedRect box{mid, e, 0.5, r / 2};
            std::size_t count = 0;
            for (const Line& k : L)
                if (chord_length(k, box) >= full_length * (1 - kSlack)) ++count;
            const double ratio = count / (C * std::pow(r / delta, s));
            if (ratio > v.rect_worst_ratio) {
                v.rect_worst_ratio = ratio;
                v.rect_worst_count = count;
                v.rect_worst_r = r;
            }
        }
    }
    return v;
}

std::string to_string(LineStatus s) {
    switch (s) {
        case LineStatus::certified: return "certified";
        case LineStatus::not_certified: return "not_certified";
        case LineStatus::too_few: return "too_few";
    }
    return "unknown";
}

std::string to_string(FurstenbergStatus s) {
    switch (s) {
        case FurstenbergStatus::certified: return "certified";
        case FurstenbergStatus::refuted: return "refuted";
        case FurstenbergStatus::not_certified: return "not_certified";
    }
    return "unknown";
}

namespace {

// Farthest-point order starting at near[0]; near-ties go to the lower index.
std::vector<std::size_t> farthest_point_order(const std::vector<Vec2>& pts,
                                              const std::vector<std::size_t>& near) {
    const std::size_t m = near.size();
    std::vector<std::size_t> order;
    if (m == 0) return order;
    std::vector<double> mind(m, std::numeric_limits<double>::infinity());
    std::vector<bool> used(m, false);
    std::size_t cur = 0;
    for (std::size_t step = 0; step < m; ++step) {
        used[cur] = true;
        order.push_back(near[cur]);
        double best = -1.0;
        for (std::size_t k = 0; k < m; ++k) {
            if (used[k]) continue;
            mind[k] = std::min(mind[k], norm(pts[near[k]] - pts[near[cur]]));
            best = std::max(best, mind[k]);
        }
        if (best < 0.0) break;
        for (std::size_t k = 0; k < m; ++k)
            if (!used[k] && mind[k] >= best * (1 - kSlack)) {
                cur = k;
                break;
            }
    }
    return order;
}

}  // namespace

FurstenbergVerdict verify_furstenberg(const std::vector<Vec2>& points, const LineFamily& family,
                                      double delta, double s, double t, double C) {
    FurstenbergVerdict fv;
    fv.delta = delta;
    fv.s = s;
    fv.t = t;
    fv.C = C;
    fv.points = points.size();

    LineFamily fam = family;
    fam.delta = delta;
    fv.line_set_check = check_delta_set_lines(fam, t, C);
    fv.required_lines = std::pow(delta, -t) / C;
    fv.cardinality_check = fam.lines.size() >= fv.required_lines * (1 - kSlack);
    fv.required_points = std::pow(delta, -s) / C;
    const auto kmin = static_cast<std::size_t>(std::max(1.0, std::ceil(fv.required_points * (1 - kSlack))));

    bool refuted = !fv.line_set_check.passed || !fv.cardinality_check;
    bool uncertified = false;
    for (std::size_t li = 0; li < fam.lines.size(); ++li) {
        LinePointCheck pc;
        pc.line = li;
        std::vector<std::size_t> near;
        for (std::size_t p = 0; p < points.size(); ++p)
            if (point_line_distance(points[p], fam.lines[li]) <= delta * (1 + kSlack)) near.push_back(p);
        pc.near_points = near.size();
        if (near.size() < kmin) {
            pc.status = LineStatus::too_few;
            refuted = true;
            fv.per_line_point_checks.push_back(std::move(pc));
            continue;
        }
        const auto order = farthest_point_order(points, near);
        pc.status = LineStatus::not_certified;
        for (std::size_t k = kmin;; k = std::min(2 * k, order.size())) {
            std::vector<Vec2> subset;
            subset.reserve(k);
            for (std::size_t q = 0; q < k; ++q) subset.push_back(points[order[q]]);
            pc.subset_size = k;
            pc.subset_check = check_delta_set_points(subset, delta, s, C);
            if (pc.subset_check.passed) {
                pc.status = LineStatus::certified;
                break;
            }
            if (k == order.size()) break;
        }
        if (pc.status != LineStatus::certified) uncertified = true;
        fv.per_line_point_checks.push_back(std::move(pc));
    }

    fv.status = refuted       ? FurstenbergStatus::refuted
                : uncertified ? FurstenbergStatus::not_certified
                              : FurstenbergStatus::certified;
    fv.is_furstenberg = fv.status == FurstenbergStatus::certified;
    fv.os_bound = std::pow(delta, -2 * s);
    fv.os_ratio = fv.points / fv.os_bound;
    return fv;
}

}  // namespace frostlab
