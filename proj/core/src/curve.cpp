#include "frostlab/curve.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace frostlab {

namespace {

double horner(const std::vector<double>& c, double x) {
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    return v;
}

std::vector<double> derivative(const std::vector<double>& c) {
    std::vector<double> d;
    for (std::size_t k = 1; k < c.size(); ++k) d.push_back(static_cast<double>(k) * c[k]);
    if (d.empty()) d.push_back(0.0);
    return d;
}

// Coefficients of p(c + t) in powers of t (repeated synthetic division).
std::vector<double> taylor_shift(std::vector<double> p, double c) {
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = n - 1; k > i; --k) p[k - 1] += c * p[k];
    return p;
}

struct Box {
    double lo, hi, lower_bound;
    bool operator<(const Box& o) const { return lower_bound > o.lower_bound; }  // min-heap
};

// Lower bound for min |q| over [lo, hi] from the Taylor enclosure at the midpoint.
double enclosure_lower(const std::vector<double>& q, double lo, double hi) {
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    const std::vector<double> t = taylor_shift(q, c);
    double tail = 0.0, hk = 1.0;
    for (std::size_t k = 1; k < t.size(); ++k) {
        hk *= h;
        tail += std::abs(t[k]) * hk;
    }
    return std::max(0.0, std::abs(t[0]) - tail);
}

struct MinModulus {
    double value;      // attained value of |q| at some point
    double certified;  // proven lower bound for min |q|
};

MinModulus certified_min_modulus(const std::vector<double>& q) {
    double best = std::min(std::abs(horner(q, -1.0)), std::abs(horner(q, 1.0)));
    std::priority_queue<Box> heap;
    heap.push({-1.0, 1.0, enclosure_lower(q, -1.0, 1.0)});
    double certified = heap.top().lower_bound;
    for (int iter = 0; iter < 2000000 && !heap.empty(); ++iter) {
        const Box b = heap.top();
        certified = std::min(best, b.lower_bound);
        if (best - b.lower_bound <= 1e-13 || best < 1e-7) break;
        heap.pop();
        const double mid = 0.5 * (b.lo + b.hi);
        best = std::min(best, std::abs(horner(q, mid)));
        for (auto [lo, hi] : {std::pair{b.lo, mid}, std::pair{mid, b.hi}}) {
            const double lb = enclosure_lower(q, lo, hi);
            if (lb < best) heap.push({lo, hi, lb});
        }
        if (heap.empty()) certified = best;
    }
    return {best, certified};
}

void fill_samples(CurveSpec& c, std::vector<CurveSample>& out, int grid_points) {
    out.clear();
    const int n = std::max(grid_points, 2);
    for (int i = 0; i < n; ++i) {
        const double x = -1.0 + 2.0 * i / (n - 1);
        out.push_back({x, c.gamma(x), c.d1(x), c.d2(x)});
    }
}

}  // namespace

double CurveSpec::gamma(double x) const { return horner(coeffs_, x); }
double CurveSpec::d1(double x) const { return horner(d1_coeffs_, x); }
double CurveSpec::d2(double x) const { return horner(d2_coeffs_, x); }

Vec2 CurveSpec::tangent(double x) const {
    const double g = d1(x);
    const double n = std::hypot(1.0, g);
    return {1.0 / n, g / n};
}

Vec2 CurveSpec::normal(double x) const { return perp(tangent(x)); }

CurveSpec make_curve(CurveKind kind, const std::vector<double>& coefficients, int grid_points) {
    if (grid_points < 2) throw Error("grid_points must be at least 2");
    CurveSpec c;
    c.kind_ = kind;
    if (kind == CurveKind::parabola) {
        c.coeffs_ = {0.0, 0.0, 1.0};
    } else if (kind == CurveKind::custom) {
        if (coefficients.empty()) throw Error("custom curve needs coefficients");
        c.coeffs_ = coefficients;
    } else {
        throw Error("flat curves are only available through make_flat_curve_unchecked");
    }
    c.d1_coeffs_ = derivative(c.coeffs_);
    c.d2_coeffs_ = derivative(c.d1_coeffs_);

    if (kind == CurveKind::parabola) {
        c.d2_min_ = c.d2_max_ = 2.0;
    } else {
        const MinModulus m = certified_min_modulus(c.d2_coeffs_);
        if (m.certified < 1e-6) throw Error("degenerate curvature");
        c.d2_min_ = m.value;
        // Max of |gamma''| is only used for reporting; the grid scan plus
        // endpoints is adequate.
        double mx = std::max(std::abs(c.d2(-1.0)), std::abs(c.d2(1.0)));
        const int n = std::max(grid_points, 1001);
        for (int i = 0; i < n; ++i) mx = std::max(mx, std::abs(c.d2(-1.0 + 2.0 * i / (n - 1))));
        c.d2_max_ = mx;
    }
    fill_samples(c, c.samples_, grid_points);
    return c;
}

CurveSpec make_flat_curve_unchecked(int grid_points) {
    CurveSpec c;
    c.kind_ = CurveKind::flat_unchecked;
    c.coeffs_ = {0.0};
    c.d1_coeffs_ = {0.0};
    c.d2_coeffs_ = {0.0};
    fill_samples(c, c.samples_, grid_points);
    return c;
}

DiscreteMeasure2D lift_measure(const DiscreteMeasure1D& nu, const CurveSpec& curve) {
    std::vector<Atom2D> atoms;
    atoms.reserve(nu.size());
    for (const Atom1D& a : nu.atoms()) atoms.push_back({curve.point(a.position), a.weight});
    return DiscreteMeasure2D(std::move(atoms), nu.resolution());
}

}  // namespace frostlab
