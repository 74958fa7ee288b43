#include "frostlab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "frostlab/fit.hpp"

namespace frostlab {

namespace {

constexpr double kMassTol = 1e-12;

double checked_sum(std::span<const double> w) {
    // Pairwise summation keeps the relative error far below kMassTol.
    if (w.size() <= 8) return std::accumulate(w.begin(), w.end(), 0.0);
    const std::size_t half = w.size() / 2;
    return checked_sum(w.subspan(0, half)) + checked_sum(w.subspan(half));
}

}  // namespace

DiscreteMeasure1D::DiscreteMeasure1D(std::vector<Atom1D> atoms, double resolution)
    : atoms_(std::move(atoms)), resolution_(resolution) {
    if (!(resolution_ > 0.0)) throw Error("resolution must be positive");
    std::sort(atoms_.begin(), atoms_.end(),
              [](const Atom1D& a, const Atom1D& b) { return a.position < b.position; });
    std::vector<double> w;
    w.reserve(atoms_.size());
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        const Atom1D& a = atoms_[i];
        if (!(a.weight >= 0.0)) throw Error("negative weight");
        if (a.position < -1.0 || a.position > 1.0) throw Error("atom outside [-1,1]");
        if (i > 0 && a.position - atoms_[i - 1].position < 0.5 * resolution_ * (1.0 - 1e-9))
            throw Error("atoms closer than resolution/2");
        w.push_back(a.weight);
    }
    total_mass_ = checked_sum(w);
    prefix_.resize(atoms_.size() + 1, 0.0);
    for (std::size_t i = 0; i < atoms_.size(); ++i) prefix_[i + 1] = prefix_[i] + atoms_[i].weight;
}

std::vector<double> DiscreteMeasure1D::positions() const {
    std::vector<double> p;
    p.reserve(atoms_.size());
    for (const Atom1D& a : atoms_) p.push_back(a.position);
    return p;
}

double DiscreteMeasure1D::ball_mass(double y, double r) const {
    auto lo = std::lower_bound(atoms_.begin(), atoms_.end(), y - r,
                               [](const Atom1D& a, double v) { return a.position < v; });
    auto hi = std::upper_bound(atoms_.begin(), atoms_.end(), y + r,
                               [](double v, const Atom1D& a) { return v < a.position; });
    const auto i = static_cast<std::size_t>(lo - atoms_.begin());
    const auto j = static_cast<std::size_t>(hi - atoms_.begin());
    return j > i ? prefix_[j] - prefix_[i] : 0.0;
}

DiscreteMeasure1D DiscreteMeasure1D::scaled(double t) const {
    std::vector<Atom1D> a(atoms_.begin(), atoms_.end());
    for (Atom1D& x : a) x.weight *= t;
    return DiscreteMeasure1D(std::move(a), resolution_);
}

DiscreteMeasure2D::DiscreteMeasure2D(std::vector<Atom2D> atoms, double resolution)
    : atoms_(std::move(atoms)), resolution_(resolution) {
    if (!(resolution_ > 0.0)) throw Error("resolution must be positive");
    std::stable_sort(atoms_.begin(), atoms_.end(),
                     [](const Atom2D& a, const Atom2D& b) { return a.point.x < b.point.x; });
    std::vector<double> w;
    w.reserve(atoms_.size());
    for (const Atom2D& a : atoms_) {
        if (!(a.weight >= 0.0)) throw Error("negative weight");
        w.push_back(a.weight);
    }
    total_mass_ = checked_sum(w);
}

double DiscreteMeasure2D::ball_mass(Vec2 y, double r) const {
    auto lo = std::lower_bound(atoms_.begin(), atoms_.end(), y.x - r,
                               [](const Atom2D& a, double v) { return a.point.x < v; });
    const double r2 = r * r;
    double m = 0.0;
    for (auto it = lo; it != atoms_.end() && it->point.x <= y.x + r; ++it) {
        const Vec2 d = it->point - y;
        if (d.x * d.x + d.y * d.y <= r2) m += it->weight;
    }
    return m;
}

DiscreteMeasure2D DiscreteMeasure2D::scaled(double t) const {
    std::vector<Atom2D> a(atoms_.begin(), atoms_.end());
    for (Atom2D& x : a) x.weight *= t;
    return DiscreteMeasure2D(std::move(a), resolution_);
}

std::pair<Vec2, Vec2> DiscreteMeasure2D::bounding_box() const {
    if (atoms_.empty()) return {{0.0, 0.0}, {0.0, 0.0}};
    Vec2 lo = atoms_.front().point, hi = lo;
    for (const Atom2D& a : atoms_) {
        lo.x = std::min(lo.x, a.point.x);
        lo.y = std::min(lo.y, a.point.y);
        hi.x = std::max(hi.x, a.point.x);
        hi.y = std::max(hi.y, a.point.y);
    }
    return {lo, hi};
}

DiscreteMeasure1D build_cantor(double ratio, int depth, double mass) {
    if (!(ratio > 0.0) || !(ratio < 0.5)) throw Error("cantor ratio must lie in (0, 1/2)");
    if (depth < 1 || depth > 20) throw Error("cantor depth must lie in [1, 20]");
    if (!(mass > 0.0)) throw Error("mass must be positive");

    // Left endpoints of the level intervals, refined one level at a time.
    std::vector<double> left{-1.0};
    double length = 2.0;
    for (int level = 0; level < depth; ++level) {
        const double child = ratio * length;
        std::vector<double> next;
        next.reserve(left.size() * 2);
        for (double a : left) {
            next.push_back(a);
            next.push_back(a + length - child);
        }
        left = std::move(next);
        length = child;
    }

    const double w = mass / static_cast<double>(left.size());
    std::vector<Atom1D> atoms;
    atoms.reserve(left.size());
    for (double a : left) atoms.push_back({a + 0.5 * length, w});
    return DiscreteMeasure1D(std::move(atoms), 2.0 * std::pow(ratio, depth));
}

DiscreteMeasure1D build_ap_measure(int num_intervals, double interval_length, double mass) {
    if (num_intervals < 2) throw Error("num_intervals must be at least 2");
    if (!(interval_length > 0.0)) throw Error("interval_length must be positive");
    if (num_intervals * interval_length > 2.0 * (1.0 + 1e-12))
        throw Error("intervals do not fit in [-1,1]");
    if (!(mass > 0.0)) throw Error("mass must be positive");

    const double w = mass / num_intervals;
    std::vector<Atom1D> atoms;
    atoms.reserve(static_cast<std::size_t>(num_intervals));
    for (int k = 0; k < num_intervals; ++k) {
        const double x = -1.0 + 2.0 * k / (num_intervals - 1);
        atoms.push_back({std::clamp(x, -1.0, 1.0), w});
    }
    return DiscreteMeasure1D(std::move(atoms), interval_length);
}

std::vector<double> geometric_scales(double r_min, double r_max, int num_scales) {
    if (num_scales < 2 || !(r_min > 0.0) || !(r_max > r_min)) throw Error("invalid scale range");
    std::vector<double> out(static_cast<std::size_t>(num_scales));
    const double q = std::log(r_max / r_min) / (num_scales - 1);
    for (int i = 0; i < num_scales; ++i) out[static_cast<std::size_t>(i)] = r_min * std::exp(q * i);
    out.back() = r_max;
    return out;
}

namespace {

void validate_scan(bool empty, double resolution, double r_min, double r_max, int num_scales) {
    if (empty) throw Error("empty measure");
    if (num_scales < 2 || r_min < resolution * (1.0 - 1e-12) || r_max > 2.0 || !(r_max > r_min))
        throw Error("invalid scale range");
}

// Shared tail: fills ratios and the exponent fit from per-scale extremal masses.
RegularityReport finish(RegularityReport::Kind kind, double s, std::vector<double> scales,
                        std::vector<double> extremal_mass, double cap) {
    RegularityReport rep;
    rep.kind = kind;
    rep.s = s;
    rep.r_range = {scales.front(), scales.back()};
    rep.constant_cap = cap;
    rep.per_scale_max_mass = extremal_mass;

    std::vector<double> fit_r, fit_m;
    for (std::size_t i = 0; i < scales.size(); ++i) {
        const ScaleRatio sr{scales[i], extremal_mass[i] / std::pow(scales[i], s)};
        (kind == RegularityReport::Kind::upper ? rep.per_scale_max_ratio : rep.per_scale_min_ratio)
            .push_back(sr);
        if (extremal_mass[i] > 0.0) {
            fit_r.push_back(scales[i]);
            fit_m.push_back(extremal_mass[i]);
        }
    }
    if (fit_r.size() >= 2) {
        const PowerFit f = fit_power_law(fit_r, fit_m);
        rep.exponent_fit = f.exponent;
        rep.exponent_residual = f.residual;
    }

    if (kind == RegularityReport::Kind::upper) {
        double c = 0.0;
        for (const ScaleRatio& sr : rep.per_scale_max_ratio) c = std::max(c, sr.ratio);
        rep.constant_fit = c;
        rep.passed = std::all_of(rep.per_scale_max_ratio.begin(), rep.per_scale_max_ratio.end(),
                                 [cap](const ScaleRatio& sr) { return sr.ratio <= cap; });
    } else {
        double c = std::numeric_limits<double>::infinity();
        for (const ScaleRatio& sr : rep.per_scale_min_ratio) c = std::min(c, sr.ratio);
        rep.constant_fit = c;
        rep.passed = c >= cap;
    }
    return rep;
}

template <class Measure, class Center>
std::vector<Center> scan_centers(const Measure& mu, bool with_midpoints);

template <>
std::vector<double> scan_centers(const DiscreteMeasure1D& mu, bool with_midpoints) {
    std::vector<double> c;
    const auto atoms = mu.atoms();
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        c.push_back(atoms[i].position);
        if (with_midpoints && i + 1 < atoms.size())
            c.push_back(0.5 * (atoms[i].position + atoms[i + 1].position));
    }
    return c;
}

template <>
std::vector<Vec2> scan_centers(const DiscreteMeasure2D& mu, bool with_midpoints) {
    std::vector<Vec2> c;
    const auto atoms = mu.atoms();
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        c.push_back(atoms[i].point);
        if (with_midpoints && i + 1 < atoms.size())
            c.push_back((atoms[i].point + atoms[i + 1].point) * 0.5);
    }
    return c;
}

template <class Center, class Measure>
RegularityReport scan(const Measure& mu, double s, double r_min, double r_max, int num_scales,
                      RegularityReport::Kind kind, double cap) {
    validate_scan(mu.empty(), mu.resolution(), r_min, r_max, num_scales);
    const bool upper = kind == RegularityReport::Kind::upper;
    const std::vector<Center> centers = scan_centers<Measure, Center>(mu, upper);
    std::vector<double> scales = geometric_scales(r_min, r_max, num_scales);
    std::vector<double> extremal;
    extremal.reserve(scales.size());
    for (double r : scales) {
        double best = upper ? 0.0 : std::numeric_limits<double>::infinity();
        for (const Center& y : centers) {
            const double m = mu.ball_mass(y, r);
            best = upper ? std::max(best, m) : std::min(best, m);
        }
        extremal.push_back(best);
    }
    return finish(kind, s, std::move(scales), std::move(extremal), cap);
}

}  // namespace

RegularityReport check_frostman(const DiscreteMeasure1D& mu, double s, double r_min, double r_max,
                                int num_scales, const RegularityOptions& opt) {
    return scan<double>(mu, s, r_min, r_max, num_scales, RegularityReport::Kind::upper,
                        opt.constant_cap);
}

RegularityReport check_frostman(const DiscreteMeasure2D& mu, double s, double r_min, double r_max,
                                int num_scales, const RegularityOptions& opt) {
    return scan<Vec2>(mu, s, r_min, r_max, num_scales, RegularityReport::Kind::upper,
                      opt.constant_cap);
}

RegularityReport check_ad_regular(const DiscreteMeasure1D& mu, double s, double r_min, double r_max,
                                  int num_scales, const RegularityOptions& opt) {
    return scan<double>(mu, s, r_min, r_max, num_scales, RegularityReport::Kind::lower,
                        opt.lower_cap);
}

RegularityReport check_ad_regular(const DiscreteMeasure2D& mu, double s, double r_min, double r_max,
                                  int num_scales, const RegularityOptions& opt) {
    return scan<Vec2>(mu, s, r_min, r_max, num_scales, RegularityReport::Kind::lower,
                      opt.lower_cap);
}

}  // namespace frostlab
