#include "frostlab/fourier.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "frostlab/grid_eval.hpp"

namespace frostlab {

cplx fourier_eval(const DiscreteMeasure2D& mu, Vec2 x) {
    cplx s = 0.0;
    for (const Atom2D& a : mu.atoms()) s += a.weight * unit_phase(dot(a.point, x));
    return s;
}

GridSpacing max_spacing(const DiscreteMeasure2D& mu, double p) {
    const auto [lo, hi] = mu.bounding_box();
    auto lim = [p](double w) {
        return w > 0.0 ? 2.0 / (p * w) : std::numeric_limits<double>::infinity();
    };
    return {lim(hi.x - lo.x), lim(hi.y - lo.y)};
}

GridSpacing default_spacing(const DiscreteMeasure2D& mu, double R, double p) {
    const GridSpacing m = max_spacing(mu, p);
    return {std::min(0.5 * m.hx, R / 64.0), std::min(0.5 * m.hy, R / 64.0)};
}

NormResult lp_norm_on_ball(const DiscreteMeasure2D& mu, double R, double p, GridSpacing h) {
    if (!(p >= 1.0)) throw Error("p must be at least 1");
    if (!(R > 0.0)) throw Error("R must be positive");
    if (!(h.hx > 0.0) || !(h.hy > 0.0)) throw Error("spacing must be positive");
    const GridSpacing hmax = max_spacing(mu, p);
    if (h.hx > hmax.hx || h.hy > hmax.hy) throw Error("undersampled");

    const auto kx = static_cast<std::size_t>(std::floor(R / h.hx));
    const auto ky = static_cast<std::size_t>(std::floor(R / h.hy));
    const UniformAxis xs{-static_cast<double>(kx) * h.hx, h.hx, 2 * kx + 1};
    const UniformAxis ys{0.0, h.hy, ky + 1};

    // Row i keeps columns [0, last[i]) of the half disk y >= 0.
    const double R2 = R * R;
    std::vector<std::size_t> last(xs.count);
    std::size_t points = 0;
    for (std::size_t i = 0; i < xs.count; ++i) {
        const double x = xs.at(i);
        const double rem = R2 - x * x;
        if (rem < 0.0) continue;
        auto k = static_cast<std::ptrdiff_t>(std::floor(std::sqrt(rem) / h.hy));
        while (static_cast<double>(k + 1) * h.hy * (static_cast<double>(k + 1) * h.hy) <= rem) ++k;
        while (k >= 0 && static_cast<double>(k) * h.hy * (static_cast<double>(k) * h.hy) > rem) --k;
        k = std::min<std::ptrdiff_t>(k, static_cast<std::ptrdiff_t>(ky));
        if (k < 0) continue;
        last[i] = static_cast<std::size_t>(k) + 1;
        points += 2 * static_cast<std::size_t>(k) + 1;
    }

    std::vector<Vec2> freqs;
    std::vector<cplx> coeffs;
    for (const Atom2D& a : mu.atoms()) {
        freqs.push_back(a.point);
        coeffs.emplace_back(a.weight);
    }

    const bool sixth = p == 6.0;
    const double half_p = 0.5 * p;
    std::vector<double> row_sums(xs.count, 0.0);
    TensorGridEvaluator eval(freqs, coeffs);
    eval.run(
        xs, ys,
        [&](const GridBlock& b) {
            for (std::size_t i = 0; i < b.rows; ++i) {
                const std::size_t row = b.row0 + i;
                const std::size_t end = std::min(last[row], b.col0 + b.cols);
                if (end <= b.col0) continue;
                double acc = 0.0;
                for (std::size_t k = b.col0; k < end; ++k) {
                    const double v = std::norm(b.value(i, k - b.col0));
                    const double t = sixth ? v * v * v : std::pow(v, half_p);
                    acc += k == 0 ? t : 2.0 * t;
                }
                row_sums[row] += acc;
            }
        },
        [&](std::size_t row) { return std::pair<std::size_t, std::size_t>{0, last[row]}; });

    NormResult r;
    r.spacing = h;
    r.grid_points = points;
    r.pow_p = h.hx * h.hy * pairwise_sum(row_sums);
    r.value = std::pow(r.pow_p, 1.0 / p);
    return r;
}

NormResult lp_norm_on_ball(const DiscreteMeasure2D& mu, double R, double p, double h) {
    return lp_norm_on_ball(mu, R, p, GridSpacing{h, h});
}

NormResult lp_norm_on_ball(const DiscreteMeasure2D& mu, double R, double p) {
    return lp_norm_on_ball(mu, R, p, default_spacing(mu, R, p));
}

DecayReport decay_scan(const DiscreteMeasure2D& mu, double s, const std::vector<double>& R_list,
                       const DecayOptions& opt) {
    if (R_list.size() < 3) throw Error("insufficient scales for fit");
    if (mu.empty()) throw Error("empty measure");
    std::vector<double> radii = R_list;
    std::sort(radii.begin(), radii.end());
    if (radii.front() < 16.0) throw Error("R must be at least 16");
    if (mu.resolution() > 1.0 / radii.back() * (1.0 + 1e-12))
        throw Error("measure resolution coarser than 1/R");

    DecayReport rep;
    rep.slack = opt.slack;
    rep.target_exponent = 2.0 - 2.0 * s;
    std::vector<double> xs, ys;
    for (double R : radii) {
        GridSpacing h = default_spacing(mu, R, opt.p);
        h.hx *= opt.spacing_scale;
        h.hy *= opt.spacing_scale;
        const auto t0 = std::chrono::steady_clock::now();
        const NormResult n = lp_norm_on_ball(mu, R, opt.p, h);
        const auto t1 = std::chrono::steady_clock::now();
        rep.per_R.push_back({R, h, n.pow_p, n.grid_points,
                             std::chrono::duration<double, std::milli>(t1 - t0).count()});
        xs.push_back(R);
        ys.push_back(n.pow_p);
    }
    rep.fit_all = fit_power_law(xs, ys);
    rep.fit_trimmed = fit_power_law(std::span(xs).subspan(1), std::span(ys).subspan(1));
    rep.fitted_exponent = rep.fit_trimmed.exponent;
    rep.passed = rep.fitted_exponent <= rep.target_exponent + opt.slack;
    return rep;
}

std::vector<ClusterPoint> mollifier_cluster(double delta) {
    std::vector<ClusterPoint> c;
    double total = 0.0;
    for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j) {
            const double r2 = 0.25 * (i * i + j * j);
            const double w = std::pow(1.0 - r2, 4);
            c.push_back({Vec2{i * 0.5 * delta, j * 0.5 * delta}, w});
            total += w;
        }
    for (ClusterPoint& p : c) p.weight /= total;
    return c;
}

DiscreteMeasure2D mollify(const DiscreteMeasure2D& mu, double delta) {
    if (!(delta >= mu.resolution() / 4.0)) throw Error("delta below resolution / 4");
    const std::vector<ClusterPoint> cluster = mollifier_cluster(delta);
    std::vector<Atom2D> out;
    out.reserve(mu.size() * cluster.size());
    for (const Atom2D& a : mu.atoms())
        for (const ClusterPoint& c : cluster) out.push_back({a.point + c.offset, a.weight * c.weight});
    return DiscreteMeasure2D(std::move(out), std::min(mu.resolution(), 0.5 * delta));
}

double psi_hat(Vec2 k) {
    const double a = kTwoPi * norm(k);
    if (a < 1e-3) return 1.0 - a * a / 24.0;
    return 3840.0 * std::cyl_bessel_j(5.0, a) / std::pow(a, 5);
}

}  // namespace frostlab
