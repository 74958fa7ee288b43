#include "frostlab/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "frostlab/energy.hpp"
#include "frostlab/fourier.hpp"

namespace frostlab {

PipelineReport ad_regular_pipeline(const DiscreteMeasure2D& mu, double s, const CapGrid& grid) {
    if (!(s > 0.0 && s < 1.0)) throw Error("s must lie in (0,1)");
    const double R = grid.R();
    PipelineReport rep;
    rep.R = R;
    rep.s = s;
    const RegularityReport ad = check_ad_regular(mu, s, std::max(1.0 / R, mu.resolution()), 1.0, 8);
    rep.ad_regular = ad.passed;
    rep.ad_lower_constant = ad.constant_fit;

    std::map<int, std::vector<Atom2D>> by_cap;
    for (const Atom2D& a : mu.atoms()) by_cap[grid.theta_of(a.point.x)].push_back(a);
    rep.occupied_caps = by_cap.size();
    rep.expected_caps = std::pow(R, s / 2);
    rep.cap_ratio = rep.occupied_caps / rep.expected_caps;

    double sum_sq = 0.0;
    for (auto& [theta, atoms] : by_cap) {
        PipelineCap c;
        c.theta = theta;
        c.atoms = atoms.size();
        std::vector<Atom1D> proj;
        for (const Atom2D& a : atoms) {
            c.mass += a.weight;
            proj.push_back({a.point.x, a.weight});
        }
        const DiscreteMeasure2D cap_measure(atoms, mu.resolution());
        c.l6_pow6 = lp_norm_on_ball(cap_measure, R, 6.0).pow_p;
        c.ec3 = ec_energy(DiscreteMeasure1D(std::move(proj), mu.resolution()), 3, 1.0 / R).value;
        c.r2_ec3 = R * R * c.ec3;
        c.constant = c.ec3 / (std::pow(c.mass, 5) * std::pow(R, -s));
        c.constant_homogeneous = c.ec3 / (std::pow(c.mass, 6) * std::pow(R, -s / 2));
        sum_sq += std::pow(c.l6_pow6, 1.0 / 3.0);
        rep.max_cap_l6 = std::max(rep.max_cap_l6, std::pow(c.l6_pow6, 1.0 / 6.0));
        rep.max_r2_ec3 = std::max(rep.max_r2_ec3, c.r2_ec3);
        if (c.r2_ec3 > 0.0) rep.max_l6_over_energy = std::max(rep.max_l6_over_energy, c.l6_pow6 / c.r2_ec3);
        rep.max_constant = std::max(rep.max_constant, c.constant);
        rep.caps.push_back(c);
    }
    rep.full_l6 = lp_norm_on_ball(mu, R, 6.0).value;
    rep.decoupled_rhs = std::sqrt(sum_sq);
    rep.decoupling_ratio = rep.decoupled_rhs > 0.0 ? rep.full_l6 / rep.decoupled_rhs : 0.0;
    const double N = static_cast<double>(rep.occupied_caps);
    rep.product = N * N * N * rep.max_r2_ec3;
    rep.target = std::pow(R, 2.0 - 2.0 * s);
    rep.product_ratio = rep.product / rep.target;
    return rep;
}

HeavySquareRun heavy_square_run(std::vector<Tube> tubes, double lambda, double s, double R,
                                double alpha) {
    HeavySquareRun run;
    run.R = R;
    run.s = s;
    run.alpha = alpha;
    run.lambda = lambda;
    run.tubes = std::move(tubes);
    const SquareGrid sg(R);
    std::vector<OrientedRect> rects;
    for (const Tube& T : run.tubes) rects.push_back(T.rect());
    run.incidences = incidence_count(rects, sg);
    run.split = heavy_light_split(run.incidences, sg, s, alpha);
    run.light_tube_limit = std::pow(R, (1.0 - s) / 2 - 10 * alpha);
    for (std::size_t t = 0; t < rects.size(); ++t) {
        run.per_tube.push_back(per_tube_heavy_count(rects[t], rects.size(), run.split, sg));
        run.max_tube_ratio = std::max(run.max_tube_ratio, run.per_tube.back().ratio);
        if (run.per_tube.back().count > run.light_tube_limit) run.heavy_tubes.push_back(t);
    }
    return run;
}

HeavySquareScan heavy_square_scan(const DiscreteMeasure2D& mu, double s, const CapGrid& grid,
                                  double alpha) {
    HeavySquareScan scan;
    const Decomposition dec = pigeonhole_decompose(mu, s, grid);
    scan.class_count = dec.classes.size();
    const PigeonholeClass* best = nullptr;
    for (const PigeonholeClass& c : dec.classes)
        if (!c.negligible && (!best || c.mass > best->mass)) best = &c;
    if (!best) throw Error("no non-negligible class");
    scan.cls = *best;

    const WavePacketResult wp = wavepacket_coefficients(scan.cls, grid, s);
    scan.lambda_max = wp.lambda_max;
    scan.bound_constant = wp.bound_constant;
    std::map<double, std::vector<Tube>, std::greater<>> by_lambda;
    for (const Tube& T : wp.tubes) by_lambda[T.lambda_class].push_back(T);
    for (auto& [lambda, tubes] : by_lambda) {
        scan.families.push_back(heavy_square_run(std::move(tubes), lambda, s, grid.R(), alpha));
        const auto& f = scan.families.back();
        if (f.split.heavy.size() > scan.families[scan.selected].split.heavy.size())
            scan.selected = scan.families.size() - 1;
    }
    return scan;
}

LineFamily tube_axes(const std::vector<Tube>& tubes, double R) {
    LineFamily fam;
    fam.delta = 1.0 / std::sqrt(R);
    fam.domain = Square{-1.0, -1.0, 2.0};
    for (const Tube& T : tubes) fam.lines.push_back(Line::through(T.center * (1.0 / R), T.direction));
    return fam;
}

RescaledConfiguration rescaled_configuration(const HeavySquareRun& run, const SquareGrid& grid) {
    RescaledConfiguration rc;
    const double R = run.R;
    for (std::size_t id : run.split.heavy) {
        const Square q = grid.square(id);
        rc.points.push_back(Vec2{q.x0 + q.side / 2, q.y0 + q.side / 2} * (1.0 / R));
    }
    std::vector<Tube> axes;
    if (run.heavy_tubes.empty()) axes = run.tubes;
    else
        for (std::size_t t : run.heavy_tubes) axes.push_back(run.tubes[t]);
    rc.lines = tube_axes(axes, R);
    return rc;
}

}  // namespace frostlab
