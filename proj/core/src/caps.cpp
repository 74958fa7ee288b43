#include "frostlab/caps.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace frostlab {

CapGrid::CapGrid(const CurveSpec& curve, double R) : curve_(curve), R_(R) {
    if (!(R >= 64.0)) throw Error("R must be at least 64");
    const int n_theta = static_cast<int>(std::lround(std::sqrt(R)));
    const int n_tau = static_cast<int>(std::ceil(std::pow(R, 0.25) - 1e-9));
    const int per_tau = (n_theta + n_tau - 1) / n_tau;
    const double len = 2.0 / n_theta;
    for (int i = 0; i < n_theta; ++i) {
        ThetaCap c;
        c.index = i;
        c.lo = -1.0 + i * len;
        c.hi = i + 1 == n_theta ? 1.0 : -1.0 + (i + 1) * len;
        const double m = 0.5 * (c.lo + c.hi);
        c.center = curve.point(m);
        c.tangent = curve.tangent(m);
        c.normal = curve.normal(m);
        c.tau = i / per_tau;
        thetas_.push_back(c);
    }
    for (int t = 0; t * per_tau < n_theta; ++t) {
        TauCap c;
        c.index = t;
        c.first_theta = t * per_tau;
        c.theta_count = std::min(per_tau, n_theta - c.first_theta);
        c.lo = thetas_[c.first_theta].lo;
        c.hi = thetas_[c.first_theta + c.theta_count - 1].hi;
        taus_.push_back(c);
    }
}

int CapGrid::theta_of(double x) const {
    const int n = static_cast<int>(thetas_.size());
    const int i = static_cast<int>(std::floor((x + 1.0) * n / 2.0));
    return std::clamp(i, 0, n - 1);
}

CapGrid build_cap_grid(const CurveSpec& curve, double R) { return CapGrid(curve, R); }

Decomposition pigeonhole_decompose(const DiscreteMeasure2D& mu, double s, const CapGrid& grid) {
    const double R = grid.R();
    const CurveSpec& curve = grid.curve();
    const std::size_t n_theta = grid.thetas().size();

    Decomposition dec;
    dec.theta_mass.assign(n_theta, 0.0);
    std::vector<std::vector<Atom2D>> theta_atoms(n_theta);
    for (const Atom2D& a : mu.atoms()) {
        if (std::fabs(a.point.y - curve.gamma(a.point.x)) > 1.0 / R || std::fabs(a.point.x) > 1.0) {
            dec.outside_mass += a.weight;
            ++dec.outside_atoms;
            continue;
        }
        dec.total_mass += a.weight;
        theta_atoms[grid.theta_of(a.point.x)].push_back(a);
    }
    for (std::size_t t = 0; t < n_theta; ++t) {
        double m = 0.0;
        for (const Atom2D& a : theta_atoms[t]) m += a.weight;
        dec.theta_mass[t] = m;
    }

    const double Rs = std::pow(R, s);
    // M level -> thetas at that level
    std::map<double, std::vector<int>> by_level;
    for (std::size_t t = 0; t < n_theta; ++t)
        if (dec.theta_mass[t] > 0.0)
            by_level[dyadic_floor(dec.theta_mass[t] * Rs)].push_back(static_cast<int>(t));

    for (const auto& [M, thetas] : by_level) {
        std::map<int, std::vector<int>> per_tau;
        for (int t : thetas) per_tau[grid.thetas()[t].tau].push_back(t);
        std::map<double, std::vector<int>> taus_by_P;
        for (const auto& [tau, members] : per_tau)
            taus_by_P[dyadic_floor(static_cast<double>(members.size()))].push_back(tau);

        for (const auto& [P, taus] : taus_by_P) {
            PigeonholeClass c;
            c.M = M;
            c.P = P;
            c.active_taus = taus;
            std::vector<Atom2D> atoms;
            for (int tau : taus)
                for (int t : per_tau[tau]) {
                    c.active_thetas.push_back(t);
                    atoms.insert(atoms.end(), theta_atoms[t].begin(), theta_atoms[t].end());
                }
            std::sort(c.active_thetas.begin(), c.active_thetas.end());
            c.D = dyadic_floor(static_cast<double>(c.active_thetas.size()));
            c.class_measure = DiscreteMeasure2D(std::move(atoms), mu.resolution());
            for (int t : c.active_thetas) c.mass += dec.theta_mass[t];
            c.negligible = std::log(M) < -100.0 * std::log(R);
            c.c5 = M / std::pow(R, s / 2);
            c.c6 = c.D * M / Rs;
            c.c7 = M * P / std::pow(R, 0.75 * s);
            dec.classes.push_back(std::move(c));
        }
    }
    return dec;
}

}  // namespace frostlab
