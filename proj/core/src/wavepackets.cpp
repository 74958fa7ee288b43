#include "frostlab/wavepackets.hpp"

#include <algorithm>
#include <cmath>

#include "frostlab/fourier.hpp"
#include "frostlab/grid_eval.hpp"

namespace frostlab {

namespace {

// psi^ is radial; tabulate it on [0, 4] and interpolate linearly. The
// interpolation error is below 1e-9.
double psi_hat_radial(double rho) {
    constexpr int kCells = 1 << 18;
    constexpr double kMax = 4.0;
    static const std::vector<double> table = [] {
        std::vector<double> t(kCells + 1);
        for (int i = 0; i <= kCells; ++i) t[i] = psi_hat(Vec2{kMax * i / kCells, 0.0});
        return t;
    }();
    if (rho >= kMax) return psi_hat(Vec2{rho, 0.0});
    const double f = rho / kMax * kCells;
    const int i = static_cast<int>(f);
    const double fr = f - i;
    return table[i] + fr * (table[i + 1] - table[i]);
}

int cell_index(double coord, double step) {
    return static_cast<int>(std::ceil(coord / step - 0.5));
}

}  // namespace

double bump(double t) {
    if (std::fabs(t) > 0.5) return 0.0;
    const double c = std::cos(kPi * t);
    return c * c;
}

cplx wave_packet(const Tube& T, double R, Vec2 x) {
    const Vec2 d = x - T.center;
    const Vec2 t{T.direction.y, -T.direction.x};
    const double bu = bump(dot(d, t) / T.width);
    const double bv = bump(dot(d, T.direction) / T.length);
    if (bu == 0.0 || bv == 0.0) return 0.0;
    return std::pow(R, -0.75) * bu * bv * unit_phase(dot(T.frequency, x));
}

std::vector<Tube> tubes_for_theta(const CapGrid& grid, int theta) {
    const double R = grid.R();
    const ThetaCap& cap = grid.thetas().at(theta);
    const Vec2 t = cap.tangent, n = cap.normal;
    const double w = std::sqrt(R), L = R;
    const double U = R * (std::fabs(t.x) + std::fabs(t.y));
    const double V = R * (std::fabs(n.x) + std::fabs(n.y));
    const Square box{-R, -R, 2 * R};
    std::vector<Tube> out;
    for (int iu = cell_index(-U, w) - 1; iu <= cell_index(U, w) + 1; ++iu)
        for (int iv = cell_index(-V, L) - 1; iv <= cell_index(V, L) + 1; ++iv) {
            Tube T;
            T.center = t * (iu * w) + n * (iv * L);
            T.direction = n;
            T.width = w;
            T.length = L;
            T.theta_index = theta;
            T.iu = iu;
            T.iv = iv;
            T.frequency = cap.center;
            if (intersects(T.rect(), box)) out.push_back(T);
        }
    return out;
}

std::pair<int, int> tube_index_of(const CapGrid& grid, int theta, Vec2 x) {
    const ThetaCap& cap = grid.thetas().at(theta);
    return {cell_index(dot(x, cap.tangent), std::sqrt(grid.R())),
            cell_index(dot(x, cap.normal), grid.R())};
}

cplx f_theta(const DiscreteMeasure2D& cap_measure, double s, double R, Vec2 x) {
    return std::pow(R, s - 2.0) * psi_hat_radial(norm(x) / R) * fourier_eval(cap_measure, x);
}

WavePacketResult wavepacket_coefficients(const PigeonholeClass& cls, const CapGrid& grid, double s,
                                         const WavePacketOptions& opt) {
    const double R = grid.R();
    const double w = std::sqrt(R), L = R;
    const int nu = opt.nodes_across, nv = opt.nodes_along;
    const double du = w / nu, dv = L / nv;
    const double scale = std::pow(R, s - 2.0 - 0.75) * du * dv;

    std::vector<double> us(nu), vs(nv), bu(nu), bv(nv);
    for (int a = 0; a < nu; ++a) {
        us[a] = -w / 2 + (a + 0.5) * du;
        bu[a] = bump(us[a] / w);
    }
    for (int b = 0; b < nv; ++b) {
        vs[b] = -L / 2 + (b + 0.5) * dv;
        bv[b] = bump(vs[b] / L);
    }

    WavePacketResult res;
    std::vector<Tube> all;
    for (int theta : cls.active_thetas) {
        const ThetaCap& cap = grid.thetas()[theta];
        const DiscreteMeasure2D cap_measure = cls.class_measure.restricted(
            [&](const Atom2D& a) { return grid.theta_of(a.point.x) == theta; });
        const auto atoms = cap_measure.atoms();
        const std::size_t J = atoms.size();
        std::vector<double> qt(J), qn(J), wj(J);
        std::vector<cplx> Eu(J * nu), Ev(J * nv);
        for (std::size_t j = 0; j < J; ++j) {
            const Vec2 q = atoms[j].point - cap.center;
            qt[j] = dot(q, cap.tangent);
            qn[j] = dot(q, cap.normal);
            wj[j] = atoms[j].weight;
            if (std::fabs(qt[j]) * du > 0.25 || std::fabs(qn[j]) * dv > 0.25) throw Error("undersampled");
            for (int a = 0; a < nu; ++a) Eu[j * nu + a] = unit_phase(qt[j] * us[a]);
            for (int b = 0; b < nv; ++b) Ev[j * nv + b] = unit_phase(qn[j] * vs[b]);
        }

        std::vector<cplx> G(nu * J);
        for (Tube T : tubes_for_theta(grid, theta)) {
            for (std::size_t j = 0; j < J; ++j) {
                const cplx pc = wj[j] * unit_phase(qt[j] * T.iu * w) * unit_phase(qn[j] * T.iv * L);
                for (int a = 0; a < nu; ++a) G[a * J + j] = pc * Eu[j * nu + a];
            }
            cplx sum = 0.0;
            for (int a = 0; a < nu; ++a)
                for (int b = 0; b < nv; ++b) {
                    cplx sab = 0.0;
                    for (std::size_t j = 0; j < J; ++j) sab += G[a * J + j] * Ev[j * nv + b];
                    const Vec2 x = T.center + cap.tangent * us[a] + cap.normal * vs[b];
                    sum += psi_hat_radial(norm(x) / R) * bu[a] * bv[b] * sab;
                }
            T.coefficient = scale * sum;
            all.push_back(T);
        }
    }

    for (const Tube& T : all) res.lambda_max = std::max(res.lambda_max, std::abs(T.coefficient));
    const double floor = std::pow(R, -opt.floor_exponent) * res.lambda_max;
    for (Tube& T : all) {
        const double a = std::abs(T.coefficient);
        if (a == 0.0 || a < floor) {
            ++res.dropped;
            continue;
        }
        T.lambda_class = dyadic_floor(a);
        res.tubes.push_back(T);
    }
    res.bound_constant = cls.M > 0.0 ? res.lambda_max / (cls.M * std::pow(R, -1.25)) : 0.0;
    return res;
}

BoxCount count_tubes_in_box(const std::vector<Tube>& tubes, double lambda, const OrientedRect& box,
                            double M, double s, double R) {
    BoxCount bc;
    const double eps = 1e-9 * R;
    for (const Tube& T : tubes)
        if (T.lambda_class == lambda && box.contains(T.rect(), eps)) ++bc.count;
    const double delta = 2.0 * std::min(box.half_u, box.half_v);
    bc.bound = std::pow(delta / std::sqrt(R), 1.0 - s) * M * std::pow(R, 0.5 * (s - 5.0)) /
               (lambda * lambda);
    bc.ratio = bc.count / bc.bound;
    return bc;
}

double l6_pow6_on_square(const std::vector<Tube>& tubes, const std::vector<cplx>& coefficients,
                         const Square& q, double R, int* nodes_out) {
    if (tubes.size() != coefficients.size()) throw Error("tube/coefficient size mismatch");
    std::vector<const Tube*> near;
    std::vector<cplx> a;
    for (std::size_t t = 0; t < tubes.size(); ++t)
        if (intersects(tubes[t].rect(), q)) {
            near.push_back(&tubes[t]);
            a.push_back(coefficients[t]);
        }
    int nodes = 32;
    if (!near.empty()) {
        double xlo = near[0]->frequency.x, xhi = xlo, ylo = near[0]->frequency.y, yhi = ylo;
        for (const Tube* T : near) {
            xlo = std::min(xlo, T->frequency.x);
            xhi = std::max(xhi, T->frequency.x);
            ylo = std::min(ylo, T->frequency.y);
            yhi = std::max(yhi, T->frequency.y);
        }
        const double spread = std::max(xhi - xlo, yhi - ylo);
        nodes = std::max(nodes, static_cast<int>(std::ceil(q.side * 6.0 * spread)));
    }
    if (nodes_out) *nodes_out = nodes;
    if (near.empty()) return 0.0;
    const double h = q.side / nodes;
    std::vector<double> rows(nodes);
    for (int i = 0; i < nodes; ++i) {
        double row = 0.0;
        for (int k = 0; k < nodes; ++k) {
            const Vec2 x{q.x0 + (i + 0.5) * h, q.y0 + (k + 0.5) * h};
            cplx f = 0.0;
            for (std::size_t t = 0; t < near.size(); ++t) f += a[t] * wave_packet(*near[t], R, x);
            const double v = std::norm(f);
            row += v * v * v;
        }
        rows[i] = row;
    }
    return pairwise_sum(rows) * h * h;
}

BushResult bush_l6(const std::vector<Tube>& bush, const std::vector<cplx>& coefficients,
                   const Square& q, double R, double D, double P) {
    if (bush.size() != coefficients.size()) throw Error("bush/coefficient size mismatch");
    BushResult br;
    double amax = 0.0;
    for (cplx a : coefficients) amax = std::max(amax, std::abs(a));
    br.rhs = std::pow(R, -3.5) * D * D * D * P * P * std::pow(amax, 6);
    br.lhs = l6_pow6_on_square(bush, coefficients, q, R, &br.nodes);
    br.ratio = br.rhs > 0.0 ? br.lhs / br.rhs : 0.0;
    return br;
}

}  // namespace frostlab
