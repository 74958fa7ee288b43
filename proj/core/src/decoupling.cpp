#include "frostlab/decoupling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>

#include "frostlab/grid_eval.hpp"
#include "frostlab/rng.hpp"

namespace frostlab {

CapFunction::CapFunction(const CapGrid& grid, std::vector<std::vector<PhaseAtom>> per_cap,
                         Unchecked)
    : grid_(grid), per_cap_(std::move(per_cap)) {
    if (per_cap_.size() != grid_.thetas().size()) throw Error("one atom list per cap");
}

CapFunction::CapFunction(const CapGrid& grid, std::vector<std::vector<PhaseAtom>> per_cap)
    : CapFunction(grid, std::move(per_cap), Unchecked{}) {
    const double tol = 2.0 / grid_.R();
    for (std::size_t t = 0; t < per_cap_.size(); ++t) {
        const ThetaCap& cap = grid_.thetas()[t];
        for (const PhaseAtom& a : per_cap_[t]) {
            const double x = a.frequency.x;
            if (x < cap.lo - tol || x > cap.hi + tol ||
                std::fabs(a.frequency.y - grid_.curve().gamma(x)) > 1.0 / grid_.R() + tol)
                throw Error("frequency outside its cap");
        }
    }
}

CapFunction CapFunction::unit(const CapGrid& grid) {
    std::vector<std::vector<PhaseAtom>> per_cap;
    for (const ThetaCap& c : grid.thetas()) per_cap.push_back({{c.center, cplx(1.0)}});
    return CapFunction(grid, std::move(per_cap));
}

CapFunction CapFunction::random_signs(const CapGrid& grid, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<PhaseAtom>> per_cap;
    for (const ThetaCap& c : grid.thetas())
        per_cap.push_back({{c.center, cplx(rng.below(2) ? 1.0 : -1.0)}});
    return CapFunction(grid, std::move(per_cap));
}

CapFunction CapFunction::from_measure(const CapGrid& grid, const DiscreteMeasure2D& mu) {
    std::vector<std::vector<PhaseAtom>> per_cap(grid.thetas().size());
    for (const Atom2D& a : mu.atoms())
        if (a.weight > 0.0) per_cap[grid.theta_of(a.point.x)].push_back({a.point, cplx(a.weight)});
    return CapFunction(grid, std::move(per_cap));
}

std::size_t CapFunction::occupied_caps() const {
    return static_cast<std::size_t>(std::count_if(per_cap_.begin(), per_cap_.end(),
                                                  [](const auto& v) { return !v.empty(); }));
}

CapFunction CapFunction::scaled(cplx c) const {
    auto per_cap = per_cap_;
    for (auto& v : per_cap)
        for (PhaseAtom& a : v) a.coefficient *= c;
    return CapFunction(grid_, std::move(per_cap), Unchecked{});
}

CapFunction CapFunction::modulated(Vec2 xi) const {
    auto per_cap = per_cap_;
    for (auto& v : per_cap)
        for (PhaseAtom& a : v) a.frequency = a.frequency + xi;
    return CapFunction(grid_, std::move(per_cap), Unchecked{});
}

std::string to_string(Domain::Kind k) {
    switch (k) {
        case Domain::Kind::ball: return "ball";
        case Domain::Kind::period_cell: return "period_cell";
        case Domain::Kind::box: return "box";
    }
    return "?";
}

std::string to_string(Ensemble e) {
    switch (e) {
        case Ensemble::unit: return "unit";
        case Ensemble::random_signs: return "random_signs";
        case Ensemble::measure: return "measure";
    }
    return "?";
}

std::optional<double> rational_period(std::span<const double> freqs, double max_period) {
    if (freqs.empty()) return 1.0;
    std::uint64_t L = 1;
    for (double f : freqs) {
        const double d = f - freqs[0];
        const double tol = 1e-10 * std::max(1.0, std::fabs(d));
        // Continued fraction convergents p/q of |d|.
        double x = std::fabs(d);
        std::uint64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
        std::uint64_t q = 0;
        for (int it = 0; it < 64; ++it) {
            const double a = std::floor(x);
            if (a > 1e12) break;
            const auto ai = static_cast<std::uint64_t>(a);
            const std::uint64_t p2 = ai * p1 + p0, q2 = ai * q1 + q0;
            if (static_cast<double>(q2) > max_period) break;
            if (std::fabs(static_cast<double>(p2) / static_cast<double>(q2) - std::fabs(d)) <= tol) {
                q = q2;
                break;
            }
            p0 = p1;
            q0 = q1;
            p1 = p2;
            q1 = q2;
            const double frac = x - a;
            if (frac <= 0.0) break;
            x = 1.0 / frac;
        }
        if (q == 0) return std::nullopt;
        L = std::lcm(L, q);
        if (static_cast<double>(L) > max_period) return std::nullopt;
    }
    return static_cast<double>(L);
}

namespace {

struct Quadrature {
    UniformAxis xs, ys;
    std::vector<std::pair<std::size_t, std::size_t>> ranges;  // empty: full grid
    double cell = 0.0;                                         // area per node
    std::size_t points = 0;
    double cell_x = 0.0, cell_y = 0.0;
};

Quadrature make_quadrature(const std::vector<PhaseAtom>& atoms, double R, const Domain& domain) {
    double xlo = 0, xhi = 0, ylo = 0, yhi = 0;
    if (!atoms.empty()) {
        xlo = xhi = atoms[0].frequency.x;
        ylo = yhi = atoms[0].frequency.y;
    }
    for (const PhaseAtom& a : atoms) {
        xlo = std::min(xlo, a.frequency.x);
        xhi = std::max(xhi, a.frequency.x);
        ylo = std::min(ylo, a.frequency.y);
        yhi = std::max(yhi, a.frequency.y);
    }
    const double wx = xhi - xlo, wy = yhi - ylo;
    Quadrature q;
    constexpr double kMaxPoints = 4e9;

    if (domain.kind == Domain::Kind::period_cell) {
        std::vector<double> fx, fy;
        for (const PhaseAtom& a : atoms) {
            fx.push_back(a.frequency.x);
            fy.push_back(a.frequency.y);
        }
        const auto Lx = wx > 0 ? rational_period(fx) : std::optional<double>(1.0);
        const auto Ly = wy > 0 ? rational_period(fy) : std::optional<double>(1.0);
        if (!Lx || !Ly) throw Error("no rational period");
        // |F|^6 has integer frequencies (in units of 1/L) of modulus at most
        // 3 W L, so n > 3 W L nodes make the Riemann sum exact.
        const auto nx = static_cast<std::size_t>(std::floor(3.0 * wx * *Lx)) + 1;
        const auto ny = static_cast<std::size_t>(std::floor(3.0 * wy * *Ly)) + 1;
        if (static_cast<double>(nx) * static_cast<double>(ny) > kMaxPoints)
            throw Error("period cell too large");
        q.xs = {0.0, *Lx / nx, nx};
        q.ys = {0.0, *Ly / ny, ny};
        q.cell = q.xs.step * q.ys.step;
        q.points = nx * ny;
        q.cell_x = *Lx;
        q.cell_y = *Ly;
        return q;
    }

    const double extent = domain.kind == Domain::Kind::ball ? R : domain.box_factor * R;
    const double hx = wx > 0 ? std::min(1.0 / (6.0 * wx), R / 64.0) : R / 64.0;
    const double hy = wy > 0 ? std::min(1.0 / (6.0 * wy), R / 64.0) : R / 64.0;
    const auto kx = static_cast<std::size_t>(std::floor(extent / hx));
    const auto ky = static_cast<std::size_t>(std::floor(extent / hy));
    q.xs = {-static_cast<double>(kx) * hx, hx, 2 * kx + 1};
    q.ys = {-static_cast<double>(ky) * hy, hy, 2 * ky + 1};
    if (static_cast<double>(q.xs.count) * static_cast<double>(q.ys.count) > kMaxPoints)
        throw Error("grid too large");
    q.cell = hx * hy;
    if (domain.kind == Domain::Kind::box) {
        q.points = q.xs.count * q.ys.count;
        return q;
    }
    q.ranges.resize(q.xs.count);
    for (std::size_t i = 0; i < q.xs.count; ++i) {
        const double x = q.xs.at(i);
        const double rem = R * R - x * x;
        if (rem < 0.0) continue;
        auto k = static_cast<std::ptrdiff_t>(std::floor(std::sqrt(rem) / hy));
        while (static_cast<double>(k + 1) * hy * (static_cast<double>(k + 1) * hy) <= rem) ++k;
        while (k >= 0 && static_cast<double>(k) * hy * (static_cast<double>(k) * hy) > rem) --k;
        k = std::min<std::ptrdiff_t>(k, static_cast<std::ptrdiff_t>(ky));
        if (k < 0) continue;
        q.ranges[i] = {ky - static_cast<std::size_t>(k), ky + static_cast<std::size_t>(k) + 1};
        q.points += 2 * static_cast<std::size_t>(k) + 1;
    }
    return q;
}

double pow6_integral(const std::vector<PhaseAtom>& atoms, const Quadrature& q) {
    if (atoms.empty()) return 0.0;
    if (atoms.size() == 1) {
        const double a = std::abs(atoms[0].coefficient);
        return std::pow(a, 6) * static_cast<double>(q.points) * q.cell;
    }
    std::vector<Vec2> freqs;
    std::vector<cplx> coeffs;
    for (const PhaseAtom& a : atoms) {
        freqs.push_back(a.frequency);
        coeffs.push_back(a.coefficient);
    }
    const TensorGridEvaluator ev(freqs, coeffs);
    return sum_abs_pow(ev, q.xs, q.ys, 6.0, q.ranges) * q.cell;
}

}  // namespace

RatioResult decoupling_ratio(const CapFunction& f, const Domain& domain) {
    std::vector<PhaseAtom> all;
    for (const auto& v : f.per_cap()) all.insert(all.end(), v.begin(), v.end());
    const Quadrature q = make_quadrature(all, f.grid().R(), domain);

    RatioResult r;
    r.grid_points = q.points;
    r.cell_x = q.cell_x;
    r.cell_y = q.cell_y;
    double rhs2 = 0.0;
    double single = 0.0;
    for (const auto& v : f.per_cap()) {
        if (v.empty()) continue;
        ++r.caps;
        single = pow6_integral(v, q);
        const double n = std::pow(single, 1.0 / 6.0);
        rhs2 += n * n;
    }
    r.rhs = std::sqrt(rhs2);
    // With one occupied cap F is that cap's function; reuse its integral.
    const double lhs6 = r.caps == 1 ? single : pow6_integral(all, q);
    r.lhs = std::pow(lhs6, 1.0 / 6.0);
    r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : 0.0;
    return r;
}

DecouplingReport decoupling_scan(const CurveSpec& curve, const std::vector<double>& R_list,
                                 Ensemble ensemble, const Domain& domain, std::uint64_t seed,
                                 const DiscreteMeasure2D* measure) {
    DecouplingReport rep;
    rep.side = domain.kind == Domain::Kind::ball ? "local" : "global";
    rep.curve = curve.kind() == CurveKind::flat_unchecked ? "flat" : "curved";
    rep.ensemble = ensemble;
    std::vector<double> xs, caps, ys;
    for (double R : R_list) {
        const CapGrid grid(curve, R);
        CapFunction f = ensemble == Ensemble::unit ? CapFunction::unit(grid)
                        : ensemble == Ensemble::random_signs
                            ? CapFunction::random_signs(grid, seed)
                            : (measure ? CapFunction::from_measure(grid, *measure)
                                       : throw Error("measure ensemble needs a measure"));
        DecouplingRow row{R, decoupling_ratio(f, domain)};
        xs.push_back(R);
        caps.push_back(static_cast<double>(row.result.caps));
        ys.push_back(row.result.ratio);
        rep.rows.push_back(row);
    }
    rep.fit_vs_R = fit_power_law(xs, ys);
    rep.fit_vs_caps = fit_power_law(caps, ys);
    rep.fitted_epsilon = rep.fit_vs_R.exponent;
    return rep;
}

double dirichlet_l6_pow6(int N) {
    if (N < 1) throw Error("N must be positive");
    const int M = 6 * N + 1;
    std::vector<double> vals(M);
    for (int i = 0; i < M; ++i) {
        const double x = static_cast<double>(i) / M;
        cplx s = 0.0;
        for (int n = 1; n <= N; ++n) s += unit_phase(n * x);
        const double v = std::norm(s);
        vals[i] = v * v * v;
    }
    return pairwise_sum(vals) / M;
}

RefinedResult refined_decoupling_ratio(const std::vector<Tube>& tubes,
                                       const std::vector<cplx>& coefficients,
                                       const std::vector<Square>& squares, double R,
                                       std::optional<double> N) {
    if (tubes.size() != coefficients.size()) throw Error("tube/coefficient size mismatch");
    RefinedResult r;
    // int |b(u / w) b(v / L)|^6 = w L (924 / 4096)^2, scaled by R^(-9/2).
    constexpr double kB6 = 924.0 / 4096.0;
    std::map<int, double> per_theta;
    for (std::size_t t = 0; t < tubes.size(); ++t)
        per_theta[tubes[t].theta_index] += std::pow(std::abs(coefficients[t]), 6) * std::pow(R, -4.5) *
                                           tubes[t].width * tubes[t].length * kB6 * kB6;
    double core6 = 0.0;
    for (const auto& [theta, v] : per_theta) core6 += v;
    r.rhs_core = std::pow(core6, 1.0 / 6.0);

    double lhs6 = 0.0;
    std::size_t max_count = 0;
    for (const Square& q : squares) {
        std::size_t c = 0;
        for (const Tube& T : tubes) c += intersects(T.rect(), q);
        max_count = std::max(max_count, c);
        lhs6 += l6_pow6_on_square(tubes, coefficients, q, R);
    }
    r.lhs = std::pow(lhs6, 1.0 / 6.0);
    r.N = N ? *N : static_cast<double>(max_count);
    r.ratio = r.N > 0.0 && r.rhs_core > 0.0 ? r.lhs / (std::cbrt(r.N) * r.rhs_core) : 0.0;
    return r;
}

namespace {

struct TripleSums {
    std::vector<double> sum, logsum;
    std::vector<std::uint64_t> mult;
};

TripleSums triple_multisets(const std::vector<double>& a, const std::vector<double>& la) {
    TripleSums t;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            for (std::size_t k = j; k < n; ++k) {
                const int distinct = 1 + (j != i) + (k != j);
                t.sum.push_back((a[i] + a[j]) + a[k]);
                t.logsum.push_back((la[i] + la[j]) + la[k]);
                t.mult.push_back(distinct == 3 ? 6 : distinct == 2 ? 3 : 1);
            }
    return t;
}

}  // namespace

SumProductResult sumproduct_experiment(const std::vector<double>& A_in, double delta,
                                       SumProductMethod method) {
    if (!(delta > 0.0)) throw Error("delta must be positive");
    std::vector<double> a = A_in;
    std::sort(a.begin(), a.end());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!(a[i] >= 1.0 && a[i] <= 2.0)) throw Error("set must lie in [1, 2]");
        if (i > 0 && a[i] - a[i - 1] < delta * (1.0 - 1e-12)) throw Error("set not delta-separated");
    }
    const std::size_t n = a.size();
    if (n > (method == SumProductMethod::brute_force ? 40u : 300u)) throw Error("set too large");
    std::vector<double> la(n);
    for (std::size_t i = 0; i < n; ++i) la[i] = std::log(a[i]);

    unsigned __int128 total = 0;
    if (method == SumProductMethod::brute_force) {
        // Ordered triples with operands summed in ascending order.
        std::vector<double> s, l;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    std::array<std::size_t, 3> idx{i, j, k};
                    std::sort(idx.begin(), idx.end());
                    s.push_back((a[idx[0]] + a[idx[1]]) + a[idx[2]]);
                    l.push_back((la[idx[0]] + la[idx[1]]) + la[idx[2]]);
                }
        for (std::size_t x = 0; x < s.size(); ++x) {
            std::uint64_t c = 0;
            for (std::size_t y = 0; y < s.size(); ++y)
                c += std::fabs(s[x] - s[y]) <= delta && std::fabs(l[x] - l[y]) <= delta;
            total += c;
        }
    } else {
        const TripleSums t = triple_multisets(a, la);
        auto cell = [delta](double v) { return static_cast<std::int64_t>(std::floor(v / delta)); };
        std::unordered_map<std::int64_t, std::unordered_map<std::int64_t, std::vector<std::uint32_t>>>
            grid;
        for (std::size_t i = 0; i < t.sum.size(); ++i)
            grid[cell(t.sum[i])][cell(t.logsum[i])].push_back(static_cast<std::uint32_t>(i));
        for (std::size_t i = 0; i < t.sum.size(); ++i) {
            const std::int64_t cx = cell(t.sum[i]), cy = cell(t.logsum[i]);
            std::uint64_t c = 0;
            // Two neighbor cells each way cover rounding in the cell index.
            for (std::int64_t dx = -2; dx <= 2; ++dx) {
                const auto col = grid.find(cx + dx);
                if (col == grid.end()) continue;
                for (std::int64_t dy = -2; dy <= 2; ++dy) {
                    const auto bucket = col->second.find(cy + dy);
                    if (bucket == col->second.end()) continue;
                    for (std::uint32_t j : bucket->second)
                        if (std::fabs(t.sum[i] - t.sum[j]) <= delta &&
                            std::fabs(t.logsum[i] - t.logsum[j]) <= delta)
                            c += t.mult[j];
                }
            }
            total += static_cast<unsigned __int128>(c) * t.mult[i];
        }
    }
    SumProductResult r;
    r.method = method;
    if (total > std::numeric_limits<std::uint64_t>::max()) throw Error("count overflow");
    r.count = static_cast<std::uint64_t>(total);
    r.normalized = n ? static_cast<double>(r.count) / std::pow(static_cast<double>(n), 3) : 0.0;
    return r;
}

}  // namespace frostlab
