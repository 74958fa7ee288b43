#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "frostlab/caps.hpp"
#include "frostlab/rng.hpp"
#include "frostlab/wavepackets.hpp"
#include "oracles.hpp"

using namespace frostlab;

namespace {

const CurveSpec& parabola() {
    static const CurveSpec c = make_curve(CurveKind::parabola);
    return c;
}

DiscreteMeasure2D cantor(double ratio, int depth) {
    return lift_measure(build_cantor(ratio, depth, 1.0), parabola());
}

// <F_theta, W_T> by a fine midpoint rule written from the definitions.
cplx coefficient_oracle(const std::vector<Atom2D>& atoms, const Tube& T, double s, double R, int nu, int nv) {
    const Vec2 u{T.direction.y, -T.direction.x};
    const double du = T.width / nu, dv = T.length / nv;
    cplx sum = 0.0;
    for (int a = 0; a < nu; ++a)
        for (int b = 0; b < nv; ++b) {
            const double uu = -T.width / 2 + (a + 0.5) * du, vv = -T.length / 2 + (b + 0.5) * dv;
            const Vec2 x = T.center + u * uu + T.direction * vv;
            cplx f = 0.0;
            for (const Atom2D& p : atoms) f += p.weight * oracle::e(p.point.x * x.x + p.point.y * x.y);
            f *= std::pow(R, s - 2) * oracle::bump_hat(norm(x) / R);
            const double cu = std::cos(oracle::pi * uu / T.width), cv = std::cos(oracle::pi * vv / T.length);
            const cplx w = std::pow(R, -0.75) * cu * cu * cv * cv *
                           oracle::e(T.frequency.x * x.x + T.frequency.y * x.y);
            sum += f * std::conj(w);
        }
    return sum * du * dv;
}

std::vector<Atom2D> cap_atoms(const PigeonholeClass& c, const CapGrid& g, int theta) {
    std::vector<Atom2D> out;
    for (const Atom2D& a : c.class_measure.atoms())
        if (g.theta_of(a.point.x) == theta) out.push_back(a);
    return out;
}

}  // namespace

TEST_CASE("cap grids") {
    const CapGrid g256(parabola(), 256);
    CHECK(g256.thetas().size() == 16);
    CHECK(g256.taus().size() == 4);
    for (const TauCap& t : g256.taus()) CHECK(t.theta_count == 4);

    const CapGrid g1024 = build_cap_grid(parabola(), 1024);
    CHECK(g1024.thetas().size() == 32);
    REQUIRE(g1024.taus().size() == 6);
    CHECK(g1024.taus().back().theta_count == 2);
    for (const TauCap& t : g1024.taus()) CHECK(t.theta_count <= std::ceil(std::pow(1024.0, 0.25)) + 1);

    for (const CapGrid* g : {&g256, &g1024}) {
        const auto& th = g->thetas();
        CHECK(th.front().lo == -1.0);
        CHECK(th.back().hi == 1.0);
        for (std::size_t i = 0; i + 1 < th.size(); ++i) CHECK(th[i].hi == th[i + 1].lo);
        std::vector<int> owner(th.size(), -1);
        for (const TauCap& t : g->taus())
            for (int k = t.first_theta; k < t.first_theta + t.theta_count; ++k) {
                CHECK(owner[k] == -1);
                owner[k] = t.index;
                CHECK(th[k].tau == t.index);
            }
        CHECK(std::count(owner.begin(), owner.end(), -1) == 0);
        for (const ThetaCap& c : th) {
            const double m = 0.5 * (c.lo + c.hi);
            CHECK(c.center.x == doctest::Approx(m));
            CHECK(c.center.y == doctest::Approx(m * m));
        }
    }
    CHECK_THROWS_AS(CapGrid(parabola(), 32), Error);

    const DiscreteMeasure2D mu = cantor(1.0 / 3.0, 8);
    for (const Atom2D& a : mu.atoms()) {
        const int t = g1024.theta_of(a.point.x);
        const ThetaCap& c = g1024.thetas()[t];
        CHECK((a.point.x >= c.lo && (a.point.x < c.hi || (t == 31 && a.point.x <= 1.0))));
    }
}

TEST_CASE("pigeonhole decomposition: uniform mass is one class") {
    const CapGrid g(parabola(), 256);
    std::vector<Atom2D> atoms;
    for (const ThetaCap& c : g.thetas()) atoms.push_back({c.center, 1.0 / 16});
    const Decomposition dec = pigeonhole_decompose(DiscreteMeasure2D(atoms, 1e-3), 0.5, g);
    REQUIRE(dec.classes.size() == 1);
    CHECK(dec.classes[0].D == 16);
    CHECK(dec.classes[0].P == 4);
    CHECK(dec.classes[0].active_thetas.size() == 16);
}

TEST_CASE("pigeonhole decomposition on Cantor(1/3, 10) at R = 1024") {
    const DiscreteMeasure2D mu = cantor(1.0 / 3.0, 10);
    const double s = cantor_dimension(1.0 / 3.0), R = 1024;
    const CapGrid g(parabola(), R);
    const Decomposition dec = pigeonhole_decompose(mu, s, g);
    CHECK(dec.outside_atoms == 0);

    double nonempty = 0.0, classes_total = 0.0;
    for (double m : dec.theta_mass) nonempty += m;
    std::set<int> seen;
    std::size_t relevant = 0;
    for (const PigeonholeClass& c : dec.classes) {
        relevant += !c.negligible;
        double cm = 0.0;
        for (const Atom2D& a : c.class_measure.atoms()) cm += a.weight;
        classes_total += cm;
        CHECK(cm == doctest::Approx(c.mass).epsilon(1e-12));
        // (P1)
        for (int t : c.active_thetas) {
            CHECK(seen.insert(t).second);
            const double level = dec.theta_mass[t] * std::pow(R, s);
            CHECK(level >= c.M);
            CHECK(level < 2 * c.M);
        }
        // (P2)
        std::map<int, int> per_tau;
        for (int t : c.active_thetas) ++per_tau[g.thetas()[t].tau];
        for (const auto& [tau, k] : per_tau) {
            CHECK(k >= c.P);
            CHECK(k < 2 * c.P);
        }
        // (P3)
        CHECK(c.active_thetas.size() >= c.D);
        CHECK(c.active_thetas.size() < 2 * c.D);
        CHECK(c.c5 <= 16);
        CHECK(c.c6 <= 16);
        CHECK(c.c7 <= 16);
    }
    std::size_t nonempty_caps = 0;
    for (double m : dec.theta_mass) nonempty_caps += m > 0.0;
    CHECK(seen.size() == nonempty_caps);
    CHECK(std::fabs(classes_total - nonempty) <= 1e-12);
    CHECK(relevant <= 8 * std::pow(std::log2(R), 3));
}

TEST_CASE("atoms off the curve neighborhood are left out") {
    const CapGrid g(parabola(), 256);
    const DiscreteMeasure2D mu({{{0.1, 0.01}, 0.5}, {{0.3, 0.5}, 0.25}}, 1e-3);
    const Decomposition dec = pigeonhole_decompose(mu, 0.5, g);
    CHECK(dec.outside_atoms == 1);
    CHECK(dec.outside_mass == 0.25);
    CHECK(dec.total_mass == 0.5);
}

TEST_CASE("tubes tile the square once per cap") {
    const CapGrid g(parabola(), 256);
    Rng rng(4);
    for (int theta : {0, 5, 15}) {
        const std::vector<Tube> tubes = tubes_for_theta(g, theta);
        for (int k = 0; k < 300; ++k) {
            const Vec2 x{rng.uniform(-256, 256), rng.uniform(-256, 256)};
            int hits = 0;
            const auto [iu, iv] = tube_index_of(g, theta, x);
            for (const Tube& T : tubes)
                if (T.rect().contains(x)) {
                    ++hits;
                    CHECK(T.iu == iu);
                    CHECK(T.iv == iv);
                }
            CHECK(hits == 1);
        }
        for (const Tube& T : tubes) {
            CHECK(T.width == 16.0);
            CHECK(T.length == 256.0);
            CHECK(dot(T.direction, g.thetas()[theta].tangent) == doctest::Approx(0.0));
        }
    }
    // Boundary ties go to the lower index.
    const ThetaCap& c = g.thetas()[3];
    const Vec2 edge = c.tangent * 8.0;
    CHECK(tube_index_of(g, 3, edge).first == 0);
}

TEST_CASE("wave packet coefficients against a fine quadrature") {
    const DiscreteMeasure2D mu = cantor(1.0 / 3.0, 8);
    const double s = cantor_dimension(1.0 / 3.0), R = 256;
    const CapGrid g(parabola(), R);
    const Decomposition dec = pigeonhole_decompose(mu, s, g);
    Rng rng(8);
    for (const PigeonholeClass& c : dec.classes) {
        const WavePacketResult wp = wavepacket_coefficients(c, g, s);
        CHECK(wp.bound_constant <= 16.0);
        for (const Tube& T : wp.tubes) {
            CHECK(std::abs(T.coefficient) <= 16.0 * c.M * std::pow(R, -1.25));
            CHECK(std::abs(T.coefficient) >= T.lambda_class);
            CHECK(std::abs(T.coefficient) < 2 * T.lambda_class);
        }
        for (int k = 0; k < 6; ++k) {
            const Tube& T = wp.tubes[rng.below(wp.tubes.size())];
            const cplx want = coefficient_oracle(cap_atoms(c, g, T.theta_index), T, s, R, 64, 128);
            CHECK(std::abs(T.coefficient - want) <= 1e-3 * wp.lambda_max);
        }
    }
}

TEST_CASE("Bessel inequality for the wave packet coefficients") {
    const DiscreteMeasure2D mu = cantor(1.0 / 3.0, 8);
    const double s = cantor_dimension(1.0 / 3.0), R = 256;
    const CapGrid g(parabola(), R);
    const Decomposition dec = pigeonhole_decompose(mu, s, g);
    const PigeonholeClass& c = dec.classes.front();
    WavePacketOptions opt;
    opt.floor_exponent = 1000;
    const WavePacketResult wp = wavepacket_coefficients(c, g, s, opt);
    for (int theta : {c.active_thetas.front(), c.active_thetas.back()}) {
        double lhs = 0.0;
        for (const Tube& T : wp.tubes)
            if (T.theta_index == theta) lhs += std::norm(T.coefficient);
        // ||F_theta||_2^2 on [-2R, 2R]^2, which holds every tube.
        const std::vector<Atom2D> atoms = cap_atoms(c, g, theta);
        const double h = std::sqrt(R) / 8;
        const int n = static_cast<int>(4 * R / h);
        double norm2 = 0.0;
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const Vec2 x{-2 * R + (i + 0.5) * h, -2 * R + (k + 0.5) * h};
                cplx f = 0.0;
                for (const Atom2D& a : atoms) f += a.weight * oracle::e(dot(a.point, x));
                norm2 += std::norm(f * std::pow(R, s - 2) * oracle::bump_hat(norm(x) / R));
            }
        norm2 *= h * h;
        CHECK(lhs > 0.0);
        CHECK(lhs <= norm2 * 1.01);
    }
}

TEST_CASE("a single atom class peaks on the tube through the origin") {
    const double R = 256, s = 0.5;
    const CapGrid g(parabola(), R);
    const DiscreteMeasure2D mu({{parabola().point(g.thetas()[5].center.x + 0.01), 1.0}}, 1e-3);
    const Decomposition dec = pigeonhole_decompose(mu, s, g);
    REQUIRE(dec.classes.size() == 1);
    const WavePacketResult wp = wavepacket_coefficients(dec.classes[0], g, s);
    const auto top = std::max_element(wp.tubes.begin(), wp.tubes.end(), [](const Tube& a, const Tube& b) {
        return std::abs(a.coefficient) < std::abs(b.coefficient);
    });
    CHECK(top->rect().contains(Vec2{0.0, 0.0}));
    std::map<int, double> row;
    for (const Tube& T : wp.tubes)
        if (T.iv == 0) row[std::abs(T.iu)] = std::max(row[std::abs(T.iu)], std::abs(T.coefficient));
    for (auto it = std::next(row.begin()); it != row.end(); ++it)
        CHECK(it->second <= std::prev(it)->second * (1 + 1e-9));
}

TEST_CASE("tube box counts") {
    const DiscreteMeasure2D mu = cantor(1.0 / 3.0, 8);
    const double s = cantor_dimension(1.0 / 3.0), R = 256;
    const CapGrid g(parabola(), R);
    const Decomposition dec = pigeonhole_decompose(mu, s, g);
    const PigeonholeClass& c = dec.classes.back();
    const WavePacketResult wp = wavepacket_coefficients(c, g, s);

    SUBCASE("an empty box") {
        const OrientedRect far{{1e6, 1e6}, {1, 0}, 8, 128};
        CHECK(count_tubes_in_box(wp.tubes, wp.tubes[0].lambda_class, far, c.M, s, R).count == 0);
    }
    SUBCASE("full squares against the union count") {
        std::map<double, std::size_t> per_lambda;
        for (const Tube& T : wp.tubes) ++per_lambda[T.lambda_class];
        for (const auto& [lambda, total] : per_lambda) {
            std::size_t counted = 0;
            for (int theta : c.active_thetas) {
                const ThetaCap& cap = g.thetas()[theta];
                const OrientedRect box{{0, 0}, cap.tangent, 2 * R, 2 * R};
                std::vector<Tube> mine;
                for (const Tube& T : wp.tubes)
                    if (T.theta_index == theta) mine.push_back(T);
                counted += count_tubes_in_box(mine, lambda, box, c.M, s, R).count;
            }
            CHECK(counted == total);
            CHECK(static_cast<double>(total) <= 16 * c.M * c.D / (lambda * lambda * R * R));
        }
    }
    SUBCASE("20 random sqrt(R)-wide boxes") {
        Rng rng(12);
        for (int k = 0; k < 20; ++k) {
            const Tube& T = wp.tubes[rng.below(wp.tubes.size())];
            const OrientedRect box{T.center, T.rect().u, std::sqrt(R) / 2, R / 2};
            const BoxCount bc = count_tubes_in_box(wp.tubes, T.lambda_class, box, c.M, s, R);
            CHECK(bc.count == 1);
            CHECK(bc.ratio <= 16.0);
        }
    }
}

TEST_CASE("bush sixth powers") {
    const double R = 256;
    const CapGrid g(parabola(), R);
    std::vector<Tube> all = tubes_for_theta(g, 7);
    const auto it = std::find_if(all.begin(), all.end(), [](const Tube& T) { return T.iu == 0 && T.iv == 0; });
    REQUIRE(it != all.end());
    const Square q{-8, -8, 16};

    SUBCASE("one tube") {
        const BushResult b = bush_l6({*it}, {1.0}, q, R, 1, 1);
        // |W_T|^6 = R^-4.5 b^6 b^6; the v bump is ~1 over q.
        CHECK(b.lhs > 0.0);
        CHECK(b.lhs <= std::pow(R, -4.5) * 256.0);
        CHECK(std::isfinite(b.ratio));
    }
    SUBCASE("homogeneity") {
        std::vector<Tube> bush;
        for (int theta = 0; theta < 16; ++theta)
            for (const Tube& T : tubes_for_theta(g, theta))
                if (intersects(T.rect(), q)) {
                    bush.push_back(T);
                    break;
                }
        const std::vector<cplx> a(bush.size(), 1.0), b(bush.size(), cplx(0.0, 2.0));
        const BushResult r1 = bush_l6(bush, a, q, R, 16, 4), r2 = bush_l6(bush, b, q, R, 16, 4);
        CHECK(r2.lhs == doctest::Approx(64.0 * r1.lhs).epsilon(1e-12));
        CHECK(r2.ratio == doctest::Approx(r1.ratio).epsilon(1e-12));
    }
}

TEST_CASE("full bush on a uniform class is stable across scales") {
    std::vector<double> ratios;
    // Scales where every tau holds the same number of caps, so the uniform
    // measure is a single class.
    for (double R : {256.0, 4096.0}) {
        const CapGrid g(parabola(), R);
        std::vector<Atom2D> atoms;
        const double w = 1.0 / g.thetas().size();
        for (const ThetaCap& c : g.thetas()) atoms.push_back({c.center, w});
        const double s = 0.5;
        const Decomposition dec = pigeonhole_decompose(DiscreteMeasure2D(atoms, 1.0 / R), s, g);
        REQUIRE(dec.classes.size() == 1);
        const PigeonholeClass& c = dec.classes[0];
        const WavePacketResult wp = wavepacket_coefficients(c, g, s);
        const double side = std::sqrt(R);
        const Square q{-side / 2, -side / 2, side};
        // One tube per cap: the one containing the square's center.
        std::vector<Tube> bush;
        std::vector<cplx> coef;
        for (const Tube& T : wp.tubes)
            if (T.rect().contains(Vec2{0.0, 0.0})) {
                bush.push_back(T);
                coef.push_back(T.coefficient);
            }
        CHECK(bush.size() == g.thetas().size());
        const BushResult b = bush_l6(bush, coef, q, R, c.D, c.P);
        ratios.push_back(b.ratio);
    }
    CHECK(ratios[1] / ratios[0] <= 4.0);
    CHECK(ratios[0] / ratios[1] <= 4.0);
}
