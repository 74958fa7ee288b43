#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "frostlab/energy.hpp"
#include "frostlab/rng.hpp"
#include "oracles.hpp"

using namespace frostlab;

namespace {

std::vector<double> ap(int n, double step) {
    std::vector<double> p;
    for (int i = 0; i < n; ++i) p.push_back(std::min(1.0, -1.0 + i * step));
    return p;
}

// n points of [-1, 1] at mutual distance >= delta: a jittered random subset
// of a lattice slightly coarser than delta.
std::vector<double> random_separated(Rng& rng, std::size_t n, double delta) {
    const double step = 1.001 * delta;
    const auto slots = static_cast<std::size_t>(std::floor(2.0 / step));
    std::vector<double> p;
    std::vector<bool> used(slots, false);
    while (p.size() < n) {
        const std::size_t k = rng.below(slots);
        if (used[k]) continue;
        used[k] = true;
        p.push_back(-1.0 + k * step + rng.uniform(0.0, 0.0005) * delta);
    }
    return p;
}

}  // namespace

TEST_CASE("singletons") {
    const PointSet1D one({0.0}, 0.1);
    CHECK(e2_discrete(one, 0.1).count == 1);
    CHECK(e3_discrete(one, 0.1).count == 1);
    CHECK(e2_discrete(one, 0.0, EnergyMethod::brute_force).count == 1);
    const DiscreteMeasure1D unit({{0.3, 1.0}}, 0.01);
    CHECK(ec_energy(unit, 2, 0.05).value == 1.0);
    CHECK(ec_energy(unit, 3, 0.0).value == 1.0);
}

TEST_CASE("four-point AP at threshold delta matches the oracle") {
    const double d = 0.25;
    const std::vector<double> p{0.0, d, 2 * d, 3 * d};
    const PointSet1D P(p, d);
    const std::uint64_t want = oracle::e2_count(p, d);
    CHECK(e2_discrete(P, d).count == want);
    CHECK(e2_discrete(P, d, EnergyMethod::brute_force).count == want);
    // Sums a + b range over 0..6 in units of d with multiplicities 1,2,3,4,3,2,1;
    // matches within one unit: sum c_k (c_(k-1) + c_k + c_(k+1)).
    CHECK(want == 124);
}

TEST_CASE("histogram equals brute force on random and structured sets") {
    Rng rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + rng.below(18);
        const double delta = rng.uniform(0.01, 1.9 / static_cast<double>(n + 1));
        const std::vector<double> p = trial % 2 ? random_separated(rng, n, delta) : ap(static_cast<int>(n), delta);
        const PointSet1D P(p, delta);
        const double t = trial % 3 == 0 ? delta : rng.uniform(0.0, 3.0) * delta;
        const std::uint64_t e2 = oracle::e2_count(P.points(), t);
        CHECK(e2_discrete(P, t).count == e2);
        CHECK(e2_discrete(P, t, EnergyMethod::brute_force).count == e2);
        if (n <= 14) {
            const std::uint64_t e3 = oracle::e3_count(P.points(), t);
            CHECK(e3_discrete(P, t).count == e3);
            CHECK(e3_discrete(P, t, EnergyMethod::brute_force).count == e3);
        }
    }
}

TEST_CASE("trivial bounds and the E3 <= |P|^2 E2 inequality") {
    Rng rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 3 + rng.below(12);
        const double delta = 0.05;
        const PointSet1D P(random_separated(rng, n, delta), delta);
        const auto e2 = e2_discrete(P, delta).count;
        const auto e3 = e3_discrete(P, delta).count;
        CHECK(e2 >= n * n);
        CHECK(e3 >= n * n * n);
        CHECK(e3 <= n * n * e2);
    }
}

TEST_CASE("translation invariance and dilation covariance") {
    const double d = 1.0 / 64;
    const std::vector<double> base{-0.5, -0.25, 0.0, 0.125, 0.375, 0.5};
    const PointSet1D P(base, d);
    std::vector<double> shifted, dilated;
    for (double x : base) {
        shifted.push_back(x + 0.25);
        dilated.push_back(x * 0.5);
    }
    for (double t : {d, 4 * d, 0.125}) {
        CHECK(e2_discrete(PointSet1D(shifted, d), t).count == e2_discrete(P, t).count);
        CHECK(e3_discrete(PointSet1D(shifted, d), t).count == e3_discrete(P, t).count);
        CHECK(e2_discrete(PointSet1D(dilated, d / 2), t / 2).count == e2_discrete(P, t).count);
        CHECK(e3_discrete(PointSet1D(dilated, d / 2), t / 2).count == e3_discrete(P, t).count);
    }
}

TEST_CASE("AP energies are sharp") {
    SUBCASE("E2 of a 32-point AP") {
        const double d = 1.0 / 16;
        const PointSet1D P(ap(32, d), d);
        const double v = static_cast<double>(e2_discrete(P, d).count);
        CHECK(e2_discrete(P, d).count == oracle::e2_count(P.points(), d));
        // |P|^3 is the extremal order of E2.
        const double ref = std::pow(32.0, 3);
        CHECK(v <= 8 * ref);
        CHECK(v >= ref / 8);
    }
    SUBCASE("E3 of 16-point AP scales from the 8-point one, random sets are smaller") {
        const std::uint64_t e8 = oracle::e3_count(ap(8, 0.25), 0.25);
        const double c_ap = static_cast<double>(e8) / std::pow(8.0, 5);
        const double d = 0.125;
        const PointSet1D P(ap(16, d), d);
        const std::uint64_t e16 = e3_discrete(P, d).count;
        CHECK(e16 == e3_discrete(P, d, EnergyMethod::brute_force).count);
        const double pred = c_ap * std::pow(16.0, 5);
        CHECK(static_cast<double>(e16) <= 8 * pred);
        CHECK(static_cast<double>(e16) >= pred / 8);

        // Sixteen random points need a little room in [-1, 1].
        const double dr = 0.1;
        Rng rng(77);
        const PointSet1D R(random_separated(rng, 16, dr), dr);
        CHECK(e3_discrete(R, dr, EnergyMethod::brute_force).count < e3_discrete(PointSet1D(ap(16, dr), dr), dr).count);
    }
}

TEST_CASE("weighted energies") {
    SUBCASE("two half-weight atoms") {
        const DiscreteMeasure1D nu({{0.0, 0.5}, {0.5, 0.5}}, 0.01);
        // x1 + x2 - x3 - x4 is a multiple of 1/2; within 0.1 only when zero,
        // which happens for 6 of the 16 quadruples.
        const double want = oracle::ec_brute({0.0, 0.5}, {0.5, 0.5}, 2, 0.1);
        CHECK(want == doctest::Approx(6.0 / 16.0));
        CHECK(ec_energy(nu, 2, 0.1).value == doctest::Approx(want).epsilon(1e-14));
        CHECK(ec_energy_brute_force(nu, 2, 0.1) == doctest::Approx(want).epsilon(1e-14));
    }
    SUBCASE("random measures against the oracle") {
        Rng rng(31);
        for (int trial = 0; trial < 8; ++trial) {
            const std::size_t n = 3 + rng.below(8);
            std::vector<double> x = random_separated(rng, n, 0.02), w;
            std::sort(x.begin(), x.end());
            std::vector<Atom1D> atoms;
            for (double v : x) {
                w.push_back(rng.uniform(0.1, 1.0));
                atoms.push_back({v, w.back()});
            }
            const DiscreteMeasure1D nu(atoms, 0.02);
            for (int k : {2, 3}) {
                const double r = rng.uniform(0.0, 0.2);
                const double want = oracle::ec_brute(x, w, k, r);
                CHECK(ec_energy(nu, k, r).value == doctest::Approx(want).epsilon(1e-12));
                CHECK(ec_energy_brute_force(nu, k, r) == doctest::Approx(want).epsilon(1e-12));
            }
        }
    }
    SUBCASE("AP measure at r = interval length") {
        const double r = 1.0 / 1024;
        const DiscreteMeasure1D nu = build_ap_measure(32, r, 1.0);
        const double s = std::log(32.0) / std::log(1.0 / r);
        const double e2 = ec_energy(nu, 2, r).value, e3 = ec_energy(nu, 3, r).value;
        CHECK(e2 <= 4 * std::pow(r, s));
        CHECK(e2 >= std::pow(r, s) / 4);
        CHECK(e3 <= 4 * std::pow(r, s));
        CHECK(e3 >= std::pow(r, s) / 4);
        const DiscreteMeasure1D big = build_ap_measure(32, r, 2.0);
        CHECK(ec_energy(big, 3, r).normalized == doctest::Approx(ec_energy(nu, 3, r).normalized));
    }
    CHECK_THROWS_AS(ec_energy(DiscreteMeasure1D({{0.0, 1.0}}, 0.1), 4, 0.1), Error);
}

TEST_CASE("delta-s regularity") {
    const PointSet1D P(ap(33, 2.0 / 32), 2.0 / 32);
    CHECK(check_delta_s_regular(P, 1.0, 2.0).regular);
    const RegularityVerdict half = check_delta_s_regular(P, 0.5, 2.0);
    CHECK_FALSE(half.regular);
    CHECK_FALSE(half.upper_ok);
    REQUIRE(half.violation.has_value());
    CHECK(half.violation_count > half.violation_bound);

    const DiscreteMeasure1D cantor = build_cantor(1.0 / 3.0, 8, 1.0);
    CHECK(check_delta_s_regular(PointSet1D::from_measure(cantor), cantor_dimension(1.0 / 3.0), 8.0).regular);
}

TEST_CASE("energy improvement scan") {
    const double s = cantor_dimension(1.0 / 3.0);
    std::vector<PointSet1D> cantor;
    for (int depth = 4; depth <= 9; ++depth) cantor.push_back(PointSet1D::from_measure(build_cantor(1.0 / 3.0, depth, 1.0)));
    const ImprovementReport rep = energy_improvement_scan(cantor, s);
    CHECK(rep.eta >= 0.05);
    CHECK(rep.gain);
    CHECK(rep.rows.size() == 6);
    CHECK(rep.rows.back().e3.has_value());

    std::vector<PointSet1D> aps;
    for (int n : {16, 32, 64, 128, 256}) aps.push_back(PointSet1D(ap(n, 2.0 / (n - 1)), 2.0 / (n - 1)));
    CHECK(energy_improvement_scan(aps, 1.0).eta <= 0.05);

    CHECK_THROWS_WITH(energy_improvement_scan({cantor.front()}, s), "insufficient scales for fit");
    CHECK_THROWS_WITH(energy_improvement_scan(aps, 0.5), "not regular");
}
