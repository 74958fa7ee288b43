#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "frostlab/incidence.hpp"
#include "frostlab/rng.hpp"
#include "oracles.hpp"

using namespace frostlab;

namespace {

std::array<oracle::P2, 4> corners_of(const OrientedRect& r) {
    // rect_corners takes the long axis; the long side of a tube is u.
    return oracle::rect_corners({r.center.x, r.center.y}, {r.u.x, r.u.y}, 2 * r.half_v, 2 * r.half_u);
}

OrientedRect tube(Vec2 c, double angle, double R) {
    return {c, {std::cos(angle), std::sin(angle)}, R / 2, std::sqrt(R) / 2};
}

std::vector<std::uint32_t> brute_force(const std::vector<OrientedRect>& tubes, const SquareGrid& g) {
    std::vector<std::uint32_t> count(g.size(), 0);
    for (const OrientedRect& t : tubes) {
        const auto tc = corners_of(t);
        for (std::size_t id = 0; id < g.size(); ++id) {
            const Square q = g.square(id);
            count[id] += oracle::polygons_meet(tc, oracle::square_corners(q.x0, q.y0, q.side));
        }
    }
    return count;
}

}  // namespace

TEST_CASE("square grid layout") {
    const SquareGrid g(1024);
    CHECK(g.side() == 32.0);
    CHECK(g.n() == 64);
    CHECK(g.size() == 4096);
    const Square q = g.square(3, 5);
    CHECK(q.x0 == -1024.0 + 3 * 32.0);
    CHECK(q.y0 == -1024.0 + 5 * 32.0);
    CHECK(g.id(3, 5) == 3u * 64 + 5);
    CHECK(g.square(g.id(3, 5)).x0 == q.x0);
    const Square last = g.square(63, 63);
    CHECK(last.x0 + last.side >= 1024.0);
}

TEST_CASE("separating-axis test against an independent implementation") {
    Rng rng(8);
    int hits = 0;
    for (int k = 0; k < 4000; ++k) {
        const OrientedRect a{{rng.uniform(-3, 3), rng.uniform(-3, 3)}, rotate({1.0, 0.0}, rng.uniform(0, 6.3)),
                             rng.uniform(0.1, 2), rng.uniform(0.1, 2)};
        const OrientedRect b{{rng.uniform(-3, 3), rng.uniform(-3, 3)}, rotate({1.0, 0.0}, rng.uniform(0, 6.3)),
                             rng.uniform(0.1, 2), rng.uniform(0.1, 2)};
        const bool want = oracle::polygons_meet(corners_of(a), corners_of(b));
        CHECK(intersects(a, b) == want);
        CHECK(intersects(b, a) == want);
        hits += want;
        const Square q{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(0.1, 2)};
        CHECK(intersects(a, q) == oracle::polygons_meet(corners_of(a), oracle::square_corners(q.x0, q.y0, q.side)));
    }
    // Both outcomes are exercised.
    CHECK(hits > 400);
    CHECK(hits < 3600);

    // Closed sets: a shared edge or corner counts.
    const Square unit{0, 0, 1};
    CHECK(intersects(OrientedRect{{1.5, 0.5}, {1, 0}, 0.5, 0.5}, unit));
    CHECK(intersects(OrientedRect{{1.5, 1.5}, {1, 0}, 0.5, 0.5}, unit));
    CHECK_FALSE(intersects(OrientedRect{{1.5 + 1e-9, 0.5}, {1, 0}, 0.5, 0.5}, unit));
}

TEST_CASE("containment") {
    const OrientedRect big{{0, 0}, rotate({1, 0}, 0.3), 4, 2};
    CHECK(big.contains(Vec2{0.0, 0.0}));
    CHECK(big.contains(OrientedRect{{0.5, 0.2}, rotate({1, 0}, 0.3), 1, 1}));
    CHECK_FALSE(big.contains(OrientedRect{{3.9, 0.0}, {1, 0}, 1, 1}));
    CHECK_FALSE(big.contains(Vec2{0.0, 3.0}));
}

TEST_CASE("empty tube set") {
    const SquareGrid g(256);
    const IncidenceResult r = incidence_count({}, g);
    CHECK(r.total == 0);
    CHECK(r.per_square.size() == g.size());
    CHECK(std::all_of(r.per_square.begin(), r.per_square.end(), [](auto c) { return c == 0; }));
}

TEST_CASE("axis-aligned tube") {
    const double R = 1024;
    const SquareGrid g(R);
    // Strictly inside one row of squares, ends off the grid lines: the
    // length R spans sqrt(R) + 1 squares.
    const OrientedRect t{{16.0 + 8.0, 16.0}, {1, 0}, R / 2, 8.0};
    const IncidenceResult r = incidence_count({t}, g);
    const auto brute = brute_force({t}, g);
    CHECK(r.per_square == brute);
    CHECK(r.total == 33);
    // On grid lines: the rows on either side are touched too.
    const OrientedRect edge{{16.0, 16.0}, {1, 0}, R / 2, 16.0};
    const IncidenceResult re = incidence_count({edge}, g);
    CHECK(re.per_square == brute_force({edge}, g));
    CHECK(re.total == 3 * 33);
}

TEST_CASE("bucketed sweep equals all-pairs brute force") {
    Rng rng(1024);
    for (double R : {256.0, 1024.0}) {
        const SquareGrid g(R);
        std::vector<OrientedRect> tubes;
        for (int k = 0; k < 100; ++k)
            tubes.push_back(tube({rng.uniform(-R / 4, R / 4), rng.uniform(-R / 4, R / 4)}, rng.uniform(0, oracle::pi), R));
        // Exact diagonals and axis directions, where ties are likely.
        tubes.push_back(tube({0, 0}, oracle::pi / 4, R));
        tubes.push_back(tube({g.side(), 5.0}, oracle::pi / 2, R));
        const IncidenceResult r = incidence_count(tubes, g);
        const auto brute = brute_force(tubes, g);
        CHECK(r.per_square == brute);
        std::uint64_t total = 0;
        for (auto c : brute) total += c;
        CHECK(r.total == total);

        for (std::size_t k = 0; k < 5; ++k) {
            const std::vector<std::size_t> ids = squares_meeting(tubes[k], g);
            CHECK(std::is_sorted(ids.begin(), ids.end()));
            const auto one = brute_force({tubes[k]}, g);
            std::vector<std::size_t> want;
            for (std::size_t id = 0; id < g.size(); ++id)
                if (one[id]) want.push_back(id);
            CHECK(ids == want);
        }
    }
}

TEST_CASE("heavy-light split") {
    const double R = 1024, s = 0.5, alpha = 0.02;
    const SquareGrid g(R);

    SUBCASE("parallel disjoint tubes") {
        std::vector<OrientedRect> tubes;
        for (int k = 0; k < 12; ++k) {
            const double y = -R + (4 * k + 0.5) * g.side() + g.side() * 8;
            tubes.push_back({{0, y}, {1, 0}, R / 2, g.side() / 2});
        }
        const IncidenceResult inc = incidence_count(tubes, g);
        CHECK(*std::max_element(inc.per_square.begin(), inc.per_square.end()) <= 2);
        const HeavyLightSplit split = heavy_light_split(inc, g, s, alpha);
        CHECK(split.heavy.empty());
        CHECK(split.ratio_easy == 0.0);
    }

    SUBCASE("bush through the origin") {
        std::vector<OrientedRect> tubes;
        for (int k = 0; k < 8; ++k) tubes.push_back(tube({0, 0}, k * oracle::pi / 8, R));
        const IncidenceResult inc = incidence_count(tubes, g);
        const HeavyLightSplit split = heavy_light_split(inc, g, s, alpha);
        CHECK(split.threshold == doctest::Approx(std::pow(R, s / 2 - alpha)));
        // The four squares at the origin are met by every tube.
        for (int i : {31, 32})
            for (int j : {31, 32}) CHECK(std::count(split.heavy.begin(), split.heavy.end(), g.id(i, j)) == 1);
        // Tubes 22.5 degrees apart have separated by distance 32 / sin(22.5).
        const double reach = g.side() / std::sin(oracle::pi / 8) + 2 * g.side();
        for (std::size_t id : split.heavy) {
            const Square q = g.square(id);
            CHECK(std::hypot(q.x0 + q.side / 2, q.y0 + q.side / 2) <= reach);
        }
        for (const OrientedRect& t : tubes) {
            const PerTubeHeavy p = per_tube_heavy_count(t, tubes.size(), split, g);
            CHECK(p.count >= 4);
            CHECK(p.count <= 16);
            CHECK(p.bound == doctest::Approx(8.0 / std::pow(R, s / 2 - alpha - 2 * alpha / s)));
            CHECK(p.ratio == doctest::Approx(p.count / p.bound));
        }
        const OrientedRect far{{R / 2, R / 2}, {1, 0}, 20.0, 10.0};
        CHECK(per_tube_heavy_count(far, tubes.size(), split, g).count == 0);
    }

    SUBCASE("classification and bounds") {
        Rng rng(4);
        std::vector<OrientedRect> tubes;
        for (int k = 0; k < 60; ++k)
            tubes.push_back(tube({rng.uniform(-100, 100), rng.uniform(-100, 100)}, rng.uniform(0, oracle::pi), R));
        const IncidenceResult inc = incidence_count(tubes, g);
        const HeavyLightSplit split = heavy_light_split(inc, g, s, alpha);
        for (std::size_t id : split.heavy) CHECK(inc.per_square[id] >= split.threshold);
        for (std::size_t id : split.light) {
            CHECK(inc.per_square[id] >= 1);
            CHECK(inc.per_square[id] < split.threshold);
        }
        std::size_t nonempty = 0;
        for (auto c : inc.per_square) nonempty += c > 0;
        CHECK(split.heavy.size() + split.light.size() == nonempty);
        const double easy = std::pow(R, 1 - s) * std::pow(R, 10 * alpha + 2 * alpha / s);
        CHECK(split.bound_easy == doctest::Approx(easy));
        CHECK(split.ratio_easy == doctest::Approx(split.heavy.size() / easy));
        CHECK(split.bound_improved == doctest::Approx(std::pow(R, 1 - s - 2 * alpha)));
        CHECK(split.ratio_improved == doctest::Approx(split.heavy.size() / split.bound_improved));
    }

    const IncidenceResult none = incidence_count({}, g);
    CHECK_THROWS_WITH(heavy_light_split(none, g, 1.5, alpha), "s must lie in (0,1)");
    CHECK_THROWS_WITH(heavy_light_split(none, g, 0.0, alpha), "s must lie in (0,1)");
}
