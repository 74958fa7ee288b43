#pragma once

// Independent reference computations. None of these call into the library
// code they check; they trade speed for directness.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

struct P2 {
    double x = 0.0, y = 0.0;
};

// Ascending-order sum, the canonical evaluation of a tuple sum.
inline double sorted_sum(std::array<double, 3> v, int k) {
    std::sort(v.begin(), v.begin() + k);
    double s = v[0];
    for (int i = 1; i < k; ++i) s += v[i];
    return s;
}

// Quadruples with |p1 + p2 - p3 - p4| <= t, by direct enumeration.
inline std::uint64_t e2_count(const std::vector<double>& p, double t) {
    std::uint64_t c = 0;
    for (double a : p)
        for (double b : p)
            for (double d : p)
                for (double e : p) {
                    const double l = sorted_sum({a, b, 0.0}, 2), r = sorted_sum({d, e, 0.0}, 2);
                    c += std::fabs(l - r) <= t;
                }
    return c;
}

// 6-tuples with |p1 + p2 + p3 - p4 - p5 - p6| <= t. The six loops are
// folded into a triple table to stay O(N^6) without recomputation.
inline std::uint64_t e3_count(const std::vector<double>& p, double t) {
    std::vector<double> tab;
    for (double a : p)
        for (double b : p)
            for (double d : p) tab.push_back(sorted_sum({a, b, d}, 3));
    std::uint64_t c = 0;
    for (double l : tab)
        for (double r : tab) c += std::fabs(l - r) <= t;
    return c;
}

// Weighted energy by direct enumeration over 2k-tuples.
inline double ec_brute(const std::vector<double>& x, const std::vector<double>& w, int k, double r) {
    const std::size_t n = x.size();
    double total = 0.0;
    if (k == 2) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    for (std::size_t d = 0; d < n; ++d)
                        if (std::fabs(x[a] + x[b] - x[c] - x[d]) <= r) total += w[a] * w[b] * w[c] * w[d];
    } else {
        std::vector<std::pair<double, double>> tab;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c) tab.push_back({x[a] + x[b] + x[c], w[a] * w[b] * w[c]});
        for (const auto& [u, wu] : tab)
            for (const auto& [v, wv] : tab)
                if (std::fabs(u - v) <= r) total += wu * wv;
    }
    return total;
}

// Closed convex polygon overlap by the separating-axis theorem, written
// against corner lists only.
inline bool polygons_meet(const std::array<P2, 4>& a, const std::array<P2, 4>& b) {
    auto axes_from = [](const std::array<P2, 4>& q, int i) {
        const P2 e{q[(i + 1) % 4].x - q[i].x, q[(i + 1) % 4].y - q[i].y};
        return P2{-e.y, e.x};
    };
    for (const auto* poly : {&a, &b})
        for (int i = 0; i < 2; ++i) {
            const P2 ax = axes_from(*poly, i);
            double alo = 1e300, ahi = -1e300, blo = 1e300, bhi = -1e300;
            for (const P2& p : a) {
                const double v = p.x * ax.x + p.y * ax.y;
                alo = std::min(alo, v);
                ahi = std::max(ahi, v);
            }
            for (const P2& p : b) {
                const double v = p.x * ax.x + p.y * ax.y;
                blo = std::min(blo, v);
                bhi = std::max(bhi, v);
            }
            if (ahi < blo || bhi < alo) return false;
        }
    return true;
}

// Rectangle with center c, unit long axis d, full width w across and length l along.
inline std::array<P2, 4> rect_corners(P2 c, P2 d, double w, double l) {
    const P2 u{d.y, -d.x};
    std::array<P2, 4> out;
    const int sx[4] = {-1, 1, 1, -1}, sy[4] = {-1, -1, 1, 1};
    for (int k = 0; k < 4; ++k)
        out[k] = {c.x + sx[k] * u.x * w / 2 + sy[k] * d.x * l / 2,
                  c.y + sx[k] * u.y * w / 2 + sy[k] * d.y * l / 2};
    return out;
}

inline std::array<P2, 4> square_corners(double x0, double y0, double side) {
    return {P2{x0, y0}, P2{x0 + side, y0}, P2{x0 + side, y0 + side}, P2{x0, y0 + side}};
}

// int_{|x| <= R} |sum_j w_j e(p_j . x)|^2 dx in closed form:
// sum_{j,k} w_j w_k R J1(2 pi R |d|) / |d| with d = p_j - p_k (pi R^2 at d = 0).
inline double l2_pow2_on_disk(const std::vector<P2>& p, const std::vector<double>& w, double R) {
    double total = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j)
        for (std::size_t k = 0; k < p.size(); ++k) {
            const double d = std::hypot(p[j].x - p[k].x, p[j].y - p[k].y);
            const double v = d == 0.0 ? pi * R * R : R * std::cyl_bessel_j(1.0, 2 * pi * R * d) / d;
            total += w[j] * w[k] * v;
        }
    return total;
}

// Solutions of n1 + n2 + n3 = n4 + n5 + n6 with 1 <= n_i <= N, which equals
// int_0^1 |sum_{n <= N} e(n x)|^6 dx by orthogonality.
inline double dirichlet_sixth_moment(int N) {
    std::vector<double> ways(3 * N + 1, 0.0);
    for (int a = 1; a <= N; ++a)
        for (int b = 1; b <= N; ++b)
            for (int c = 1; c <= N; ++c) ways[a + b + c] += 1.0;
    double total = 0.0;
    for (double v : ways) total += v * v;
    return total;
}

// The same integral by direct quadrature: |D_N|^6 is a trigonometric
// polynomial of degree 3(N - 1), so the M-point rectangle rule with
// M > 6(N - 1) is exact.
inline double dirichlet_sixth_integral(int N) {
    const int M = 6 * N + 1;
    double total = 0.0;
    for (int m = 0; m < M; ++m) {
        const double x = static_cast<double>(m) / M;
        std::complex<double> d = 0.0;
        for (int n = 1; n <= N; ++n) d += std::polar(1.0, 2 * pi * n * x);
        total += std::pow(std::norm(d), 3);
    }
    return total / M;
}

// Transform of the radial bump (5 / pi)(1 - |xi|^2)^4: 3840 J5(2 pi r) / (2 pi r)^5.
inline double bump_hat(double r) {
    if (r < 1e-6) return 1.0;
    const double z = 2 * pi * r;
    return 3840.0 * std::cyl_bessel_j(5.0, z) / std::pow(z, 5);
}

inline cplx e(double t) { return std::polar(1.0, 2 * pi * t); }

}  // namespace oracle
