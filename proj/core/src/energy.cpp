#include "frostlab/energy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace frostlab {

namespace {

using u128 = unsigned __int128;

std::uint64_t narrow(u128 v) {
    if (v > std::numeric_limits<std::uint64_t>::max()) throw Error("energy count overflow");
    return static_cast<std::uint64_t>(v);
}

// Sums of multisets of size k from sorted points, split by the number of
// ordered tuples each multiset stands for. Operands are added in ascending
// order, which is what brute force does after sorting a tuple.
struct MultisetSums {
    std::vector<std::vector<double>> groups;
    std::vector<std::uint64_t> multiplicity;
};

MultisetSums multiset_sums(const std::vector<double>& p, int k) {
    const std::size_t n = p.size();
    MultisetSums m;
    if (k == 2) {
        m.groups.resize(2);
        m.multiplicity = {2, 1};
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) m.groups[i == j ? 1 : 0].push_back(p[i] + p[j]);
    } else {
        m.groups.resize(3);
        m.multiplicity = {6, 3, 1};
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                const double pij = p[i] + p[j];
                for (std::size_t l = j; l < n; ++l) {
                    const int distinct = 1 + (j != i) + (l != j);
                    m.groups[3 - distinct].push_back(pij + p[l]);
                }
            }
    }
    for (auto& g : m.groups) std::sort(g.begin(), g.end());
    return m;
}

// Pairs (a, b) in sorted a x sorted b with |a - b| <= t, by a two-pointer
// sweep. Floating-point subtraction is monotone in each argument, so the
// matching b for each a form one contiguous run whose ends only move right.
u128 count_close(const std::vector<double>& a, const std::vector<double>& b, double t) {
    u128 total = 0;
    std::size_t lo = 0, hi = 0;
    for (double x : a) {
        while (lo < b.size() && !(x - b[lo] <= t)) ++lo;
        if (hi < lo) hi = lo;
        while (hi < b.size() && b[hi] - x <= t) ++hi;
        total += hi - lo;
    }
    return total;
}

u128 histogram_energy(const std::vector<double>& p, int k, double t) {
    const MultisetSums m = multiset_sums(p, k);
    u128 total = 0;
    for (std::size_t g = 0; g < m.groups.size(); ++g)
        for (std::size_t h = 0; h < m.groups.size(); ++h)
            total += count_close(m.groups[g], m.groups[h], t) * m.multiplicity[g] * m.multiplicity[h];
    return total;
}

std::vector<double> tuple_table(const std::vector<double>& p, int k) {
    const std::size_t n = p.size();
    std::vector<double> t;
    if (k == 2) {
        t.resize(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) t[i * n + j] = p[std::min(i, j)] + p[std::max(i, j)];
    } else {
        t.resize(n * n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t l = 0; l < n; ++l) {
                    std::array<std::size_t, 3> idx{i, j, l};
                    std::sort(idx.begin(), idx.end());
                    t[(i * n + j) * n + l] = (p[idx[0]] + p[idx[1]]) + p[idx[2]];
                }
    }
    return t;
}

u128 brute_energy(const std::vector<double>& p, int k, double t) {
    const std::vector<double> tab = tuple_table(p, k);
    u128 total = 0;
    for (double a : tab) {
        std::uint64_t c = 0;
        for (double b : tab) c += std::fabs(a - b) <= t;
        total += c;
    }
    return total;
}

EnergyReport discrete_report(const PointSet1D& P, double threshold, EnergyMethod method, int k) {
    if (!(threshold >= 0.0)) throw Error("threshold must be nonnegative");
    const std::size_t n = P.size();
    if (method == EnergyMethod::brute_force && n > (k == 2 ? 64u : 24u))
        throw Error("point set too large for brute force");
    if (method == EnergyMethod::histogram && k == 3 && n > 600)
        throw Error("point set too large for histogram");
    EnergyReport r;
    r.kind = k == 2 ? EnergyKind::E2_discrete : EnergyKind::E3_discrete;
    r.method = method;
    r.scale = threshold;
    r.count = narrow(method == EnergyMethod::brute_force ? brute_energy(P.points(), k, threshold)
                                                        : histogram_energy(P.points(), k, threshold));
    r.value = static_cast<double>(r.count);
    r.normalized = n == 0 ? 0.0 : r.value / std::pow(static_cast<double>(n), 2 * k - 1);
    return r;
}

}  // namespace

PointSet1D::PointSet1D(std::vector<double> points, double delta)
    : points_(std::move(points)), delta_(delta) {
    if (!(delta_ > 0.0)) throw Error("delta must be positive");
    std::sort(points_.begin(), points_.end());
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!(points_[i] >= -1.0 && points_[i] <= 1.0)) throw Error("point outside [-1, 1]");
        if (i > 0 && points_[i] - points_[i - 1] < delta_ * (1.0 - 1e-12))
            throw Error("points not delta-separated");
    }
}

PointSet1D PointSet1D::from_measure(const DiscreteMeasure1D& mu) {
    return PointSet1D(mu.positions(), mu.resolution());
}

EnergyReport e2_discrete(const PointSet1D& P, double threshold, EnergyMethod method) {
    return discrete_report(P, threshold, method, 2);
}

EnergyReport e3_discrete(const PointSet1D& P, double threshold, EnergyMethod method) {
    return discrete_report(P, threshold, method, 3);
}

EnergyReport ec_energy(const DiscreteMeasure1D& nu, int order, double r) {
    if (order != 2 && order != 3) throw Error("energy order must be 2 or 3");
    if (!(r >= 0.0)) throw Error("scale must be nonnegative");
    const std::size_t n = nu.size();
    if (n > (order == 2 ? 2000u : 400u)) throw Error("measure too large for energy");

    // Multiset sums with weight = (ordered tuple count) * (weight product).
    std::vector<std::pair<double, double>> sums;
    const auto a = nu.atoms();
    if (order == 2) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                sums.emplace_back(a[i].position + a[j].position,
                                  (i == j ? 1.0 : 2.0) * a[i].weight * a[j].weight);
    } else {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                const double pij = a[i].position + a[j].position;
                const double wij = a[i].weight * a[j].weight;
                for (std::size_t l = j; l < n; ++l) {
                    const int distinct = 1 + (j != i) + (l != j);
                    const double mult = distinct == 3 ? 6.0 : distinct == 2 ? 3.0 : 1.0;
                    sums.emplace_back(pij + a[l].position, mult * wij * a[l].weight);
                }
            }
    }
    std::sort(sums.begin(), sums.end());
    std::vector<double> prefix(sums.size() + 1, 0.0);
    for (std::size_t i = 0; i < sums.size(); ++i) prefix[i + 1] = prefix[i] + sums[i].second;

    double total = 0.0;
    std::size_t lo = 0, hi = 0;
    for (const auto& [x, w] : sums) {
        while (lo < sums.size() && !(x - sums[lo].first <= r)) ++lo;
        if (hi < lo) hi = lo;
        while (hi < sums.size() && sums[hi].first - x <= r) ++hi;
        total += w * (prefix[hi] - prefix[lo]);
    }

    EnergyReport rep;
    rep.kind = order == 2 ? EnergyKind::Ec2_measure : EnergyKind::Ec3_measure;
    rep.method = EnergyMethod::histogram;
    rep.scale = r;
    rep.value = total;
    const double m = nu.total_mass();
    rep.normalized = m > 0.0 ? total / std::pow(m, 2 * order) : 0.0;
    return rep;
}

double ec_energy_brute_force(const DiscreteMeasure1D& nu, int order, double r) {
    if (order != 2 && order != 3) throw Error("energy order must be 2 or 3");
    const auto a = nu.atoms();
    const std::size_t n = a.size();
    const int k = order;
    std::vector<std::size_t> idx(2 * k, 0);
    double total = 0.0;
    while (true) {
        double lhs = 0.0, rhs = 0.0, w = 1.0;
        for (int q = 0; q < k; ++q) {
            lhs += a[idx[q]].position;
            rhs += a[idx[k + q]].position;
        }
        for (std::size_t q : idx) w *= a[q].weight;
        if (std::fabs(lhs - rhs) <= r) total += w;
        int pos = 2 * k - 1;
        while (pos >= 0 && ++idx[pos] == n) idx[pos--] = 0;
        if (pos < 0) break;
    }
    return total;
}

RegularityVerdict check_delta_s_regular(const PointSet1D& P, double s, double C) {
    RegularityVerdict v;
    v.upper_ok = v.lower_ok = true;
    const auto& p = P.points();
    const double d = P.delta();
    const std::size_t n = p.size();
    v.worst_lower_ratio = std::numeric_limits<double>::infinity();
    auto flag = [&](Interval I, std::size_t count, double bound) {
        if (!v.violation) {
            v.violation = I;
            v.violation_count = count;
            v.violation_bound = bound;
        }
    };

    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            const double len = std::max(p[b] - p[a], d);
            const double base = std::pow(len / d, s);
            const std::size_t count = b - a + 1;
            v.worst_upper_ratio = std::max(v.worst_upper_ratio, count / base);
            if (static_cast<double>(count) > C * base * (1.0 + 1e-12)) {
                v.upper_ok = false;
                flag({p[a], p[a] + len}, count, C * base);
            }
        }

    const double diam = n ? p.back() - p.front() : 0.0;
    for (std::size_t a = 0; a < n; ++a)
        for (double r = d; r <= diam * (1.0 + 1e-12); r *= 2.0) {
            const double lo = p[a] - r, hi = p[a] + r;
            const auto first = std::lower_bound(p.begin(), p.end(), lo);
            const auto last = std::upper_bound(p.begin(), p.end(), hi);
            const auto count = static_cast<std::size_t>(last - first);
            const double base = std::pow(2.0 * r / d, s);
            v.worst_lower_ratio = std::min(v.worst_lower_ratio, count / base);
            if (static_cast<double>(count) * C < base * (1.0 - 1e-12)) {
                v.lower_ok = false;
                flag({lo, hi}, count, base / C);
            }
        }
    if (!std::isfinite(v.worst_lower_ratio)) v.worst_lower_ratio = 0.0;
    v.regular = v.upper_ok && v.lower_ok;
    return v;
}

ImprovementReport energy_improvement_scan(const std::vector<PointSet1D>& ladder, double s, double C) {
    if (ladder.size() < 2) throw Error("insufficient scales for fit");
    ImprovementReport rep;
    std::vector<double> xs, ys;
    for (const PointSet1D& P : ladder) {
        if (!check_delta_s_regular(P, s, C).regular) throw Error("not regular");
        ImprovementRow row;
        row.n = P.size();
        row.e2 = e2_discrete(P, P.delta()).count;
        if (P.size() <= 600) row.e3 = e3_discrete(P, P.delta()).count;
        row.normalized = static_cast<double>(row.e2) / std::pow(static_cast<double>(row.n), 3);
        rep.rows.push_back(row);
        xs.push_back(static_cast<double>(row.n));
        ys.push_back(static_cast<double>(row.e2));
    }
    rep.fit = fit_power_law(xs, ys);
    rep.eta = 3.0 - rep.fit.exponent;
    rep.gain = rep.eta > 0.0;
    return rep;
}

}  // namespace frostlab
