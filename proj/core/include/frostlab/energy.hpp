#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "frostlab/fit.hpp"
#include "frostlab/measures.hpp"

namespace frostlab {

/// delta-separated points of [-1, 1], kept sorted ascending.
class PointSet1D {
public:
    PointSet1D() = default;
    PointSet1D(std::vector<double> points, double delta);

    /// Atom positions of a measure, separated at its resolution.
    static PointSet1D from_measure(const DiscreteMeasure1D& mu);

    const std::vector<double>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    double delta() const { return delta_; }

private:
    std::vector<double> points_;
    double delta_ = 1.0;
};

enum class EnergyKind { E2_discrete, E3_discrete, Ec2_measure, Ec3_measure };
enum class EnergyMethod { brute_force, histogram };

struct EnergyReport {
    EnergyKind kind = EnergyKind::E2_discrete;
    EnergyMethod method = EnergyMethod::histogram;
    double scale = 0.0;
    std::uint64_t count = 0;  // discrete kinds only
    double value = 0.0;
    /// Discrete: value / |P|^(2k-1). Measure: value / mass^(2k).
    double normalized = 0.0;
};

/// Number of quadruples with |p1 + p2 - p3 - p4| <= threshold. Both methods
/// evaluate the same floating-point predicate on the same canonical sums
/// (operands added in ascending order), so they agree exactly.
/// brute_force requires |P| <= 64.
EnergyReport e2_discrete(const PointSet1D& P, double threshold,
                         EnergyMethod method = EnergyMethod::histogram);

/// Number of 6-tuples with |p1 + p2 + p3 - p4 - p5 - p6| <= threshold.
/// brute_force requires |P| <= 24, histogram |P| <= 600.
EnergyReport e3_discrete(const PointSet1D& P, double threshold,
                         EnergyMethod method = EnergyMethod::histogram);

/// Weighted energy sum over 2k-tuples of atoms of the weight product times
/// [|x_1 + .. + x_k - x_{k+1} - .. - x_{2k}| <= r]. order 2 allows up to 2000
/// atoms, order 3 up to 400.
EnergyReport ec_energy(const DiscreteMeasure1D& nu, int order, double r);

/// Direct O(N^(2k)) evaluation of ec_energy, for cross-checks on small inputs.
double ec_energy_brute_force(const DiscreteMeasure1D& nu, int order, double r);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

struct RegularityVerdict {
    bool regular = false;
    bool upper_ok = false;  // |P cap I| <= C (|I| / delta)^s for all I
    bool lower_ok = false;  // |P cap I| >= (|I| / delta)^s / C for point-centered I
    std::optional<Interval> violation;
    std::size_t violation_count = 0;
    double violation_bound = 0.0;
    double worst_upper_ratio = 0.0;  // max |P cap I| / (|I| / delta)^s
    double worst_lower_ratio = 0.0;  // min |P cap I| / (|I| / delta)^s
};

/// Upper condition over every interval spanned by two points (interval
/// length at least delta), lower condition over intervals centered at each
/// point with radii delta 2^j up to the diameter of P. The first violating
/// interval found is reported.
RegularityVerdict check_delta_s_regular(const PointSet1D& P, double s, double C);

struct ImprovementRow {
    std::size_t n = 0;
    std::uint64_t e2 = 0;
    std::optional<std::uint64_t> e3;  // computed while |P| <= 600
    double normalized = 0.0;          // e2 / n^3
};

struct ImprovementReport {
    std::vector<ImprovementRow> rows;
    PowerFit fit;        // log E2 against log |P|
    double eta = 0.0;    // 3 - fitted slope
    bool gain = false;   // eta > 0
};

/// E2 at threshold delta over a ladder of point sets (typically successive
/// depths of one construction) and the fitted exponent gain eta in
/// E2 ~ |P|^(3 - eta). Every level must be (delta, s, C)-regular, otherwise
/// Error("not regular"); fewer than two levels throws
/// Error("insufficient scales for fit").
ImprovementReport energy_improvement_scan(const std::vector<PointSet1D>& ladder, double s,
                                          double C = 8.0);

}  // namespace frostlab
