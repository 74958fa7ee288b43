#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frostlab/caps.hpp"
#include "frostlab/fit.hpp"
#include "frostlab/geometry.hpp"
#include "frostlab/wavepackets.hpp"

namespace frostlab {

struct PhaseAtom {
    Vec2 frequency;
    cplx coefficient;
};

/// F = sum over caps of F_theta, each F_theta a finite exponential sum with
/// frequencies inside its cap (base interval and 1/R neighborhood of the
/// curve, both widened by 2/R; checked on construction).
class CapFunction {
public:
    CapFunction(const CapGrid& grid, std::vector<std::vector<PhaseAtom>> per_cap);

    /// One frequency at every cap center with coefficient 1.
    static CapFunction unit(const CapGrid& grid);
    /// One frequency at every cap center with a seeded random sign.
    static CapFunction random_signs(const CapGrid& grid, std::uint64_t seed);
    /// Atoms of a measure become frequencies, weights become coefficients.
    static CapFunction from_measure(const CapGrid& grid, const DiscreteMeasure2D& mu);

    const CapGrid& grid() const { return grid_; }
    const std::vector<std::vector<PhaseAtom>>& per_cap() const { return per_cap_; }
    std::size_t occupied_caps() const;

    /// Same function with every coefficient multiplied by c.
    CapFunction scaled(cplx c) const;
    /// Same function with every frequency shifted by xi. The result keeps the
    /// cap assignment but its frequencies leave the caps, so no check is done.
    CapFunction modulated(Vec2 xi) const;

private:
    struct Unchecked {};
    CapFunction(const CapGrid& grid, std::vector<std::vector<PhaseAtom>> per_cap, Unchecked);

    CapGrid grid_;
    std::vector<std::vector<PhaseAtom>> per_cap_;
};

/// Integration domain. The period cell is a common period of every |F_theta|
/// and of |F|, found from the rational structure of the frequency
/// differences; its uniform grid integrates |F|^6 exactly.
struct Domain {
    enum class Kind { ball, period_cell, box };
    Kind kind = Kind::ball;
    double box_factor = 4.0;  // box: [-c R, c R]^2

    static Domain ball() { return {Kind::ball, 4.0}; }
    static Domain period_cell() { return {Kind::period_cell, 4.0}; }
    static Domain box(double c = 4.0) { return {Kind::box, c}; }
};

std::string to_string(Domain::Kind k);

/// Smallest L > 0 (up to max_period) with L (f_j - f_0) an integer for all
/// j, from continued-fraction approximations. nullopt if none is found.
std::optional<double> rational_period(std::span<const double> freqs, double max_period = 1e9);

struct RatioResult {
    double lhs = 0.0;  // ||F||_6 on the domain
    double rhs = 0.0;  // (sum_theta ||F_theta||_6^2)^(1/2)
    double ratio = 0.0;
    std::size_t caps = 0;
    std::size_t grid_points = 0;
    double cell_x = 0.0, cell_y = 0.0;  // period cell side lengths, if used
};

/// l^2 decoupling ratio ||F||_6 / (sum ||F_theta||_6^2)^(1/2). Throws
/// Error("undersampled") if the grid cannot resolve |F|^6.
RatioResult decoupling_ratio(const CapFunction& f, const Domain& domain);

enum class Ensemble { unit, random_signs, measure };
std::string to_string(Ensemble e);

struct DecouplingRow {
    double R = 0.0;
    RatioResult result;
};

struct DecouplingReport {
    std::string side;  // "global" (period cell or box) or "local" (ball)
    std::string curve;
    Ensemble ensemble = Ensemble::unit;
    std::vector<DecouplingRow> rows;
    PowerFit fit_vs_R;     // log ratio against log R
    PowerFit fit_vs_caps;  // log ratio against log (number of caps)
    double fitted_epsilon = 0.0;  // slope against log R
};

/// Ratios over R_list for caps on the given curve. The flat curve puts the
/// cap centers on a horizontal line (negative control).
DecouplingReport decoupling_scan(const CurveSpec& curve, const std::vector<double>& R_list,
                                 Ensemble ensemble, const Domain& domain, std::uint64_t seed = 1,
                                 const DiscreteMeasure2D* measure = nullptr);

/// int_0^1 |sum_{n=1}^N e(n x)|^6 dx, exact through a Riemann sum with 6N+1 nodes.
double dirichlet_l6_pow6(int N);

struct RefinedResult {
    double lhs = 0.0;        // ||F||_{L^6(union of squares)}
    double rhs_core = 0.0;   // (sum_theta ||F_theta||_6^6)^(1/6)
    double N = 0.0;          // max tubes meeting one square
    double ratio = 0.0;      // lhs / (N^(1/3) rhs_core)
};

/// F = sum a_T W_T with theta groups taken from theta_index. ||F_theta||_6^6
/// is exact because the tubes of one cap have disjoint supports. N is the
/// largest number of tubes meeting a square unless given.
RefinedResult refined_decoupling_ratio(const std::vector<Tube>& tubes,
                                       const std::vector<cplx>& coefficients,
                                       const std::vector<Square>& squares, double R,
                                       std::optional<double> N = std::nullopt);

enum class SumProductMethod { brute_force, hashed };

struct SumProductResult {
    std::uint64_t count = 0;
    double normalized = 0.0;  // count / |A|^3
    SumProductMethod method = SumProductMethod::hashed;
};

/// 6-tuples of A with |a1 + a2 + a3 - a4 - a5 - a6| <= delta and
/// |log(a1 a2 a3) - log(a4 a5 a6)| <= delta. brute_force allows |A| <= 40,
/// hashed |A| <= 300. A must lie in [1, 2] and be delta-separated.
SumProductResult sumproduct_experiment(const std::vector<double>& A, double delta,
                                       SumProductMethod method = SumProductMethod::hashed);

}  // namespace frostlab
