#pragma once

#include <cstddef>
#include <vector>

#include "frostlab/curve.hpp"
#include "frostlab/measures.hpp"

namespace frostlab {

struct ThetaCap {
    int index = 0;
    double lo = 0.0, hi = 0.0;  // base interval [lo, hi)
    Vec2 center;                // (m, gamma(m)) with m the midpoint
    Vec2 tangent;
    Vec2 normal;                // long direction of the dual tubes
    int tau = 0;
};

struct TauCap {
    int index = 0;
    double lo = 0.0, hi = 0.0;
    int first_theta = 0;  // thetas [first_theta, first_theta + theta_count)
    int theta_count = 0;
};

/// Partition of [-1, 1] into round(R^(1/2)) base intervals for theta caps,
/// grouped into ceil(R^(1/4)) consecutive runs for tau caps. Every tau gets
/// ceil(N_theta / N_tau) thetas except a shorter last one.
class CapGrid {
public:
    CapGrid(const CurveSpec& curve, double R);

    double R() const { return R_; }
    const CurveSpec& curve() const { return curve_; }
    const std::vector<ThetaCap>& thetas() const { return thetas_; }
    const std::vector<TauCap>& taus() const { return taus_; }

    /// Theta cap whose base interval contains x (x = 1 goes to the last cap).
    int theta_of(double x) const;

private:
    CurveSpec curve_;
    double R_;
    std::vector<ThetaCap> thetas_;
    std::vector<TauCap> taus_;
};

CapGrid build_cap_grid(const CurveSpec& curve, double R);

/// One (D, M, P) piece of the decomposition.
struct PigeonholeClass {
    double D = 0.0;  // dyadic: active theta count in [D, 2D)
    double M = 0.0;  // dyadic: mu(theta) R^s in [M, 2M) for active theta
    double P = 0.0;  // dyadic: each active tau holds [P, 2P) active thetas
    std::vector<int> active_thetas;
    std::vector<int> active_taus;
    DiscreteMeasure2D class_measure;
    double mass = 0.0;
    bool negligible = false;
    // Ratios M / R^(s/2), D M / R^s, M P / R^(3s/4).
    double c5 = 0.0, c6 = 0.0, c7 = 0.0;
};

struct Decomposition {
    std::vector<PigeonholeClass> classes;
    std::vector<double> theta_mass;  // mu(theta) per cap
    double total_mass = 0.0;         // mass inside the 1/R neighborhood
    double outside_mass = 0.0;       // mass of atoms farther than 1/R from the curve
    std::size_t outside_atoms = 0;
};

/// Splits the nonempty theta caps into classes by dyadic level of
/// mu(theta) R^s, then by dyadic count of same-level thetas per tau. Atoms
/// farther than 1/R from the curve (vertical distance) are left out and
/// reported. Classes with M < R^-100 are tagged negligible.
Decomposition pigeonhole_decompose(const DiscreteMeasure2D& mu, double s, const CapGrid& grid);

}  // namespace frostlab
