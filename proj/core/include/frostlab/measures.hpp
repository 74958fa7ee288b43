#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "frostlab/common.hpp"

namespace frostlab {

struct Atom1D {
    double position = 0.0;
    double weight = 0.0;
};

struct Atom2D {
    Vec2 point;
    double weight = 0.0;
};

/// Finite weighted atoms on [-1, 1], sorted by position.
///
/// Invariants (checked on construction): weights are nonnegative, positions
/// lie in [-1, 1], consecutive positions are at least resolution / 2 apart,
/// and total_mass is the sum of the weights.
class DiscreteMeasure1D {
public:
    DiscreteMeasure1D() = default;
    DiscreteMeasure1D(std::vector<Atom1D> atoms, double resolution);

    std::span<const Atom1D> atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    bool empty() const { return atoms_.empty(); }
    double resolution() const { return resolution_; }
    double total_mass() const { return total_mass_; }

    std::vector<double> positions() const;

    /// Mass of the closed interval [y - r, y + r].
    double ball_mass(double y, double r) const;

    /// Same atoms, every weight multiplied by t >= 0.
    DiscreteMeasure1D scaled(double t) const;

private:
    std::vector<Atom1D> atoms_;
    std::vector<double> prefix_;  // prefix_[i] = sum of the first i weights
    double resolution_ = 1.0;
    double total_mass_ = 0.0;
};

/// Finite weighted atoms in the plane. Atoms are kept sorted by x so ball
/// queries can prune by a window in x.
class DiscreteMeasure2D {
public:
    DiscreteMeasure2D() = default;
    DiscreteMeasure2D(std::vector<Atom2D> atoms, double resolution);

    std::span<const Atom2D> atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    bool empty() const { return atoms_.empty(); }
    double resolution() const { return resolution_; }
    double total_mass() const { return total_mass_; }

    /// Mass of the closed Euclidean ball B(y, r).
    double ball_mass(Vec2 y, double r) const;

    DiscreteMeasure2D scaled(double t) const;

    /// Restriction to atoms satisfying pred (resolution kept).
    template <class Pred>
    DiscreteMeasure2D restricted(Pred&& pred) const {
        std::vector<Atom2D> kept;
        for (const Atom2D& a : atoms_)
            if (pred(a)) kept.push_back(a);
        return DiscreteMeasure2D(std::move(kept), resolution_);
    }

    /// Axis-aligned bounding box {min corner, max corner}; zero box if empty.
    std::pair<Vec2, Vec2> bounding_box() const;

private:
    std::vector<Atom2D> atoms_;
    double resolution_ = 1.0;
    double total_mass_ = 0.0;
};

/// Middle-type Cantor measure: 2^depth equal atoms at the centers of the
/// depth-level intervals of the construction that keeps the two outer
/// sub-intervals of relative length `ratio`, started from [-1, 1].
/// Frostman exponent log 2 / log(1 / ratio); resolution 2 * ratio^depth.
DiscreteMeasure1D build_cantor(double ratio, int depth, double mass);

/// num_intervals equal atoms equally spaced on [-1, 1] (endpoints included);
/// each atom stands for one interval of length interval_length.
DiscreteMeasure1D build_ap_measure(int num_intervals, double interval_length, double mass);

/// Dimension of the Cantor measure of the given ratio.
inline double cantor_dimension(double ratio) { return std::log(2.0) / std::log(1.0 / ratio); }

struct ScaleRatio {
    double r = 0.0;
    double ratio = 0.0;  // max (or min) over centers of mu(B(y, r)) / r^s
};

/// Result of an upper (Frostman) or lower (AD) regularity scan.
///
/// For the upper check constant_fit is the smallest constant C with
/// mu(B(y, r)) <= C r^s on the scanned centers and scales; passed means
/// constant_fit <= constant_cap. For the lower check constant_fit is the
/// largest c with mu(B(y, r)) >= c r^s, and passed means constant_fit >=
/// constant_cap. exponent_fit is the least-squares slope of log(max ball
/// mass) against log r in both cases.
struct RegularityReport {
    enum class Kind { upper, lower };
    Kind kind = Kind::upper;
    double s = 0.0;
    double exponent_fit = 0.0;
    double exponent_residual = 0.0;
    double constant_fit = 0.0;
    double constant_cap = 0.0;
    std::pair<double, double> r_range{0.0, 0.0};
    std::vector<ScaleRatio> per_scale_max_ratio;
    std::vector<ScaleRatio> per_scale_min_ratio;  // filled by the lower check
    std::vector<double> per_scale_max_mass;
    bool passed = false;
};

struct RegularityOptions {
    double constant_cap = 10.0;  // upper check: C must not exceed this
    double lower_cap = 0.25;     // lower check: c must be at least this
};

/// num_scales radii geometrically spaced from r_min to r_max (inclusive).
std::vector<double> geometric_scales(double r_min, double r_max, int num_scales);

/// Upper-regularity scan. Centers: all atoms plus midpoints of consecutive
/// atoms. Throws Error("empty measure") on an empty measure and
/// Error("invalid scale range") when the preconditions on the scales fail.
RegularityReport check_frostman(const DiscreteMeasure1D& mu, double s, double r_min, double r_max,
                                int num_scales, const RegularityOptions& opt = {});
RegularityReport check_frostman(const DiscreteMeasure2D& mu, double s, double r_min, double r_max,
                                int num_scales, const RegularityOptions& opt = {});

/// Lower-regularity scan with centers restricted to the atoms.
RegularityReport check_ad_regular(const DiscreteMeasure1D& mu, double s, double r_min, double r_max,
                                  int num_scales, const RegularityOptions& opt = {});
RegularityReport check_ad_regular(const DiscreteMeasure2D& mu, double s, double r_min, double r_max,
                                  int num_scales, const RegularityOptions& opt = {});

}  // namespace frostlab
