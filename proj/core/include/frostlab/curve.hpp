#pragma once

#include <vector>

#include "frostlab/common.hpp"
#include "frostlab/measures.hpp"

namespace frostlab {

enum class CurveKind { parabola, custom, flat_unchecked };

struct CurveSample {
    double x = 0.0;
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

/// Graph of a polynomial gamma on [-1, 1] with a certified bound on the
/// curvature term |gamma''|.
class CurveSpec {
public:
    CurveKind kind() const { return kind_; }
    const std::vector<double>& coefficients() const { return coeffs_; }  // low to high degree
    double gamma_d2_min() const { return d2_min_; }
    double gamma_d2_max() const { return d2_max_; }
    const std::vector<CurveSample>& samples() const { return samples_; }

    double gamma(double x) const;
    double d1(double x) const;
    double d2(double x) const;

    Vec2 point(double x) const { return {x, gamma(x)}; }
    /// Unit tangent (1, gamma') / |.|.
    Vec2 tangent(double x) const;
    /// Unit normal (-gamma', 1) / |.|, rotated +90 degrees from the tangent.
    Vec2 normal(double x) const;

private:
    friend CurveSpec make_curve(CurveKind, const std::vector<double>&, int);
    friend CurveSpec make_flat_curve_unchecked(int);

    CurveKind kind_ = CurveKind::parabola;
    std::vector<double> coeffs_;
    std::vector<double> d1_coeffs_;
    std::vector<double> d2_coeffs_;
    double d2_min_ = 0.0;
    double d2_max_ = 0.0;
    std::vector<CurveSample> samples_;
};

/// Parabola gamma(x) = x^2, or a custom polynomial with coefficients given
/// from low to high degree. For custom curves min |gamma''| on [-1, 1] is
/// certified by branch-and-bound on Taylor enclosures of gamma''; the result
/// is exact to 1e-12. Throws Error("degenerate curvature") if gamma''
/// changes sign or its certified minimum modulus is below 1e-6.
CurveSpec make_curve(CurveKind kind, const std::vector<double>& coefficients = {},
                     int grid_points = 1001);

/// Straight line gamma = 0 with no curvature certificate. Test harnesses use
/// it for flat negative controls; make_curve never produces it.
CurveSpec make_flat_curve_unchecked(int grid_points = 1001);

/// Each atom (x, w) maps to ((x, gamma(x)), w).
DiscreteMeasure2D lift_measure(const DiscreteMeasure1D& nu, const CurveSpec& curve);

}  // namespace frostlab
