#pragma once

#include <vector>

#include "frostlab/common.hpp"
#include "frostlab/fit.hpp"
#include "frostlab/measures.hpp"

namespace frostlab {

/// mu^(x) = sum_j w_j e(p_j . x).
cplx fourier_eval(const DiscreteMeasure2D& mu, Vec2 x);

/// Grid spacing per axis for quadrature over B_R.
struct GridSpacing {
    double hx = 0.0;
    double hy = 0.0;
};

/// |mu^|^p is band-limited to [-p W_k / 2, p W_k / 2] along axis k, where W_k
/// is the width of the atoms' bounding box. A Riemann sum with h_k below
/// 2 / (p W_k) integrates such a function without aliasing, so that is the
/// hard limit. The default halves it and never exceeds R / 64, which keeps
/// the disk boundary resolved for nearly degenerate measures.
GridSpacing max_spacing(const DiscreteMeasure2D& mu, double p);
GridSpacing default_spacing(const DiscreteMeasure2D& mu, double R, double p);

struct NormResult {
    double value = 0.0;     // (h_x h_y sum |mu^|^p)^(1/p)
    double pow_p = 0.0;     // h_x h_y sum |mu^|^p
    GridSpacing spacing;
    std::size_t grid_points = 0;  // lattice points in the closed disk
};

/// L^p norm of mu^ over the closed disk |x| <= R by the Riemann sum on the
/// lattice h Z^2 (per-axis steps). Real measures use the symmetry
/// |mu^(-x)| = |mu^(x)| so only the half plane y >= 0 is evaluated.
/// Throws Error("undersampled") if a step exceeds max_spacing.
NormResult lp_norm_on_ball(const DiscreteMeasure2D& mu, double R, double p, GridSpacing h);
NormResult lp_norm_on_ball(const DiscreteMeasure2D& mu, double R, double p, double h);
NormResult lp_norm_on_ball(const DiscreteMeasure2D& mu, double R, double p);

struct DecayRow {
    double R = 0.0;
    GridSpacing spacing;
    double l6_pow6 = 0.0;
    std::size_t grid_points = 0;
    double runtime_ms = 0.0;
};

struct DecayOptions {
    double p = 6.0;
    double slack = 0.15;
    double spacing_scale = 1.0;  // multiplies the default spacing
};

struct DecayReport {
    std::vector<DecayRow> per_R;
    PowerFit fit_all;       // every R
    PowerFit fit_trimmed;   // smallest R excluded; decides pass/fail
    double fitted_exponent = 0.0;
    double target_exponent = 0.0;  // 2 - 2s
    double slack = 0.0;
    bool passed = false;
};

/// Computes ||mu^||_{L^p(B_R)}^p for every R and fits the growth exponent.
/// Throws Error("insufficient scales for fit") with fewer than three radii.
DecayReport decay_scan(const DiscreteMeasure2D& mu, double s, const std::vector<double>& R_list,
                       const DecayOptions& opt = {});

/// Offsets (in units of delta / 2) and normalized weights of the smoothing
/// cluster used by mollify. Weights follow (1 - |xi|^2)^4 at xi = offset / delta.
struct ClusterPoint {
    Vec2 offset;
    double weight;
};
std::vector<ClusterPoint> mollifier_cluster(double delta);

/// Replaces each atom by the 3 x 3 cluster on the delta / 2 grid centered at
/// it, splitting its mass by the cluster weights.
DiscreteMeasure2D mollify(const DiscreteMeasure2D& mu, double delta);

/// Fourier transform of the continuous radial bump psi = (5 / pi)(1 - |xi|^2)^4
/// on the unit disk: psi^(k) = 3840 J_5(2 pi |k|) / (2 pi |k|)^5.
double psi_hat(Vec2 k);

}  // namespace frostlab
