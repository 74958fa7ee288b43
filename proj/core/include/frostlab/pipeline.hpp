#pragma once

#include <vector>

#include "frostlab/caps.hpp"
#include "frostlab/furstenberg.hpp"
#include "frostlab/incidence.hpp"
#include "frostlab/wavepackets.hpp"
#include "frostlab/measures.hpp"

namespace frostlab {

struct PipelineCap {
    int theta = 0;
    std::size_t atoms = 0;
    double mass = 0.0;       // mu(theta)
    double l6_pow6 = 0.0;    // ||mu_theta^||^6 on B_R
    double ec3 = 0.0;        // Ec3(nu_theta, 1 / R)
    double r2_ec3 = 0.0;     // R^2 Ec3
    double constant = 0.0;   // Ec3 / (mu(theta)^5 R^-s)
    double constant_homogeneous = 0.0;  // Ec3 / (mu(theta)^6 R^(-s/2))
};

/// Each factor of the chain: local decoupling over theta caps, the bound
/// ||mu_theta^||^6 <~ R^2 Ec3(nu_theta, 1/R) and the product against
/// R^(2 - 2s). The weight on B_R is its indicator.
struct PipelineReport {
    double R = 0.0, s = 0.0;
    bool ad_regular = false;     // lower regularity on [1/R, 1]
    double ad_lower_constant = 0.0;
    std::size_t occupied_caps = 0;
    double expected_caps = 0.0;  // R^(s/2)
    double cap_ratio = 0.0;
    std::vector<PipelineCap> caps;
    double full_l6 = 0.0;        // ||mu^||_{L^6(B_R)}
    double decoupled_rhs = 0.0;  // (sum_theta ||mu_theta^||_6^2)^(1/2)
    double decoupling_ratio = 0.0;
    double max_cap_l6 = 0.0;     // max_theta ||mu_theta^||_6
    double max_r2_ec3 = 0.0;
    double max_l6_over_energy = 0.0;  // max_theta ||mu_theta^||^6 / (R^2 Ec3)
    double product = 0.0;        // N^3 max_theta R^2 Ec3
    double target = 0.0;         // R^(2 - 2s)
    double product_ratio = 0.0;
    double max_constant = 0.0;
};

/// mu must lie on the curve of grid (within 1/R).
PipelineReport ad_regular_pipeline(const DiscreteMeasure2D& mu, double s, const CapGrid& grid);

/// Heavy squares of one wave-packet family T: the tubes of one dyadic
/// coefficient class.
struct HeavySquareRun {
    double R = 0.0, s = 0.0, alpha = 0.0;
    double lambda = 0.0;
    std::vector<Tube> tubes;
    IncidenceResult incidences;
    HeavyLightSplit split;
    std::vector<PerTubeHeavy> per_tube;
    double max_tube_ratio = 0.0;           // max over T of the per-tube ratio
    double light_tube_limit = 0.0;         // R^((1-s)/2 - 10 alpha)
    std::vector<std::size_t> heavy_tubes;  // indices of tubes above the limit
};

HeavySquareRun heavy_square_run(std::vector<Tube> tubes, double lambda, double s, double R,
                                double alpha);

/// Every coefficient class of the heaviest pigeonhole class of mu.
struct HeavySquareScan {
    PigeonholeClass cls;
    std::size_t class_count = 0;
    double lambda_max = 0.0;
    double bound_constant = 0.0;  // max |coefficient| / (M R^(-5/4))
    std::vector<HeavySquareRun> families;  // by decreasing lambda
    std::size_t selected = 0;  // family with the most heavy squares (ties: larger lambda)
};

HeavySquareScan heavy_square_scan(const DiscreteMeasure2D& mu, double s, const CapGrid& grid,
                                  double alpha);

/// Heavy-square centers and heavy-tube axes scaled by 1/R, with
/// delta = R^(-1/2) and the domain [-1, 1]^2. Uses every tube of T when
/// no tube is heavy.
struct RescaledConfiguration {
    std::vector<Vec2> points;
    LineFamily lines;
};
RescaledConfiguration rescaled_configuration(const HeavySquareRun& run, const SquareGrid& grid);

/// Axes of the tubes scaled by 1/R (delta = R^(-1/2), domain [-1, 1]^2).
LineFamily tube_axes(const std::vector<Tube>& tubes, double R);

}  // namespace frostlab
