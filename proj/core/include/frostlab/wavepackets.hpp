#pragma once

#include <vector>

#include "frostlab/caps.hpp"
#include "frostlab/geometry.hpp"

namespace frostlab {

/// R^(1/2) x R rectangle dual to a theta cap. Its long side points along the
/// cap normal; (iu, iv) index it in the lattice spanned by width * tangent
/// and length * normal.
struct Tube {
    Vec2 center;
    Vec2 direction;   // unit, long axis
    double width = 0.0;
    double length = 0.0;
    int theta_index = 0;
    int iu = 0, iv = 0;
    Vec2 frequency;   // xi_theta
    cplx coefficient = 0.0;
    double lambda_class = 0.0;  // dyadic: |coefficient| in [lambda, 2 lambda)

    /// Support rectangle; its u axis is the tangent (short side).
    OrientedRect rect() const {
        return {center, Vec2{direction.y, -direction.x}, width / 2, length / 2};
    }
};

/// Bump b(t) = cos^2(pi t) on |t| <= 1/2, zero outside.
double bump(double t);

/// W_T(x) = R^(-3/4) e(xi_theta . x) b(u / R^(1/2)) b(v / R) in tube
/// coordinates (u across, v along) centered at the tube center.
cplx wave_packet(const Tube& T, double R, Vec2 x);

/// All lattice tubes of one cap that meet [-R, R]^2. Cells are half-open
/// toward lower index, so every point of the plane lies in exactly one tube.
std::vector<Tube> tubes_for_theta(const CapGrid& grid, int theta);

/// Lattice index of the tube containing x (ties go to the lower index).
std::pair<int, int> tube_index_of(const CapGrid& grid, int theta, Vec2 x);

/// F_theta(x) = R^(s-2) psi^(x / R) sum_{atoms in theta} w_j e(p_j . x), the
/// normalized transform of the cap measure smoothed at scale 1/R.
cplx f_theta(const DiscreteMeasure2D& cap_measure, double s, double R, Vec2 x);

struct WavePacketOptions {
    int nodes_across = 16;
    int nodes_along = 32;
    double floor_exponent = 12.0;  // drop tubes below R^-floor * max |coefficient|
};

struct WavePacketResult {
    std::vector<Tube> tubes;      // kept tubes, all active thetas of the class
    double lambda_max = 0.0;      // largest |coefficient|
    double bound_constant = 0.0;  // max |coefficient| / (M R^(-5/4))
    std::size_t dropped = 0;      // below the negligible floor
};

/// Coefficients <F_theta, W_T> by the tensor midpoint rule over each tube.
/// Throws Error("undersampled") if an atom's relative frequency completes
/// more than a quarter cycle between nodes.
WavePacketResult wavepacket_coefficients(const PigeonholeClass& cls, const CapGrid& grid, double s,
                                         const WavePacketOptions& opt = {});

struct BoxCount {
    std::size_t count = 0;
    double bound = 0.0;  // (Delta / sqrt R)^(1-s) M R^((s-5)/2) / lambda^2
    double ratio = 0.0;
};

/// Tubes of the given dyadic class lying inside box (closed, relative slack
/// 1e-9), against the box-count bound for a box Delta x R.
BoxCount count_tubes_in_box(const std::vector<Tube>& tubes, double lambda, const OrientedRect& box,
                            double M, double s, double R);

/// Integral of |sum a_T W_T|^6 over q by the midpoint rule with spacing
/// below 1 / (6 * frequency spread) and at least 32 nodes per side. Tubes
/// missing q are skipped. nodes_out receives the nodes per side.
double l6_pow6_on_square(const std::vector<Tube>& tubes, const std::vector<cplx>& coefficients,
                         const Square& q, double R, int* nodes_out = nullptr);

struct BushResult {
    double lhs = 0.0;    // integral over q of |sum a_T W_T|^6
    double rhs = 0.0;    // R^(-7/2) D^3 P^2 max |a_T|^6
    double ratio = 0.0;
    int nodes = 0;       // quadrature nodes per side
};

/// Sixth power integral over the square q (l6_pow6_on_square) compared with
/// the bush bound.
BushResult bush_l6(const std::vector<Tube>& bush, const std::vector<cplx>& coefficients,
                   const Square& q, double R, double D, double P);

}  // namespace frostlab
