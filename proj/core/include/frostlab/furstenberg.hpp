#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "frostlab/geometry.hpp"

namespace frostlab {

/// The line {x : x . n = a} with direction (cos phi, sin phi), phi in [0, pi),
/// and normal n = (-sin phi, cos phi).
struct Line {
    double phi = 0.0;
    double a = 0.0;

    Vec2 direction() const { return {std::cos(phi), std::sin(phi)}; }
    Vec2 normal() const { return {-std::sin(phi), std::cos(phi)}; }
    /// Point of the line closest to the origin.
    Vec2 foot() const { return normal() * a; }

    static Line through(Vec2 p, Vec2 dir);
};

/// |sin(phi1 - phi2)| + |foot1 - foot2|: projection distance plus the
/// distance between the feet of the perpendiculars from the origin.
double line_distance(const Line& l1, const Line& l2);

double point_line_distance(Vec2 p, const Line& l);

/// Length of l inside the closed rectangle (0 if they miss).
double chord_length(const Line& l, const OrientedRect& r);

struct RigidMotion {
    double angle = 0.0;
    Vec2 shift;

    Vec2 apply(Vec2 p) const { return rotate(p, angle) + shift; }
    Line apply(const Line& l) const;
};

struct LineFamily {
    std::vector<Line> lines;
    double delta = 0.0;
    Square domain{0.0, 0.0, 1.0};  // region the lines are meant to cross
};

/// Worst ball count relative to C (r / delta)^s over all centers and radii.
struct DeltaSetVerdict {
    bool passed = true;
    double s = 0.0, C = 0.0, delta = 0.0;
    std::size_t size = 0;
    std::size_t radii = 0;          // radii scanned
    std::size_t violations = 0;     // (center, radius) pairs over the bound
    double worst_ratio = 0.0;       // max count / (C (r / delta)^s)
    std::size_t worst_center = 0;
    double worst_r = 0.0;
    std::size_t worst_count = 0;
    // Rectangle cross-check (lines only): max over sampled rectangles of
    // (lines crossing at full length) / (C (r / delta)^s).
    double rect_worst_ratio = 0.0;
    std::size_t rect_worst_count = 0;
    double rect_worst_r = 0.0;
};

/// |P cap B(p, r)| <= C (r / delta)^s for every p in P and r = delta 2^j up
/// to the diameter, and r = diameter. Balls are closed with relative
/// slack 1e-9.
DeltaSetVerdict check_delta_set_points(const std::vector<Vec2>& points, double delta, double s,
                                       double C);

/// The same test for lines under line_distance, plus the rectangle form: for
/// every line l and r = delta 2^j in (delta, 1], the 1 x r rectangle along l
/// centered at the middle of its chord through the domain, counting lines
/// whose chord inside it is at least full_length long.
DeltaSetVerdict check_delta_set_lines(const LineFamily& family, double s, double C,
                                      double full_length = 0.9);

enum class LineStatus { certified, not_certified, too_few };
std::string to_string(LineStatus s);

struct LinePointCheck {
    std::size_t line = 0;
    std::size_t near_points = 0;  // points within delta of the line
    std::size_t subset_size = 0;  // size of the candidate subset
    LineStatus status = LineStatus::too_few;
    DeltaSetVerdict subset_check;
};

enum class FurstenbergStatus { certified, refuted, not_certified };
std::string to_string(FurstenbergStatus s);

struct FurstenbergVerdict {
    bool is_furstenberg = false;
    FurstenbergStatus status = FurstenbergStatus::refuted;
    double delta = 0.0, s = 0.0, t = 0.0, C = 0.0;
    DeltaSetVerdict line_set_check;
    bool cardinality_check = false;  // |L| >= delta^(-t) / C
    double required_lines = 0.0;
    double required_points = 0.0;    // delta^(-s) / C per line
    std::vector<LinePointCheck> per_line_point_checks;
    std::size_t points = 0;
    double os_bound = 0.0;           // delta^(-2 s), informational
    double os_ratio = 0.0;           // |F| / os_bound
};

/// Discretized (delta, s, t, C)-Furstenberg test. For each line the candidate
/// subset is a farthest-point prefix of the nearby points of the smallest
/// admissible size (larger prefixes are tried if it fails); a failure there
/// only leaves the line uncertified. Ties in the greedy order break toward
/// the lower input index with tolerance 1e-9, so verdicts survive rigid motions.
FurstenbergVerdict verify_furstenberg(const std::vector<Vec2>& points, const LineFamily& family,
                                      double delta, double s, double t, double C);

}  // namespace frostlab
