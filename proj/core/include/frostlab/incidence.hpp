#pragma once

#include <cstdint>
#include <vector>

#include "frostlab/geometry.hpp"

namespace frostlab {

/// Tiling of [-R, R]^2 by closed squares of side sqrt(R), indexed
/// (i, j) in [0, n)^2 with n = ceil(2 R / side); square (i, j) has lower left
/// corner (-R + i side, -R + j side).
class SquareGrid {
public:
    explicit SquareGrid(double R);

    double R() const { return R_; }
    double side() const { return side_; }
    int n() const { return n_; }
    std::size_t size() const { return static_cast<std::size_t>(n_) * n_; }

    Square square(int i, int j) const;
    Square square(std::size_t id) const { return square(static_cast<int>(id / n_), static_cast<int>(id % n_)); }
    std::size_t id(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }

private:
    double R_, side_;
    int n_;
};

struct IncidenceResult {
    std::uint64_t total = 0;
    std::vector<std::uint32_t> per_square;  // indexed by SquareGrid::id
};

/// Exact count of (tube, square) pairs whose closed sets intersect. Each tube
/// is swept strip by strip over the grid rows it spans; the candidate squares
/// of a strip come from the tube's exact extent in that strip, padded by one
/// square, and are confirmed by the separating-axis test.
IncidenceResult incidence_count(const std::vector<OrientedRect>& tubes, const SquareGrid& grid);

/// Ids of the squares meeting one tube, in increasing order.
std::vector<std::size_t> squares_meeting(const OrientedRect& tube, const SquareGrid& grid);

struct HeavyLightSplit {
    double threshold = 0.0;  // R^(s/2 - alpha)
    double alpha = 0.0, s = 0.0;
    std::vector<std::size_t> heavy;  // count >= threshold
    std::vector<std::size_t> light;  // 1 <= count < threshold
    double bound_easy = 0.0;         // R^(1-s) R^(10 alpha + 2 alpha / s)
    double ratio_easy = 0.0;         // |heavy| / bound_easy
    double bound_improved = 0.0;     // R^(1 - s - 2 alpha)
    double ratio_improved = 0.0;
};

HeavyLightSplit heavy_light_split(const IncidenceResult& inc, const SquareGrid& grid, double s,
                                  double alpha);

struct PerTubeHeavy {
    std::size_t count = 0;  // heavy squares meeting the tube
    double bound = 0.0;     // |T| / R^(s/2 - alpha - 2 alpha / s)
    double ratio = 0.0;
};

PerTubeHeavy per_tube_heavy_count(const OrientedRect& tube, std::size_t family_size,
                                  const HeavyLightSplit& split, const SquareGrid& grid);

}  // namespace frostlab
