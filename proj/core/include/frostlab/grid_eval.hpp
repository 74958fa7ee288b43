#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "frostlab/common.hpp"

namespace frostlab {

/// Uniform axis x_i = origin + i * step, i in [0, count).
struct UniformAxis {
    double origin = 0.0;
    double step = 1.0;
    std::size_t count = 0;

    double at(std::size_t i) const { return origin + static_cast<double>(i) * step; }
};

/// One block of exponential-sum values on a tensor grid.
///
/// value(i, k) is F(xs[row0 + i], ys[col0 + k]) for i < rows, k < cols.
struct GridBlock {
    std::size_t row0 = 0, col0 = 0, rows = 0, cols = 0;
    const cplx* data = nullptr;  // row-major, leading dimension cols

    cplx value(std::size_t i, std::size_t k) const { return data[i * cols + k]; }
};

/// Streams F(x, y) = sum_j c_j e(f_j . (x, y)) over the tensor grid xs x ys.
///
/// The phase factorizes as e(f_j.x x) e(f_j.y y), so each block is a dense
/// complex matrix product (rows x atoms) * (atoms x cols) done by BLAS. Phase
/// tables are generated by short multiplicative recurrences re-seeded every
/// 32 steps. Blocks reach the sink in a fixed order (column blocks outer,
/// row blocks inner), so reductions done in the sink are deterministic.
///
/// col_range(i) may restrict row i to columns [first, last); blocks whose
/// rows all have empty ranges are skipped entirely.
class TensorGridEvaluator {
public:
    struct Options {
        std::size_t row_block = 256;
        std::size_t col_block = 1024;
    };

    TensorGridEvaluator(std::span<const Vec2> freqs, std::span<const cplx> coeffs);
    TensorGridEvaluator(std::span<const Vec2> freqs, std::span<const cplx> coeffs, Options opt);

    using ColRange = std::function<std::pair<std::size_t, std::size_t>(std::size_t row)>;
    using Sink = std::function<void(const GridBlock&)>;

    void run(const UniformAxis& xs, const UniformAxis& ys, const Sink& sink,
             const ColRange& col_range = {}) const;

    std::size_t atom_count() const { return freqs_.size(); }

private:
    std::vector<Vec2> freqs_;
    std::vector<cplx> coeffs_;
    Options opt_;
};

/// Sum of |F|^p over the grid, or over columns [first, last) of row i when
/// ranges is nonempty. Rows are reduced in a fixed order.
double sum_abs_pow(const TensorGridEvaluator& ev, const UniformAxis& xs, const UniformAxis& ys,
                   double p, std::span<const std::pair<std::size_t, std::size_t>> ranges = {});

/// Pairwise (cascade) summation; the result depends only on the input order.
double pairwise_sum(std::span<const double> v);

}  // namespace frostlab
