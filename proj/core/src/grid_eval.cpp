#include "frostlab/grid_eval.hpp"

#include <cblas.h>

#include <algorithm>
#include <mutex>

namespace frostlab {

namespace {

constexpr std::size_t kReseed = 32;

void single_threaded_blas() {
    static std::once_flag flag;
    std::call_once(flag, [] { openblas_set_num_threads(1); });
}

// Writes scale_j * e(freq_j * (origin + k * step)) for k in [0, n) to
// out[k * k_stride + j * j_stride].
void fill_phases(std::span<const double> freq, std::span<const cplx> scale, double origin,
                 double step, std::size_t n, cplx* out, std::size_t k_stride, std::size_t j_stride) {
    for (std::size_t j = 0; j < freq.size(); ++j) {
        const double f = freq[j];
        const cplx mult = unit_phase(f * step);
        const cplx s = scale.empty() ? cplx(1.0) : scale[j];
        cplx cur;
        for (std::size_t k = 0; k < n; ++k) {
            if (k % kReseed == 0)
                cur = s * unit_phase(f * (origin + static_cast<double>(k) * step));
            else
                cur *= mult;
            out[k * k_stride + j * j_stride] = cur;
        }
    }
}

}  // namespace

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 16) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

TensorGridEvaluator::TensorGridEvaluator(std::span<const Vec2> freqs, std::span<const cplx> coeffs)
    : TensorGridEvaluator(freqs, coeffs, Options{}) {}

TensorGridEvaluator::TensorGridEvaluator(std::span<const Vec2> freqs, std::span<const cplx> coeffs,
                                         Options opt)
    : freqs_(freqs.begin(), freqs.end()), coeffs_(coeffs.begin(), coeffs.end()), opt_(opt) {
    if (freqs_.size() != coeffs_.size()) throw Error("frequency/coefficient size mismatch");
    if (opt_.row_block == 0 || opt_.col_block == 0) throw Error("block sizes must be positive");
    single_threaded_blas();
}

void TensorGridEvaluator::run(const UniformAxis& xs, const UniformAxis& ys, const Sink& sink,
                              const ColRange& col_range) const {
    const std::size_t J = freqs_.size();
    std::vector<double> fx(J), fy(J);
    for (std::size_t j = 0; j < J; ++j) {
        fx[j] = freqs_[j].x;
        fy[j] = freqs_[j].y;
    }

    const std::size_t rb = opt_.row_block, cbk = opt_.col_block;
    std::vector<cplx> A(rb * std::max<std::size_t>(J, 1));
    std::vector<cplx> B(std::max<std::size_t>(J, 1) * cbk);
    std::vector<cplx> C(rb * cbk);
    const cplx one(1.0), zero(0.0);

    for (std::size_t k0 = 0; k0 < ys.count; k0 += cbk) {
        const std::size_t cols = std::min(cbk, ys.count - k0);
        // B[j * cols + k] = c_j e(fy_j y_{k0 + k})
        fill_phases(fy, coeffs_, ys.at(k0), ys.step, cols, B.data(), 1, cols);

        for (std::size_t i0 = 0; i0 < xs.count; i0 += rb) {
            const std::size_t rows = std::min(rb, xs.count - i0);
            if (col_range) {
                bool any = false;
                for (std::size_t i = i0; i < i0 + rows && !any; ++i) {
                    const auto [first, last] = col_range(i);
                    any = first < last && first < k0 + cols && last > k0;
                }
                if (!any) continue;
            }
            if (J == 0) {
                std::fill(C.begin(), C.begin() + static_cast<std::ptrdiff_t>(rows * cols), zero);
            } else {
                // A[i * J + j] = e(fx_j x_{i0 + i})
                fill_phases(fx, {}, xs.at(i0), xs.step, rows, A.data(), J, 1);
                cblas_zgemm(CblasRowMajor, CblasNoTrans, CblasNoTrans, static_cast<int>(rows),
                            static_cast<int>(cols), static_cast<int>(J), &one, A.data(),
                            static_cast<int>(J), B.data(), static_cast<int>(cols), &zero, C.data(),
                            static_cast<int>(cols));
            }
            sink(GridBlock{i0, k0, rows, cols, C.data()});
        }
    }
}

double sum_abs_pow(const TensorGridEvaluator& ev, const UniformAxis& xs, const UniformAxis& ys,
                   double p, std::span<const std::pair<std::size_t, std::size_t>> ranges) {
    if (!ranges.empty() && ranges.size() != xs.count) throw Error("one column range per row");
    const bool sixth = p == 6.0;
    std::vector<double> row_sums(xs.count, 0.0);
    auto sink = [&](const GridBlock& b) {
        for (std::size_t i = 0; i < b.rows; ++i) {
            const std::size_t row = b.row0 + i;
            std::size_t first = b.col0, last = b.col0 + b.cols;
            if (!ranges.empty()) {
                first = std::max(first, ranges[row].first);
                last = std::min(last, ranges[row].second);
            }
            double acc = 0.0;
            for (std::size_t k = first; k < last; ++k) {
                const double v = std::norm(b.value(i, k - b.col0));
                acc += sixth ? v * v * v : std::pow(v, 0.5 * p);
            }
            row_sums[row] += acc;
        }
    };
    if (ranges.empty())
        ev.run(xs, ys, sink);
    else
        ev.run(xs, ys, sink, [&](std::size_t row) { return ranges[row]; });
    return pairwise_sum(row_sums);
}

}  // namespace frostlab
