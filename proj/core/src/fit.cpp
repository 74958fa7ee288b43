#include "frostlab/fit.hpp"

#include <cmath>
#include <vector>

#include "frostlab/common.hpp"

namespace frostlab {

PowerFit fit_power_law(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw Error("fit input size mismatch");
    if (x.size() < 2) throw Error("insufficient scales for fit");

    const std::size_t n = x.size();
    std::vector<double> lx(n), ly(n);
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw Error("nonpositive value in fit");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0.0) throw Error("insufficient scales for fit");

    PowerFit fit;
    fit.exponent = sxy / sxx;
    fit.log_constant = my - fit.exponent * mx;
    fit.points = static_cast<int>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ly[i] - (fit.exponent * lx[i] + fit.log_constant);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / static_cast<double>(n));
    return fit;
}

}  // namespace frostlab
