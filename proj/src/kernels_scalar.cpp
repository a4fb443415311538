#include "orlicz/kernels.hpp"

#include <cmath>

namespace orlicz::kernels {
namespace {

double dot_scalar(std::span<const double> w, std::span<const double> x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * x[i];
    return acc;
}

MomentSums moments_scalar(std::span<const double> w, std::span<const double> s,
                          std::span<const double> g, std::span<const double> m1,
                          std::span<const double> m2) {
    MomentSums r;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double si = s[i];
        const double sg = (si > 0.0) ? 1.0 : ((si < 0.0) ? -1.0 : 0.0);
        const double wm1 = w[i] * m1[i];
        const double wm2 = w[i] * m2[i];
        r.s1 += wm1 * (sg * g[i]);
        r.s2 += wm2 * (g[i] * g[i]);
        r.s3 += wm1 * std::fabs(si);
        r.s4 += wm2 * (si * g[i]);
        r.s5 += wm2 * (si * si);
    }
    return r;
}

void product_ratio_scalar(std::span<const double> a, std::span<const double> b,
                          std::span<const double> c, std::span<double> out) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i] / c[i];
}

void scaled_abs_scalar(std::span<const double> v, double scale, std::span<double> out) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::fabs(v[i]) * scale;
}

constexpr KernelTable kScalar{"scalar", dot_scalar, moments_scalar, product_ratio_scalar,
                              scaled_abs_scalar};

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

}  // namespace orlicz::kernels
