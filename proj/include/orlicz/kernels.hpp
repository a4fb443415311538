#pragma once

// Data-parallel inner loops shared by the modular, the partial derivatives of
// the modular surface and the condition-ratio sweeps.
//
// Every kernel has a scalar reference implementation. Vector variants are
// compiled into separate translation units and picked once at startup from
// the CPU feature set; ORLICZ_KERNELS=scalar|avx2 overrides the choice.

#include <cstddef>
#include <span>
#include <string_view>

namespace orlicz::kernels {

/// Raw sums over cells used by the five partials of F(alpha, eta).
///   s1 = sum w * m1 * sgn(s) * g
///   s2 = sum w * m2 * g^2
///   s3 = sum w * m1 * |s|
///   s4 = sum w * m2 * s * g
///   s5 = sum w * m2 * s^2
struct MomentSums {
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;
    double s4 = 0.0;
    double s5 = 0.0;
};

struct KernelTable {
    std::string_view name;
    double (*dot)(std::span<const double> w, std::span<const double> x);
    MomentSums (*moments)(std::span<const double> w, std::span<const double> s,
                          std::span<const double> g, std::span<const double> m1,
                          std::span<const double> m2);
    // out[i] = a[i] * b[i] / c[i]
    void (*product_ratio)(std::span<const double> a, std::span<const double> b,
                          std::span<const double> c, std::span<double> out);
    // out[i] = |v[i]| * scale
    void (*scaled_abs)(std::span<const double> v, double scale, std::span<double> out);
};

const KernelTable& scalar_table();

/// nullptr when the variant is not compiled in or the CPU lacks the feature.
const KernelTable* avx2_table();

/// The table selected for this process.
const KernelTable& active();

double dot(std::span<const double> w, std::span<const double> x);
MomentSums moments(std::span<const double> w, std::span<const double> s,
                   std::span<const double> g, std::span<const double> m1,
                   std::span<const double> m2);
void product_ratio(std::span<const double> a, std::span<const double> b,
                   std::span<const double> c, std::span<double> out);
void scaled_abs(std::span<const double> v, double scale, std::span<double> out);

}  // namespace orlicz::kernels
