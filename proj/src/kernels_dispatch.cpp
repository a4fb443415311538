#include "orlicz/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace orlicz::kernels {

#if defined(ORLICZ_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif

const KernelTable* avx2_table() {
#if defined(ORLICZ_HAVE_AVX2)
    static const bool supported = [] {
        __builtin_cpu_init();
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    }();
    return supported ? &kAvx2Table : nullptr;
#else
    return nullptr;
#endif
}

namespace {

const KernelTable& select() {
    const char* forced = std::getenv("ORLICZ_KERNELS");
    if (forced != nullptr && std::strcmp(forced, "scalar") == 0) return scalar_table();
    if (const KernelTable* t = avx2_table()) return *t;
    return scalar_table();
}

}  // namespace

const KernelTable& active() {
    static const KernelTable& table = select();
    return table;
}

double dot(std::span<const double> w, std::span<const double> x) { return active().dot(w, x); }

MomentSums moments(std::span<const double> w, std::span<const double> s,
                   std::span<const double> g, std::span<const double> m1,
                   std::span<const double> m2) {
    return active().moments(w, s, g, m1, m2);
}

void product_ratio(std::span<const double> a, std::span<const double> b,
                   std::span<const double> c, std::span<double> out) {
    active().product_ratio(a, b, c, out);
}

void scaled_abs(std::span<const double> v, double scale, std::span<double> out) {
    active().scaled_abs(v, scale, out);
}

}  // namespace orlicz::kernels
