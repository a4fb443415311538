// Compiled with -mavx2 -mfma; only reached through the dispatcher after a
// runtime CPU check.

#include "orlicz/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace orlicz::kernels {
namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline __m256d abs_pd(__m256d v) {
    return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

double dot_avx2(std::span<const double> w, std::span<const double> x) {
    const std::size_t n = w.size();
    const double* pw = w.data();
    const double* px = x.data();
    __m256d a0 = _mm256_setzero_pd();
    __m256d a1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        a0 = _mm256_fmadd_pd(_mm256_loadu_pd(pw + i), _mm256_loadu_pd(px + i), a0);
        a1 = _mm256_fmadd_pd(_mm256_loadu_pd(pw + i + 4), _mm256_loadu_pd(px + i + 4), a1);
    }
    for (; i + 4 <= n; i += 4)
        a0 = _mm256_fmadd_pd(_mm256_loadu_pd(pw + i), _mm256_loadu_pd(px + i), a0);
    double acc = hsum(_mm256_add_pd(a0, a1));
    for (; i < n; ++i) acc += pw[i] * px[i];
    return acc;
}

MomentSums moments_avx2(std::span<const double> w, std::span<const double> s,
                        std::span<const double> g, std::span<const double> m1,
                        std::span<const double> m2) {
    const std::size_t n = w.size();
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);
    __m256d r1 = zero, r2 = zero, r3 = zero, r4 = zero, r5 = zero;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vw = _mm256_loadu_pd(w.data() + i);
        const __m256d vs = _mm256_loadu_pd(s.data() + i);
        const __m256d vg = _mm256_loadu_pd(g.data() + i);
        const __m256d wm1 = _mm256_mul_pd(vw, _mm256_loadu_pd(m1.data() + i));
        const __m256d wm2 = _mm256_mul_pd(vw, _mm256_loadu_pd(m2.data() + i));
        const __m256d pos = _mm256_and_pd(_mm256_cmp_pd(vs, zero, _CMP_GT_OQ), one);
        const __m256d neg = _mm256_and_pd(_mm256_cmp_pd(vs, zero, _CMP_LT_OQ), one);
        const __m256d sg = _mm256_sub_pd(pos, neg);
        r1 = _mm256_fmadd_pd(wm1, _mm256_mul_pd(sg, vg), r1);
        r2 = _mm256_fmadd_pd(wm2, _mm256_mul_pd(vg, vg), r2);
        r3 = _mm256_fmadd_pd(wm1, abs_pd(vs), r3);
        r4 = _mm256_fmadd_pd(wm2, _mm256_mul_pd(vs, vg), r4);
        r5 = _mm256_fmadd_pd(wm2, _mm256_mul_pd(vs, vs), r5);
    }
    MomentSums r{hsum(r1), hsum(r2), hsum(r3), hsum(r4), hsum(r5)};
    for (; i < n; ++i) {
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

// No FMA here: the quotient is bit-identical to the scalar reference.
void product_ratio_avx2(std::span<const double> a, std::span<const double> b,
                        std::span<const double> c, std::span<double> out) {
    const std::size_t n = out.size();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d p = _mm256_mul_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i));
        _mm256_storeu_pd(out.data() + i, _mm256_div_pd(p, _mm256_loadu_pd(c.data() + i)));
    }
    for (; i < n; ++i) out[i] = a[i] * b[i] / c[i];
}

void scaled_abs_avx2(std::span<const double> v, double scale, std::span<double> out) {
    const std::size_t n = out.size();
    const __m256d vs = _mm256_set1_pd(scale);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out.data() + i, _mm256_mul_pd(abs_pd(_mm256_loadu_pd(v.data() + i)), vs));
    for (; i < n; ++i) out[i] = std::fabs(v[i]) * scale;
}

}  // namespace

extern const KernelTable kAvx2Table;
const KernelTable kAvx2Table{"avx2", dot_avx2, moments_avx2, product_ratio_avx2, scaled_abs_avx2};

}  // namespace orlicz::kernels
