#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "orlicz/kernels.hpp"

using namespace orlicz;

namespace {

std::vector<double> randv(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> v(n);
    for (double& x : v) x = d(rng);
    return v;
}

bool close(double a, double b) { return std::fabs(a - b) <= 1e-12 * std::max(1.0, std::fabs(a)); }

}  // namespace

TEST_CASE("scalar kernels on hand-computed inputs") {
    const kernels::KernelTable& s = kernels::scalar_table();
    const std::vector<double> w{0.25, 0.5, 0.25}, x{1.0, -2.0, 4.0};
    CHECK(s.dot(w, x) == doctest::Approx(0.25 - 1.0 + 1.0));

    std::vector<double> out(3);
    s.product_ratio(x, x, std::vector<double>{1.0, 2.0, 4.0}, out);
    CHECK(out == std::vector<double>{1.0, 2.0, 4.0});
    s.scaled_abs(x, 0.5, out);
    CHECK(out == std::vector<double>{0.5, 1.0, 2.0});

    const std::vector<double> sv{1.0, -1.0, 0.0}, g{2.0, 1.0, 3.0}, m1{1.0, 1.0, 1.0}, m2{2.0, 2.0, 2.0};
    const kernels::MomentSums m = s.moments(w, sv, g, m1, m2);
    CHECK(m.s1 == doctest::Approx(0.25 * 2.0 - 0.5 * 1.0));
    CHECK(m.s2 == doctest::Approx(0.25 * 2 * 4 + 0.5 * 2 * 1 + 0.25 * 2 * 9));
    CHECK(m.s3 == doctest::Approx(0.75));
    CHECK(m.s4 == doctest::Approx(0.25 * 2 * 2 - 0.5 * 2 * 1));
    CHECK(m.s5 == doctest::Approx(0.25 * 2 + 0.5 * 2));
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
    const kernels::KernelTable* v = kernels::avx2_table();
    if (v == nullptr) {
        MESSAGE("AVX2 variant not available on this machine");
        return;
    }
    const kernels::KernelTable& s = kernels::scalar_table();
    std::mt19937_64 rng(3);
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 17u, 63u, 64u, 1000u, 1023u}) {
        const auto w = randv(rng, n, 0.0, 1.0), a = randv(rng, n, -3.0, 3.0), b = randv(rng, n, -3.0, 3.0);
        const auto c = randv(rng, n, 0.5, 2.0), m1 = randv(rng, n, 0.0, 5.0), m2 = randv(rng, n, 0.0, 5.0);
        CHECK(close(s.dot(w, a), v->dot(w, a)));

        const kernels::MomentSums x = s.moments(w, a, b, m1, m2), y = v->moments(w, a, b, m1, m2);
        CHECK(close(x.s1, y.s1));
        CHECK(close(x.s2, y.s2));
        CHECK(close(x.s3, y.s3));
        CHECK(close(x.s4, y.s4));
        CHECK(close(x.s5, y.s5));

        std::vector<double> o1(n), o2(n);
        s.product_ratio(a, b, c, o1);
        v->product_ratio(a, b, c, o2);
        for (std::size_t i = 0; i < n; ++i) CHECK(close(o1[i], o2[i]));
        s.scaled_abs(a, 1.7, o1);
        v->scaled_abs(a, 1.7, o2);
        CHECK(o1 == o2);
    }
}

TEST_CASE("avx2 product_ratio keeps IEEE special values") {
    const kernels::KernelTable* v = kernels::avx2_table();
    if (v == nullptr) return;
    const double inf = INFINITY;
    const std::vector<double> a{0.0, 1.0, inf, 2.0, 0.0}, b{1.0, inf, 1.0, 0.0, 0.0}, c{0.0, 1.0, 2.0, 0.0, 1.0};
    std::vector<double> o1(5), o2(5);
    kernels::scalar_table().product_ratio(a, b, c, o1);
    v->product_ratio(a, b, c, o2);
    for (std::size_t i = 0; i < 5; ++i) {
        if (std::isnan(o1[i]))
            CHECK(std::isnan(o2[i]));
        else
            CHECK(o1[i] == o2[i]);
    }
}

TEST_CASE("active table is one of the compiled variants") {
    const auto name = kernels::active().name;
    CHECK((name == kernels::scalar_table().name ||
           (kernels::avx2_table() != nullptr && name == kernels::avx2_table()->name)));
}
