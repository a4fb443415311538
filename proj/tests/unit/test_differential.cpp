#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "orlicz/differential.hpp"
#include "orlicz/error.hpp"
#include "orlicz/function_space.hpp"
#include "orlicz/generators.hpp"

using namespace orlicz;

namespace {

std::pair<StepFunction, StepFunction> unit_pair(gen::Rng& rng, gen::SupportPattern pat, double p) {
    auto [f, g] = gen::random_pair(rng, pat, 16);
    return {oracle::lp_normalized(f, p), oracle::lp_normalized(g, p)};
}

}  // namespace

TEST_CASE("norm curve of L_p matches the closed form (property)") {
    gen::Rng rng(12);
    for (double p : {1.5, 2.0, 3.0, 4.0}) {
        const OrliczFunction phi = power(p);
        for (auto pat : {gen::SupportPattern::disjoint, gen::SupportPattern::proper_overlap,
                         gen::SupportPattern::equal}) {
            const auto [f, g] = unit_pair(rng, pat, p);
            const ModularSurface S(f, g, phi);
            for (double a : {0.05, 0.3, 1.0, 1.9}) {
                const NormCurveSample s = S.sample(a);
                const oracle::Curve c = oracle::lp_curve(f, g, p, a);
                CHECK(s.N == doctest::Approx(c.N).epsilon(1e-13));
                CHECK(s.Nprime == doctest::Approx(c.Np).epsilon(1e-9));
                CHECK(s.Nsecond == doctest::Approx(c.Npp).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("partials against the independent modular oracle") {
    gen::Rng rng(13);
    const OrliczFunction phi = power_log(2.0);
    const auto [f0, g0] = gen::random_pair(rng, gen::SupportPattern::proper_overlap, 16);
    const StepFunction f = normalized(f0, phi), g = normalized(g0, phi);
    const auto F = [&](double a, double e) {
        return oracle::modular_surface(f, g, [&](double u) { return phi(u); }, a, e);
    };
    const ModularSurface S(f, g, phi);
    for (double a : {0.2, 0.8}) {
        for (double e : {0.9, 1.3}) {
            CHECK(S.value(a, e) == doctest::Approx(F(a, e)).epsilon(1e-14));
            const Partials P = S.partials(a, e);
            CHECK(P.F_alpha == doctest::Approx(oracle::d1([&](double x) { return F(x, e); }, a, 1e-3)).epsilon(1e-7));
            CHECK(P.F_eta == doctest::Approx(oracle::d1([&](double x) { return F(a, x); }, e, 1e-3)).epsilon(1e-7));
            CHECK(P.F_alphaeta == doctest::Approx(oracle::d11(F, a, e, 1e-3, 1e-3)).epsilon(1e-6));
            CHECK(P.F_etaeta == doctest::Approx(oracle::d2([&](double x) { return F(a, x); }, e, 1e-3)).epsilon(1e-6));
            CHECK(P.F_alphaalpha ==
                  doctest::Approx(oracle::d2([&](double x) { return F(x, e); }, a, 1e-3)).epsilon(1e-6));
        }
    }
}

TEST_CASE("built-in finite-difference check reports small residuals") {
    gen::Rng rng(14);
    const auto [f, g] = unit_pair(rng, gen::SupportPattern::g_exceeds_f, 3.0);
    const FdResiduals r = finite_difference_check(f, g, 0.4, power(3.0));
    CHECK(r.max() <= 1e-6);
    CHECK(r.Nsecond_fd == doctest::Approx(oracle::lp_curve(f, g, 3.0, 0.4).Npp).epsilon(1e-6));
    const NormCurveSample s = norm_curve(f, g, 0.4, power(3.0));
    CHECK(s.fd_checked);
}

TEST_CASE("unit-norm precondition") {
    const StepFunction f = StepFunction::constant(2.0), g = StepFunction::constant(1.0);
    CHECK_THROWS_AS(ModularSurface(f, g, power(2.0)), PreconditionError);
    CHECK_THROWS_AS(ModularSurface(g, g, power(2.0)).value(0.0, 0.0), PreconditionError);
}

TEST_CASE("crossing points are found and skipped") {
    const StepFunction f = StepFunction::uniform({1.0, -1.0}), g = StepFunction::uniform({1.0, 1.0});
    const ModularSurface S(f, g, power(3.0));
    CHECK(S.crossing_points() == std::vector<double>{-1.0, 1.0});
    CHECK(S.is_crossing(1.0));
    CHECK_FALSE(S.is_crossing(0.5));
    std::vector<double> excluded;
    const auto samples = sweep(S, {0.5, 1.0, 2.0}, false, &excluded);
    CHECK(samples.size() == 2);
    CHECK(excluded == std::vector<double>{1.0});
}

TEST_CASE("singular integrand at a crossing when M''(0) is infinite") {
    const StepFunction f = StepFunction::uniform({1.0, -1.0}), g = StepFunction::uniform({1.0, 1.0});
    const OrliczFunction phi = power(1.5);
    const ModularSurface S(oracle::lp_normalized(f, 1.5), oracle::lp_normalized(g, 1.5), phi);
    CHECK_THROWS_AS(S.partials(1.0, 1.0), SingularIntegrandError);
    CHECK_NOTHROW(S.partials(0.5, 1.0));
}

TEST_CASE("F_eta is negative across eta (property)") {
    gen::Rng rng(15);
    for (const OrliczFunction& phi : {power(1.5), power(4.0), exp_type()}) {
        for (int k = 0; k < 10; ++k) {
            const auto [f0, g0] = gen::random_pair(rng, gen::SupportPattern::proper_overlap, 16);
            const ModularSurface S(normalized(f0, phi), normalized(g0, phi), phi);
            const double a = gen::uniform(rng, 0.0, 2.0);
            for (double e : {0.3, 1.0, 3.0}) CHECK(S.partials(a, e).F_eta < 0.0);
        }
    }
}

TEST_CASE("second-order balance with the N'' finite difference") {
    gen::Rng rng(16);
    const OrliczFunction phi = exp_type();
    const auto [f0, g0] = gen::random_pair(rng, gen::SupportPattern::equal, 16);
    const ModularSurface S(normalized(f0, phi), normalized(g0, phi), phi);
    for (double a : {0.1, 0.7, 1.5}) {
        const NormCurveSample s = S.sample(a);
        const Partials& P = s.partials;
        const double npp = oracle::d2([&](double x) { return S.norm(x); }, a, 1e-3);
        CHECK(std::fabs(P.F_alphaalpha + 2 * P.F_alphaeta * s.Nprime + P.F_etaeta * s.Nprime * s.Nprime +
                        P.F_eta * npp) <= 1e-6);
        CHECK(std::fabs(P.F_alpha + P.F_eta * s.Nprime) <= 1e-8);
    }
}
