#include <cmath>
#include <random>

#include "doctest.h"
#include "orlicz/conditions.hpp"
#include "orlicz/constructions.hpp"
#include "orlicz/error.hpp"

using namespace orlicz;

TEST_CASE("power functions: constant ratios") {
    for (double p : {1.25, 2.0, 2.5, 7.0}) {
        const OrliczFunction phi = power(p);
        const ConditionReport d2 = check_delta2(phi);
        CHECK(d2.passed);
        CHECK(d2.witness_sup == doctest::Approx(p).epsilon(1e-12));
        CHECK(d2.min_ratio == doctest::Approx(p).epsilon(1e-12));
        const ConditionReport d2p = check_delta2plus(phi);
        CHECK(d2p.passed);
        CHECK(d2p.witness_sup == doctest::Approx(p - 1.0).epsilon(1e-12));
        CHECK(check_axioms(phi).passed);
    }
}

TEST_CASE("u itself is not an Orlicz function") {
    const OrliczFunction lin = power(1.0);
    CHECK_FALSE(check_axioms(lin).passed);
    const ConditionReport d2 = check_delta2(lin);
    CHECK_FALSE(d2.passed);
    CHECK(d2.min_ratio == doctest::Approx(1.0));
}

TEST_CASE("random exponents: witness equals p (property)") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> P(1.05, 8.0);
    for (int k = 0; k < 40; ++k) {
        const double p = P(rng);
        CHECK(check_delta2(power(p)).witness_sup == doctest::Approx(p).epsilon(1e-12));
        CHECK(check_delta2plus(power(p)).witness_sup == doctest::Approx(p - 1.0).epsilon(1e-12));
    }
}

TEST_CASE("power_log: bounded but non-constant ratios") {
    const ConditionReport r = check_delta2(power_log(2.0));
    CHECK(r.passed);
    CHECK(r.witness_sup > 2.0);
    CHECK(r.witness_sup < 3.0);
    CHECK(r.min_ratio > 1.0);
    CHECK(check_delta2plus(power_log(2.0)).passed);
}

TEST_CASE("exp_type fails both growth conditions") {
    const ConditionReport d2 = check_delta2(exp_type());
    CHECK_FALSE(d2.passed);
    CHECK_FALSE(d2.failures.empty());
    CHECK_FALSE(check_delta2plus(exp_type()).passed);
    CHECK(check_axioms(exp_type()).passed);
}

TEST_CASE("grid validation") {
    const OrliczFunction phi = power(2.0);
    CHECK_THROWS_AS(check_delta2(phi, 1e-8, GeometricGrid{0.0, 10.0, 8}), PreconditionError);
    CHECK_THROWS_AS(check_delta2(phi, 1e-8, GeometricGrid{2.0, 1.0, 8}), PreconditionError);
    CHECK_THROWS_AS(check_delta2(phi, 1e-8, GeometricGrid{1.0, 2.0, 0}), PreconditionError);
    const std::vector<double> pts = GeometricGrid{1.0, 8.0, 4}.points();
    CHECK(pts.front() == 1.0);
    CHECK(pts.back() == 8.0);
    CHECK(pts.size() == 13);
}

TEST_CASE("default grid respects u_max") {
    const GeometricGrid g = default_condition_grid(power(2.0, 64.0));
    CHECK(g.hi == 64.0);
    CHECK(g.lo == doctest::Approx(1e-8));
}

TEST_CASE("observed zero class matches the catalog") {
    CHECK(observe_zero_class(power(1.5)) == ZeroClass::infinite);
    CHECK(observe_zero_class(power(2.0)) == ZeroClass::finite_positive);
    CHECK(observe_zero_class(power(3.0)) == ZeroClass::zero);
    CHECK(observe_zero_class(exp_type()) == ZeroClass::finite_positive);
    CHECK(classify_second_derivative_at_zero(power(4.0)) == ZeroClass::zero);
    const OrliczFunction liar = power(4.0).with_zero_class(ZeroClass::infinite);
    CHECK_THROWS_AS(classify_second_derivative_at_zero(liar), PreconditionError);
}

TEST_CASE("axioms flag a non-convex piecewise derivative") {
    // M' = u on [0, 1], then constant 1 afterwards: convex but not superlinear at infinity
    const OrliczFunction flat = make_piecewise({0.0, 1.0}, {{Segment::Rule::linear, {0.0, 1.0, 0.0, 0.0}},
                                                            {Segment::Rule::constant, {1.0, 0.0, 0.0, 0.0}}},
                                               power(2.0), "test", {});
    const ConditionReport ax = check_axioms(flat);
    CHECK_FALSE(ax.passed);
    CHECK(ax.witness_sup > 0.0);
}
