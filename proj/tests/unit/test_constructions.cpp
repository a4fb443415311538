#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "orlicz/conditions.hpp"
#include "orlicz/constructions.hpp"
#include "orlicz/error.hpp"

using namespace orlicz;

TEST_CASE("equivalent construction for p = 2 is the chained quadratic") {
    const OrliczFunction phi = power(2.0);
    const OrliczFunction m1 = build_delta2plus_equivalent(phi);
    const PiecewiseOrlicz* pw = as_piecewise(m1);
    REQUIRE(pw != nullptr);
    CHECK(m1.kind() == Kind::piecewise_hermite);
    CHECK(m1.declared_zero_class() == phi.declared_zero_class());
    // slopes: s_in = 2 and s_k = (2^(k+2) - 2^(k+1) - 1) / (2^k - 1/2) = 2
    for (double k : pw->knots()) {
        if (k < 2.0) continue;
        CHECK(m1.second_derivative(k + 0.25) == doctest::Approx(2.0));
    }
    // exactly M at octave ends 2^k
    for (int k = 1; k <= 20; ++k) {
        const double a = std::exp2(k);
        CHECK(m1.derivative(a) == doctest::Approx(phi.derivative(a)).epsilon(1e-13));
    }
}

TEST_CASE("equivalent construction: envelope and growth for other sources (property)") {
    for (const OrliczFunction& phi : {power(1.5), power(2.5), power(4.0), power_log(2.0)}) {
        const OrliczFunction m1 = build_delta2plus_equivalent(phi);
        const double p = check_delta2(phi).witness_sup;
        const GeometricGrid g{1e-6, 1048576.0, 64};
        CHECK(verify_equivalence(m1, phi, 0.5, 4.0 * p, g).passed);
        const ConditionReport r = check_delta2plus(m1);
        CHECK(r.passed);
        CHECK(r.witness_sup <= 2.0 * p * std::pow(2.0, p));
        CHECK(check_axioms(m1).passed);
    }
}

TEST_CASE("equivalent construction rejects sources outside Delta_2") {
    CHECK_THROWS_AS(build_delta2plus_equivalent(exp_type()), PreconditionError);
}

TEST_CASE("verify_equivalence detects a non-equivalent pair") {
    const GeometricGrid g{1e-3, 1e3, 16};
    CHECK(verify_equivalence(power(2.0), power(2.0), 1.0, 1.0, g).passed);
    CHECK_FALSE(verify_equivalence(power(3.0), power(2.0), 0.5, 2.0, g).passed);
    CHECK_THROWS_AS(verify_equivalence(power(2.0), power(2.0), 0.0, 1.0, g), PreconditionError);
}

TEST_CASE("violator: perturbation size and local blow-up") {
    for (double eps : {0.1, 0.3}) {
        const OrliczFunction m1 = build_delta2plus_violator(power(2.0), eps);
        const int n1 = static_cast<int>(m1.param("n1"));
        const int n_last = static_cast<int>(m1.param("n_last"));
        CHECK(n1 >= 1);
        CHECK(n_last >= n1);
        for (int n = n1; n <= n_last; ++n) {
            const double c = n + 0.5;
            CHECK(c * m1.second_derivative(c) / m1.derivative(c) > std::exp2(n));
        }
        CHECK_FALSE(check_delta2plus(m1).passed);
        CHECK(check_delta2(m1).passed);
        CHECK(check_axioms(m1).passed);
    }
    CHECK(build_delta2plus_violator(power(2.0), 0.1).param("n1") == 3.0);
}

TEST_CASE("violator preconditions") {
    CHECK_THROWS_AS(build_delta2plus_violator(power(2.0), 0.0), PreconditionError);
    CHECK_THROWS_AS(build_delta2plus_violator(power(2.0), 1.0), PreconditionError);
    CHECK_THROWS_AS(build_delta2plus_violator(exp_type(), 0.1), PreconditionError);
}

TEST_CASE("piecewise validation") {
    const OrliczFunction src = power(2.0);
    using R = Segment::Rule;
    CHECK_THROWS_AS(make_piecewise({0.0, 1.0}, {{R::source, {}}, {R::linear, {5.0, 2.0, 0.0, 0.0}}}, src, "t", {}),
                    ConstructionError);
    CHECK_THROWS_AS(make_piecewise({0.0, 1.0}, {{R::source, {}}, {R::linear, {2.0, -1.0, 0.0, 0.0}}}, src, "t", {}),
                    ConstructionError);
    CHECK_THROWS_AS(make_piecewise({0.0, 0.0}, {{R::source, {}}, {R::source, {}}}, src, "t", {}), ConstructionError);
    const OrliczFunction ok =
        make_piecewise({0.0, 1.0}, {{R::source, {}}, {R::linear, {2.0, 2.0, 0.0, 0.0}}}, src, "t", {});
    CHECK(ok(3.0) == doctest::Approx(9.0));
    CHECK(ok.second_derivative(2.0) == doctest::Approx(2.0));
}

TEST_CASE("kinks make the second derivative undefined") {
    using R = Segment::Rule;
    const OrliczFunction kink =
        make_piecewise({0.0, 1.0}, {{R::source, {}}, {R::linear, {2.0, 6.0, 0.0, 0.0}}}, power(2.0), "t", {});
    CHECK_THROWS_AS(kink.second_derivative(1.0), UndefinedDerivativeError);
    CHECK(kink.second_derivative(1.5) == doctest::Approx(6.0));
}

TEST_CASE("segment rule names round-trip") {
    using R = Segment::Rule;
    for (R r : {R::source, R::constant, R::linear, R::connector, R::blend, R::ramp})
        CHECK(segment_rule_from_string(to_string(r)) == r);
    CHECK_THROWS_AS(segment_rule_from_string("spline"), ParseError);
}

TEST_CASE("derivative inversion") {
    const OrliczFunction phi = power(3.0);
    for (double v : {0.0, 1e-6, 0.3, 3.0, 1e4}) {
        const double q = invert_derivative(phi, v);
        CHECK(q == doctest::Approx(std::sqrt(v / 3.0)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(invert_derivative(phi, -1.0), DomainError);
    CHECK_THROWS_AS(invert_derivative(power(3.0, 10.0), 1e6), DomainError);
}

TEST_CASE("complementary functions of powers match the closed form") {
    for (double p : {1.5, 3.0, 4.0}) {
        const OrliczFunction ms = complementary(power(p));
        CHECK(ms.kind() == Kind::complementary);
        REQUIRE(complementary_source(ms) != nullptr);
        for (double v : {1e-4, 0.1, 1.0, 5.0, 40.0}) {
            const double want = oracle::power_conjugate(p, v);
            CHECK(ms(v) == doctest::Approx(want).epsilon(1e-9));
            CHECK(ms.derivative(v) == doctest::Approx(std::pow(v / p, 1.0 / (p - 1.0))).epsilon(1e-12));
        }
    }
    CHECK(complementary_source(power(2.0)) == nullptr);
}

TEST_CASE("complementary of power_log: Young's inequality and Legendre transform") {
    const OrliczFunction phi = power_log(2.0);
    const OrliczFunction ms = complementary(phi);
    for (double v : {0.2, 1.0, 3.0}) {
        const double leg = oracle::legendre([&](double u) { return phi(u); }, v, 10.0);
        CHECK(ms(v) == doctest::Approx(leg).epsilon(1e-8));
        for (double u : {0.1, 0.7, 2.0, 5.0}) CHECK(u * v <= phi(u) + ms(v) + 1e-12);
    }
}

TEST_CASE("complementary needs strictly increasing M'") {
    using R = Segment::Rule;
    const OrliczFunction flat = make_piecewise(
        {0.0, 1.0, 2.0},
        {{R::source, {}}, {R::constant, {2.0, 0.0, 0.0, 0.0}}, {R::linear, {2.0, 2.0, 0.0, 0.0}}}, power(2.0),
        "t", {});
    CHECK_THROWS_AS(complementary(flat), InversionError);
}
