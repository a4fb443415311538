#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "orlicz/constructions.hpp"
#include "orlicz/error.hpp"
#include "orlicz/function_space.hpp"
#include "orlicz/generators.hpp"

using namespace orlicz;

TEST_CASE("Luxemburg norm of powers equals the L_p norm (property)") {
    gen::Rng rng(5);
    for (double p : {1.5, 2.0, 3.0, 4.0}) {
        const OrliczFunction phi = power(p);
        for (int k = 0; k < 50; ++k) {
            const StepFunction f = gen::random_step(rng);
            CHECK(luxemburg_norm(f, phi) == doctest::Approx(oracle::lp_norm(f, p)).epsilon(1e-14));
        }
    }
}

TEST_CASE("modular of an indicator") {
    const StepFunction f = StepFunction::indicator(0.0, 0.25, 2.0);
    CHECK(modular(f, 1.0, power(2.0)) == doctest::Approx(1.0));
    CHECK(modular(f, 2.0, power(3.0)) == doctest::Approx(0.25));
    CHECK(luxemburg_norm(f, power(2.0)) == doctest::Approx(1.0));
}

TEST_CASE("norm axioms for non-power functions (property)") {
    gen::Rng rng(6);
    for (const OrliczFunction& phi : {power_log(2.0), exp_type(), power_log(1.5)}) {
        for (int k = 0; k < 30; ++k) {
            const StepFunction f = gen::random_step(rng), g = gen::random_step(rng);
            const double a = gen::uniform(rng, -4.0, 4.0);
            const double nf = luxemburg_norm(f, phi), ng = luxemburg_norm(g, phi);
            CHECK(luxemburg_norm(a * f, phi) == doctest::Approx(std::fabs(a) * nf).epsilon(1e-13));
            CHECK(luxemburg_norm(f + g, phi) <= nf + ng + 1e-12);
            CHECK(modular(f, nf, phi) == doctest::Approx(1.0).epsilon(1e-13));
            CHECK(luxemburg_norm(normalized(f, phi), phi) == doctest::Approx(1.0).epsilon(1e-14));
        }
    }
    CHECK(luxemburg_norm(StepFunction(), power(2.0)) == 0.0);
    CHECK_THROWS_AS(normalized(StepFunction(), power(2.0)), PreconditionError);
}

TEST_CASE("Amemiya dual norm of L_p is the L_q norm") {
    gen::Rng rng(7);
    for (double p : {1.5, 3.0}) {
        const double q = p / (p - 1.0);
        const OrliczFunction phi = power(p);
        const OrliczFunction ms = complementary(phi);
        for (int k = 0; k < 10; ++k) {
            const StepFunction g = gen::random_step(rng);
            CHECK(amemiya_norm(g, ms) == doctest::Approx(oracle::lp_norm(g, q)).epsilon(1e-8));
        }
        const StepFunction g = StepFunction::uniform({1.0, -0.5});
        CHECK(amemiya_dual_norm(g, phi) == doctest::Approx(oracle::lp_norm(g, q)).epsilon(1e-8));
    }
}

TEST_CASE("norming functional pairs to the squared norm") {
    gen::Rng rng(8);
    for (double p : {1.5, 4.0}) {
        const OrliczFunction phi = power(p);
        const double q = p / (p - 1.0);
        for (int k = 0; k < 10; ++k) {
            const StepFunction h = gen::random_step(rng);
            const StepFunction hn = norming_functional(h, phi);
            const double nh = oracle::lp_norm(h, p);
            CHECK((hn * h).integral() == doctest::Approx(nh * nh).epsilon(1e-12));
            // Hoelder equality: ||h^N||_q = ||h||_p
            CHECK(oracle::lp_norm(hn, q) == doctest::Approx(nh).epsilon(1e-10));
        }
    }
}

TEST_CASE("support relation tags") {
    const StepFunction a = StepFunction::indicator(0.0, 0.5), b = StepFunction::indicator(0.5, 1.0);
    const StepFunction c = StepFunction::indicator(0.0, 0.25), d = StepFunction::indicator(0.25, 0.75);
    CHECK(support_relation(a, b).relation == Relation::disjoint);
    CHECK(support_relation(a, 2.0 * a).relation == Relation::equal);
    CHECK(support_relation(a, c).relation == Relation::g_subset_f);
    CHECK(support_relation(c, a).relation == Relation::f_subset_g);
    CHECK(support_relation(a, d).relation == Relation::proper_overlap);
    const SupportRelation r = support_relation(a, d);
    CHECK(r.mu_intersection == doctest::Approx(0.25));
    CHECK(r.mu_f_minus_g == doctest::Approx(0.25));
    CHECK(r.mu_g_minus_f == doctest::Approx(0.25));
    CHECK(to_string(Relation::proper_overlap) == "proper_overlap");
}

TEST_CASE("support relation agrees with the midpoint oracle (property)") {
    gen::Rng rng(9);
    for (int k = 0; k < 300; ++k) {
        const StepFunction f = gen::random_step(rng), g = gen::random_step(rng);
        const SupportRelation r = support_relation(f, g);
        const oracle::Supports s = oracle::supports(f, g);
        CHECK(r.mu_f_minus_g == doctest::Approx(s.f_minus_g).epsilon(1e-12));
        CHECK(r.mu_g_minus_f == doctest::Approx(s.g_minus_f).epsilon(1e-12));
        CHECK(r.mu_intersection == doctest::Approx(s.both).epsilon(1e-12));
    }
}
