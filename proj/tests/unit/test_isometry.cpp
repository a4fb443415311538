#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "orlicz/error.hpp"
#include "orlicz/function_space.hpp"
#include "orlicz/generators.hpp"
#include "orlicz/isometry.hpp"

using namespace orlicz;

namespace {

std::vector<StepFunction> testset(std::uint64_t seed, std::size_t n = 20) {
    gen::Rng rng(seed);
    std::vector<StepFunction> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(gen::random_step(rng));
    return out;
}

}  // namespace

TEST_CASE("identity and half swap") {
    const WeightedComposition id = WeightedComposition::identity(4);
    const StepFunction f = StepFunction::uniform({1.0, -2.0, 0.0, 3.0});
    CHECK(id.apply(f).same_function(f));
    const WeightedComposition swap = WeightedComposition::uniform({1, 0}, StepFunction::constant(1.0));
    CHECK(swap.apply(StepFunction::indicator(0.0, 0.5)).same_function(StepFunction::indicator(0.5, 1.0)));
    const WeightedComposition neg = WeightedComposition::uniform({0}, StepFunction::constant(-1.0));
    CHECK(neg.apply(f).same_function(-f));
    CHECK(apply_operator(swap, f).same_function(swap.apply(f)));
}

TEST_CASE("invalid compositions are rejected") {
    CHECK_THROWS_AS(WeightedComposition::uniform({0, 2}, StepFunction::constant(1.0)), PreconditionError);
    WeightedComposition bad = WeightedComposition::identity(2);
    bad.sigma.pop_back();
    CHECK_THROWS_AS(bad.validate(), PreconditionError);
}

TEST_CASE("unimodular compositions are isometries (property)") {
    gen::Rng rng(21);
    for (const OrliczFunction& phi : {power(4.0), power(1.5), power_log(2.0)}) {
        for (int k = 0; k < 5; ++k) {
            const WeightedComposition T = gen::random_unimodular_composition(rng, 8);
            const IsometryReport r = check_isometry(T.as_operator(), phi, testset(k), {.combinations = 50});
            CHECK(r.is_isometry);
            CHECK(r.max_norm_deviation <= kIsometryTolerance);
        }
    }
    const WeightedComposition id = WeightedComposition::identity(2);
    CHECK_THROWS_AS(check_isometry(id.as_operator(), exp_type(), testset(0)), PreconditionError);
}

TEST_CASE("doubling weight deviates by the norm itself") {
    const OrliczFunction phi = power(3.0);
    const StepFunction f = StepFunction::uniform({1.0, 0.5});
    const WeightedComposition T = WeightedComposition::uniform({0, 1}, StepFunction::constant(2.0));
    const IsometryReport r = check_isometry(T.as_operator(), phi, {f}, {.combinations = 0});
    CHECK_FALSE(r.is_isometry);
    CHECK(r.max_norm_deviation == doctest::Approx(oracle::lp_norm(f, 3.0)).epsilon(1e-12));
}

TEST_CASE("rotation is not an isometry of L_4 and is one of L_2") {
    const IsometryReport r4 = check_isometry(rotation_operator(0.6), power(4.0), testset(3));
    CHECK_FALSE(r4.is_isometry);
    CHECK(r4.max_norm_deviation > 1e-3);
    const IsometryReport r2 = check_isometry(rotation_operator(0.6), power(2.0), testset(3));
    CHECK(r2.is_isometry);
}

TEST_CASE("disjointness preservation needs an isometry") {
    gen::Rng rng(22);
    std::vector<std::pair<StepFunction, StepFunction>> pairs;
    for (int k = 0; k < 10; ++k) pairs.push_back(gen::random_pair(rng, gen::SupportPattern::disjoint, 16));
    CHECK_THROWS_AS(check_disjointness_preservation(perturbed_identity(), power(4.0), pairs), PreconditionError);
    const WeightedComposition T = gen::random_unimodular_composition(rng, 16);
    const IsometryReport r = check_disjointness_preservation(T.as_operator(), power(4.0), pairs);
    CHECK(r.preservation_failures.empty());
    CHECK(r.pairs_checked == pairs.size());
    CHECK(r.detector_disagreements == 0);
}

TEST_CASE("composition of isometries is an isometry") {
    gen::Rng rng(23);
    const WeightedComposition A = gen::random_unimodular_composition(rng, 8, false);
    const WeightedComposition B = gen::random_unimodular_composition(rng, 8, false);
    const WeightedComposition C = compose(A, B);
    for (const StepFunction& f : testset(4, 10)) {
        const StepFunction x = C.apply(f), y = A.apply(B.apply(f));
        for (std::size_t i = 0; i < 64; ++i) CHECK(x((i + 0.5) / 64) == y((i + 0.5) / 64));
    }
    CHECK(check_isometry(C.as_operator(), power(4.0), testset(5)).is_isometry);
}

TEST_CASE("equal supports stay equal under isometries in the infinite class") {
    gen::Rng rng(24);
    const WeightedComposition T = gen::random_unimodular_composition(rng, 16);
    for (int k = 0; k < 20; ++k) {
        const auto [f, g] = gen::random_pair(rng, gen::SupportPattern::equal, 16);
        CHECK(support_relation(T.apply(f), T.apply(g)).relation == Relation::equal);
    }
}

TEST_CASE("recovery reproduces a composition") {
    gen::Rng rng(25);
    const WeightedComposition T = gen::random_unimodular_composition(rng, 8);
    const Recovery r = recover_weighted_composition(T.as_operator(), 16, power(4.0));
    CHECK(r.residual <= 1e-10);
    CHECK(r.unimodular);
    for (int k = 0; k < 10; ++k) {
        std::vector<double> v(16);
        for (double& x : v) x = gen::uniform(rng, -2.0, 2.0);
        const StepFunction f = StepFunction::uniform(v);
        const StepFunction x = r.apply(f), y = T.apply(f);
        for (std::size_t i = 0; i < 128; ++i) CHECK(x((i + 0.5) / 128) == doctest::Approx(y((i + 0.5) / 128)));
    }
}

TEST_CASE("recovery rejects a cell that covers two sources") {
    const Operator doubled = [](const StepFunction& f) {
        const WeightedComposition s = WeightedComposition::uniform({1, 0}, StepFunction::constant(1.0));
        return f + s.apply(f);
    };
    CHECK_THROWS_AS(recover_weighted_composition(doubled, 2, power(4.0)), AmbiguityError);
}

TEST_CASE("non-unimodular weight is flagged and fails the isometry check") {
    const OrliczFunction phi = power_log(2.0);
    const WeightedComposition T =
        WeightedComposition::uniform({0, 1}, StepFunction::uniform({1.0, 2.0}));
    const Recovery r = recover_weighted_composition(T.as_operator(), 2, phi);
    CHECK_FALSE(r.unimodular);
    CHECK_FALSE(check_isometry(T.as_operator(), phi, testset(7)).is_isometry);
}

TEST_CASE("power-like behaviour near zero") {
    double e = 0.0;
    CHECK(power_like_near_zero(power(3.0), 1e-2, &e));
    CHECK(e == doctest::Approx(3.0).epsilon(1e-9));
    CHECK_FALSE(power_like_near_zero(exp_type(), 1.0));
}
