#pragma once

#include <string_view>

#include "orlicz/orlicz_function.hpp"
#include "orlicz/step_function.hpp"

namespace orlicz {

/// Sum over cells of width * M(|v| / lambda).
double modular(const StepFunction& f, double lambda, const OrliczFunction& phi);

/// inf { lambda > 0 : modular(f, lambda) <= 1 }, by bisection to adjacent doubles.
double luxemburg_norm(const StepFunction& f, const OrliczFunction& phi);

/// f / ||f||. PreconditionError for f = 0.
StepFunction normalized(const StepFunction& f, const OrliczFunction& phi);

/// inf over k > 0 of (1 + sum width * M*(k |v|)) / k, where mstar is the
/// complementary function.
double amemiya_norm(const StepFunction& g, const OrliczFunction& mstar);

/// Amemiya norm of g with respect to the complementary function of phi.
double amemiya_dual_norm(const StepFunction& g, const OrliczFunction& phi);

/// h^N = C M'(|h| / ||h||) sgn h with C fixed by the pairing int h^N h = ||h||^2.
StepFunction norming_functional(const StepFunction& h, const OrliczFunction& phi);

enum class Relation { disjoint, f_subset_g, g_subset_f, equal, proper_overlap };
std::string_view to_string(Relation r);

struct SupportRelation {
    Relation relation = Relation::disjoint;
    double mu_f_minus_g = 0.0;
    double mu_g_minus_f = 0.0;
    double mu_intersection = 0.0;
};

inline constexpr double kSupportFloor = 1e-14;

SupportRelation support_relation(const StepFunction& f, const StepFunction& g);

}  // namespace orlicz
