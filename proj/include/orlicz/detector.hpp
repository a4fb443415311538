#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "orlicz/orlicz_function.hpp"
#include "orlicz/step_function.hpp"

namespace orlicz {

enum class LimitTag { to_zero, bounded_nonzero, to_infinity, inconclusive };
std::string_view to_string(LimitTag t);

struct LimitClass {
    LimitTag tag = LimitTag::inconclusive;
    std::vector<std::pair<double, double>> evidence;  // (alpha, value)
};

struct DetectorOptions {
    double alpha0 = 0.25;
    int samples = 13;
    double eps_zero = 1e-3;
    double cap_inf = 1e3;
    /// |v| at or below this on the whole tail counts as an exact zero limit.
    double numerical_zero = 1e-9;
};

/// Sequence sorted by decreasing alpha, at least 8 entries.
LimitClass classify_limit(const std::vector<std::pair<double, double>>& seq,
                          const DetectorOptions& opts = {});

enum class Claim {
    disjoint,
    not_disjoint,
    g_support_exceeds_f,
    g_support_within_f,
    supports_equal,
    supports_differ,
    inconclusive
};
std::string_view to_string(Claim c);

struct Verdict {
    std::string test;
    Claim claim = Claim::inconclusive;
    LimitClass limit_class;
    double nprime0 = 0.0;  // NaN when N'(0) is not defined
    std::vector<double> excluded;
    /// Directional verdicts behind a two-sided test: (f, g) then (g, f).
    std::vector<Verdict> directions;
};

/// Refuses phi unless it passes Delta_2+ and its M'' vanishes at 0.
void require_zero_regime(const OrliczFunction& phi);
/// Refuses phi unless it passes Delta_2+ and its M'' blows up at 0.
void require_infinite_regime(const OrliczFunction& phi);

/// N''(alpha_k) at alpha_k = alpha0 2^-k, skipping crossing points.
LimitClass sample_second_derivative(const StepFunction& f, const StepFunction& g,
                                    const OrliczFunction& phi, const DetectorOptions& opts,
                                    std::vector<double>* excluded);

/// f, g unit vectors; M''(0) = 0 regime.
Verdict test_disjointness_zero_case(const StepFunction& f, const StepFunction& g,
                                    const OrliczFunction& phi, const DetectorOptions& opts = {});

/// f, g unit vectors; M''(0) = infinity regime. Exceeds when supp g leaves supp f.
Verdict test_support_deficiency_infinite_case(const StepFunction& f, const StepFunction& g,
                                              const OrliczFunction& phi,
                                              const DetectorOptions& opts = {});

/// Deficiency test in both orders.
Verdict test_support_equality(const StepFunction& f, const StepFunction& g,
                              const OrliczFunction& phi, const DetectorOptions& opts = {});

/// Variants that skip the regime checks, for callers that already ran them.
namespace unchecked {
Verdict disjointness_zero_case(const StepFunction& f, const StepFunction& g,
                               const OrliczFunction& phi, const DetectorOptions& opts);
Verdict support_deficiency(const StepFunction& f, const StepFunction& g, const OrliczFunction& phi,
                           const DetectorOptions& opts);
Verdict support_equality(const StepFunction& f, const StepFunction& g, const OrliczFunction& phi,
                         const DetectorOptions& opts);
}  // namespace unchecked

}  // namespace orlicz
