#include "orlicz/detector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "orlicz/conditions.hpp"
#include "orlicz/differential.hpp"
#include "orlicz/error.hpp"

namespace orlicz {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

LimitClass sample_on(const ModularSurface& S, const DetectorOptions& opts,
                     std::vector<double>* excluded) {
    std::vector<double> alphas;
    for (int k = 0; k < opts.samples; ++k) alphas.push_back(opts.alpha0 * std::exp2(-k));
    const std::vector<NormCurveSample> samples = sweep(S, alphas, false, excluded);
    std::vector<std::pair<double, double>> seq;
    for (const NormCurveSample& s : samples) seq.emplace_back(s.alpha, s.Nsecond);
    return classify_limit(seq, opts);
}

double nprime_at_zero(const ModularSurface& S) {
    try {
        return S.sample(0.0).Nprime;
    } catch (const SingularIntegrandError&) {
        return kNaN;
    }
}

}  // namespace

std::string_view to_string(LimitTag t) {
    switch (t) {
        case LimitTag::to_zero: return "to_zero";
        case LimitTag::bounded_nonzero: return "bounded_nonzero";
        case LimitTag::to_infinity: return "to_infinity";
        case LimitTag::inconclusive: return "inconclusive";
    }
    return "unknown";
}

std::string_view to_string(Claim c) {
    switch (c) {
        case Claim::disjoint: return "disjoint";
        case Claim::not_disjoint: return "not_disjoint";
        case Claim::g_support_exceeds_f: return "g_support_exceeds_f";
        case Claim::g_support_within_f: return "g_support_within_f";
        case Claim::supports_equal: return "supports_equal";
        case Claim::supports_differ: return "supports_differ";
        case Claim::inconclusive: return "inconclusive";
    }
    return "unknown";
}

LimitClass classify_limit(const std::vector<std::pair<double, double>>& seq,
                          const DetectorOptions& opts) {
    if (seq.size() < 8) throw PreconditionError("limit classification needs at least 8 samples");
    LimitClass out;
    out.evidence = seq;
    const std::size_t n = seq.size();
    double t[4];
    for (int i = 0; i < 4; ++i) t[i] = seq[n - 4 + static_cast<std::size_t>(i)].second;
    const double last = t[3];

    if (std::all_of(t, t + 4, [&](double v) { return std::fabs(v) <= opts.numerical_zero; })) {
        out.tag = LimitTag::to_zero;
        return out;
    }
    const bool dec = t[0] > t[1] && t[1] > t[2] && t[2] > t[3];
    const bool inc = t[0] < t[1] && t[1] < t[2] && t[2] < t[3];
    if (dec && last < opts.eps_zero) {
        out.tag = LimitTag::to_zero;
        return out;
    }
    if (inc) {
        const double d1 = t[1] - t[0], d2 = t[2] - t[1], d3 = t[3] - t[2];
        const bool growing = d2 >= 0.9 * d1 && d3 >= 0.9 * d2 && (t[3] - t[0]) >= 0.01 * std::fabs(last);
        if (last > opts.cap_inf || growing) {
            out.tag = LimitTag::to_infinity;
            return out;
        }
    }
    const bool in_band = std::all_of(seq.begin(), seq.end(), [&](const auto& p) {
        return p.second >= opts.eps_zero && p.second <= opts.cap_inf;
    });
    const auto [lo, hi] = std::minmax_element(t, t + 4);
    if (in_band && (*hi - *lo) < 0.1 * *hi) {
        out.tag = LimitTag::bounded_nonzero;
        return out;
    }
    out.tag = LimitTag::inconclusive;
    return out;
}

void require_zero_regime(const OrliczFunction& phi) {
    if (!check_delta2plus(phi).passed) throw PreconditionError("detector needs Delta_2+");
    if (classify_second_derivative_at_zero(phi) != ZeroClass::zero)
        throw PreconditionError("disjointness test needs M''(0) = 0");
    for (const double u : GeometricGrid{1e-8, 1.0, 4}.points())
        if (!(phi.second_derivative(u) > 0.0))
            throw PreconditionError("disjointness test needs M'' > 0 away from 0");
}

void require_infinite_regime(const OrliczFunction& phi) {
    if (!check_delta2plus(phi).passed) throw PreconditionError("detector needs Delta_2+");
    if (classify_second_derivative_at_zero(phi) != ZeroClass::infinite)
        throw PreconditionError("support test needs M''(0) = infinity");
}

LimitClass sample_second_derivative(const StepFunction& f, const StepFunction& g,
                                    const OrliczFunction& phi, const DetectorOptions& opts,
                                    std::vector<double>* excluded) {
    return sample_on(ModularSurface(f, g, phi), opts, excluded);
}

namespace unchecked {

Verdict disjointness_zero_case(const StepFunction& f, const StepFunction& g,
                               const OrliczFunction& phi, const DetectorOptions& opts) {
    const ModularSurface S(f, g, phi);
    Verdict v;
    v.test = "disjointness_zero_case";
    v.nprime0 = nprime_at_zero(S);
    v.limit_class = sample_on(S, opts, &v.excluded);
    const LimitTag tag = v.limit_class.tag;
    if (std::fabs(v.nprime0) <= 1e-8 && tag == LimitTag::to_zero)
        v.claim = Claim::disjoint;
    else if (tag == LimitTag::bounded_nonzero || std::fabs(v.nprime0) > 1e-6)
        v.claim = Claim::not_disjoint;
    else
        v.claim = Claim::inconclusive;
    return v;
}

Verdict support_deficiency(const StepFunction& f, const StepFunction& g, const OrliczFunction& phi,
                           const DetectorOptions& opts) {
    const ModularSurface S(f, g, phi);
    Verdict v;
    v.test = "support_deficiency_infinite_case";
    v.nprime0 = nprime_at_zero(S);
    v.limit_class = sample_on(S, opts, &v.excluded);
    switch (v.limit_class.tag) {
        case LimitTag::to_infinity: v.claim = Claim::g_support_exceeds_f; break;
        case LimitTag::to_zero:
        case LimitTag::bounded_nonzero: v.claim = Claim::g_support_within_f; break;
        case LimitTag::inconclusive: v.claim = Claim::inconclusive; break;
    }
    return v;
}

Verdict support_equality(const StepFunction& f, const StepFunction& g, const OrliczFunction& phi,
                         const DetectorOptions& opts) {
    Verdict v;
    v.test = "support_equality";
    v.directions.push_back(support_deficiency(f, g, phi, opts));
    v.directions.push_back(support_deficiency(g, f, phi, opts));
    const Claim a = v.directions[0].claim, b = v.directions[1].claim;
    if (a == Claim::g_support_exceeds_f || b == Claim::g_support_exceeds_f)
        v.claim = Claim::supports_differ;
    else if (a == Claim::g_support_within_f && b == Claim::g_support_within_f)
        v.claim = Claim::supports_equal;
    else
        v.claim = Claim::inconclusive;
    v.limit_class = v.directions[0].limit_class;
    v.nprime0 = v.directions[0].nprime0;
    return v;
}

}  // namespace unchecked

Verdict test_disjointness_zero_case(const StepFunction& f, const StepFunction& g,
                                    const OrliczFunction& phi, const DetectorOptions& opts) {
    require_zero_regime(phi);
    return unchecked::disjointness_zero_case(f, g, phi, opts);
}

Verdict test_support_deficiency_infinite_case(const StepFunction& f, const StepFunction& g,
                                              const OrliczFunction& phi,
                                              const DetectorOptions& opts) {
    require_infinite_regime(phi);
    return unchecked::support_deficiency(f, g, phi, opts);
}

Verdict test_support_equality(const StepFunction& f, const StepFunction& g,
                              const OrliczFunction& phi, const DetectorOptions& opts) {
    require_infinite_regime(phi);
    return unchecked::support_equality(f, g, phi, opts);
}

}  // namespace orlicz
