#include "orlicz/function_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "orlicz/constructions.hpp"
#include "orlicz/error.hpp"
#include "orlicz/kernels.hpp"
#include "orlicz/numeric.hpp"

namespace orlicz {

double modular(const StepFunction& f, double lambda, const OrliczFunction& phi) {
    if (!(lambda > 0.0)) throw PreconditionError("modular needs lambda > 0");
    const std::vector<double> w = f.widths();
    std::vector<double> x(w.size());
    kernels::scaled_abs(f.values(), 1.0 / lambda, x);
    for (double& xi : x) xi = phi(xi);
    return kernels::dot(w, x);
}

double luxemburg_norm(const StepFunction& f, const OrliczFunction& phi) {
    const double top = f.sup_norm();
    if (top == 0.0) return 0.0;
    // M(|v| / sup|v|) <= M(1) = 1 cellwise, so the norm is at most sup|v|.
    const double hi = top;
    double lo = 0.5 * hi;
    while (modular(f, lo, phi) <= 1.0) {
        lo *= 0.5;
        if (top / lo > phi.u_max())
            throw BracketError("u_max too small to bracket the Luxemburg norm");
    }
    const auto g = [&](double lambda) { return -modular(f, lambda, phi); };
    return numeric::bisect_nondecreasing(g, -1.0, lo, hi);
}

StepFunction normalized(const StepFunction& f, const OrliczFunction& phi) {
    const double n = luxemburg_norm(f, phi);
    if (n == 0.0) throw PreconditionError("cannot normalize the zero function");
    return (1.0 / n) * f;
}

double amemiya_norm(const StepFunction& g, const OrliczFunction& mstar) {
    if (g.is_zero()) return 0.0;
    const std::vector<double> w = g.widths();
    std::vector<double> a(w.size());
    kernels::scaled_abs(g.values(), 1.0, a);
    const double top = g.sup_norm();
    const double kmax = mstar.u_max() / top;
    const auto J = [&](double k) {
        std::vector<double> m(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] == 0.0 ? 0.0 : mstar(k * a[i]);
        return (1.0 + kernels::dot(w, m)) / k;
    };

    // Geometric scan until J turns upward, then golden section inside the bracket.
    double lo, hi;
    double k = std::min(1.0 / top, kmax), fk = J(k);
    double kn = std::min(2.0 * k, kmax), fn = J(kn);
    if (kn > k && fn < fk) {
        double kp = k;
        k = kn;
        fk = fn;
        for (;;) {
            if (k >= kmax) throw SearchError("Amemiya objective still decreasing at the range top");
            kn = std::min(2.0 * k, kmax);
            fn = J(kn);
            if (fn >= fk) break;
            kp = k;
            k = kn;
            fk = fn;
        }
        lo = kp;
        hi = kn;
    } else {
        double kp = kn;
        for (;;) {
            kn = 0.5 * k;
            if (!(kn > 0.0)) throw SearchError("no bracket for the Amemiya objective");
            fn = J(kn);
            if (fn >= fk) break;
            kp = k;
            k = kn;
            fk = fn;
        }
        lo = kn;
        hi = kp;
    }

    // Unimodality check on a sample of the bracket.
    constexpr int kSamples = 17;
    std::vector<double> s(kSamples);
    for (int i = 0; i < kSamples; ++i) s[i] = J(lo + (hi - lo) * i / (kSamples - 1));
    const double slack = 1e-13 * *std::min_element(s.begin(), s.end());
    std::size_t i = 1;
    while (i < s.size() && s[i] <= s[i - 1] + slack) ++i;
    while (i < s.size() && s[i] >= s[i - 1] - slack) ++i;
    if (i != s.size()) throw SearchError("Amemiya objective is not unimodal on its bracket");

    return numeric::golden_section_minimize(J, lo, hi, 1e-10).value;
}

double amemiya_dual_norm(const StepFunction& g, const OrliczFunction& phi) {
    if (g.is_zero()) return 0.0;
    return amemiya_norm(g, complementary(phi));
}

StepFunction norming_functional(const StepFunction& h, const OrliczFunction& phi) {
    const double n = luxemburg_norm(h, phi);
    if (n == 0.0) throw PreconditionError("the zero function has no norming functional");
    std::vector<double> r(h.cells());
    double pairing = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double v = h.values()[i];
        const double sg = v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
        const double d = v == 0.0 ? 0.0 : phi.derivative(std::fabs(v) / n);
        r[i] = d * sg;
        pairing += h.width(i) * d * std::fabs(v);
    }
    const double C = n * n / pairing;
    for (double& x : r) x *= C;
    return StepFunction(h.breakpoints(), std::move(r));
}

std::string_view to_string(Relation r) {
    switch (r) {
        case Relation::disjoint: return "disjoint";
        case Relation::f_subset_g: return "f_subset_g";
        case Relation::g_subset_f: return "g_subset_f";
        case Relation::equal: return "equal";
        case Relation::proper_overlap: return "proper_overlap";
    }
    return "unknown";
}

SupportRelation support_relation(const StepFunction& f, const StepFunction& g) {
    const std::vector<double> t = common_breakpoints(f, g);
    const StepFunction fr = f.refine_to(t);
    const StepFunction gr = g.refine_to(t);
    SupportRelation s;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        const bool in_f = std::fabs(fr.values()[i]) > kSupportFloor;
        const bool in_g = std::fabs(gr.values()[i]) > kSupportFloor;
        const double w = t[i + 1] - t[i];
        if (in_f && in_g)
            s.mu_intersection += w;
        else if (in_f)
            s.mu_f_minus_g += w;
        else if (in_g)
            s.mu_g_minus_f += w;
    }
    if (s.mu_intersection == 0.0)
        s.relation = Relation::disjoint;
    else if (s.mu_f_minus_g == 0.0 && s.mu_g_minus_f == 0.0)
        s.relation = Relation::equal;
    else if (s.mu_g_minus_f == 0.0)
        s.relation = Relation::g_subset_f;
    else if (s.mu_f_minus_g == 0.0)
        s.relation = Relation::f_subset_g;
    else
        s.relation = Relation::proper_overlap;
    return s;
}

}  // namespace orlicz
