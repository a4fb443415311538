#include "orlicz/differential.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "orlicz/error.hpp"
#include "orlicz/function_space.hpp"
#include "orlicz/kernels.hpp"

namespace orlicz {
namespace {

double rel(double closed, double fd) { return std::fabs(closed - fd) / std::max(1.0, std::fabs(closed)); }

double richardson(double coarse, double fine) { return (4.0 * fine - coarse) / 3.0; }

}  // namespace

double FdResiduals::max() const {
    return std::max({F_alpha, F_alphaalpha, F_eta, F_alphaeta, F_etaeta, Nprime, Nsecond});
}

ModularSurface::ModularSurface(const StepFunction& f, const StepFunction& g,
                               const OrliczFunction& phi, double unit_tol)
    : phi_(phi) {
    for (const auto* h : {&f, &g}) {
        const double n = luxemburg_norm(*h, phi);
        if (std::fabs(n - 1.0) > unit_tol) {
            std::ostringstream os;
            os.precision(17);
            os << "modular surface needs unit vectors, got norm " << n;
            throw PreconditionError(os.str());
        }
    }
    t_ = common_breakpoints(f, g);
    f_ = f.refine_to(t_).values();
    g_ = g.refine_to(t_).values();
    w_.resize(f_.size());
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] = t_[i + 1] - t_[i];
}

StepFunction ModularSurface::combination(double alpha) const {
    std::vector<double> v(f_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f_[i] + alpha * g_[i];
    return StepFunction(t_, std::move(v));
}

double ModularSurface::value(double alpha, double eta) const {
    if (!(eta > 0.0)) throw PreconditionError("eta must be positive");
    std::vector<double> x(f_.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = phi_(std::fabs(f_[i] + alpha * g_[i]) / eta);
    return kernels::dot(w_, x) - 1.0;
}

Partials ModularSurface::partials(double alpha, double eta) const {
    if (!(eta > 0.0)) throw PreconditionError("eta must be positive");
    const std::size_t n = f_.size();
    std::vector<double> s(n), m1(n), m2(n);
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = f_[i] + alpha * g_[i];
        const double x = std::fabs(s[i]) / eta;
        m1[i] = phi_.derivative(x);
        if (s[i] == 0.0 && g_[i] == 0.0) {
            m2[i] = 0.0;  // every M''-weighted term carries g or s
            continue;
        }
        m2[i] = phi_.second_derivative(x);
        if (!std::isfinite(m2[i]))
            throw SingularIntegrandError("M''(0) is infinite on a cell where f + alpha g = 0 "
                                         "and g != 0; perturb alpha");
    }
    const kernels::MomentSums S = kernels::moments(w_, s, g_, m1, m2);
    const double e2 = eta * eta, e3 = e2 * eta, e4 = e3 * eta;
    Partials P;
    P.F_alpha = S.s1 / eta;
    P.F_alphaalpha = S.s2 / e2;
    P.F_eta = -S.s3 / e2;
    P.F_alphaeta = -S.s4 / e3 - S.s1 / e2;
    P.F_etaeta = S.s5 / e4 + 2.0 * S.s3 / e3;
    return P;
}

double ModularSurface::norm(double alpha) const { return luxemburg_norm(combination(alpha), phi_); }

NormCurveSample ModularSurface::sample(double alpha) const {
    NormCurveSample out;
    out.alpha = alpha;
    out.N = norm(alpha);
    if (out.N == 0.0) throw PreconditionError("f + alpha g vanishes");
    const Partials P = partials(alpha, out.N);
    if (!(P.F_eta < 0.0)) throw Error("F_eta is not negative; implicit derivatives undefined");
    out.partials = P;
    out.Nprime = -P.F_alpha / P.F_eta;
    out.Nsecond = (-P.F_alphaalpha - 2.0 * P.F_alphaeta * out.Nprime -
                   P.F_etaeta * out.Nprime * out.Nprime) /
                  P.F_eta;
    return out;
}

FdResiduals ModularSurface::finite_difference_check(double alpha, double h) const {
    if (!(h > 0.0)) h = 1e-4 * std::max(1.0, std::fabs(alpha));
    const NormCurveSample c = sample(alpha);
    const double eta = c.N;
    const double k = h * eta;
    const auto F = [&](double a, double e) { return value(a, e); };
    const double F0 = F(alpha, eta);

    const auto d1a = [&](double s) { return (F(alpha + s, eta) - F(alpha - s, eta)) / (2.0 * s); };
    const auto d2a = [&](double s) {
        return (F(alpha + s, eta) - 2.0 * F0 + F(alpha - s, eta)) / (s * s);
    };
    const auto d1e = [&](double s) { return (F(alpha, eta + s) - F(alpha, eta - s)) / (2.0 * s); };
    const auto d2e = [&](double s) {
        return (F(alpha, eta + s) - 2.0 * F0 + F(alpha, eta - s)) / (s * s);
    };
    const auto dm = [&](double sa, double se) {
        return (F(alpha + sa, eta + se) - F(alpha + sa, eta - se) - F(alpha - sa, eta + se) +
                F(alpha - sa, eta - se)) /
               (4.0 * sa * se);
    };
    const double N0 = c.N;
    const auto n1 = [&](double s) { return (norm(alpha + s) - norm(alpha - s)) / (2.0 * s); };
    const auto n2 = [&](double s) {
        return (norm(alpha + s) - 2.0 * N0 + norm(alpha - s)) / (s * s);
    };

    FdResiduals r;
    const Partials& P = c.partials;
    r.F_alpha = rel(P.F_alpha, richardson(d1a(h), d1a(0.5 * h)));
    r.F_alphaalpha = rel(P.F_alphaalpha, richardson(d2a(h), d2a(0.5 * h)));
    r.F_eta = rel(P.F_eta, richardson(d1e(k), d1e(0.5 * k)));
    r.F_etaeta = rel(P.F_etaeta, richardson(d2e(k), d2e(0.5 * k)));
    r.F_alphaeta = rel(P.F_alphaeta, richardson(dm(h, k), dm(0.5 * h, 0.5 * k)));
    r.Nprime = rel(c.Nprime, richardson(n1(h), n1(0.5 * h)));
    r.Nsecond_fd = richardson(n2(h), n2(0.5 * h));
    r.Nsecond = rel(c.Nsecond, r.Nsecond_fd);
    return r;
}

std::vector<double> ModularSurface::crossing_points() const {
    std::vector<double> out;
    for (std::size_t i = 0; i < f_.size(); ++i)
        if (g_[i] != 0.0) out.push_back(-f_[i] / g_[i]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool ModularSurface::is_crossing(double alpha) const {
    for (std::size_t i = 0; i < f_.size(); ++i)
        if (g_[i] != 0.0 && f_[i] + alpha * g_[i] == 0.0) return true;
    return false;
}

double F_value(const StepFunction& f, const StepFunction& g, double alpha, double eta,
               const OrliczFunction& phi) {
    return ModularSurface(f, g, phi).value(alpha, eta);
}

Partials F_partials(const StepFunction& f, const StepFunction& g, double alpha, double eta,
                    const OrliczFunction& phi) {
    return ModularSurface(f, g, phi).partials(alpha, eta);
}

NormCurveSample norm_curve(const StepFunction& f, const StepFunction& g, double alpha,
                           const OrliczFunction& phi) {
    const ModularSurface S(f, g, phi);
    NormCurveSample out = S.sample(alpha);
    out.fd = S.finite_difference_check(alpha);
    out.fd_checked = true;
    return out;
}

FdResiduals finite_difference_check(const StepFunction& f, const StepFunction& g, double alpha,
                                    const OrliczFunction& phi, double h) {
    return ModularSurface(f, g, phi).finite_difference_check(alpha, h);
}

std::vector<NormCurveSample> sweep(const ModularSurface& surface, const std::vector<double>& alphas,
                                   bool with_fd, std::vector<double>* excluded) {
    std::vector<NormCurveSample> out;
    for (double a : alphas) {
        if (surface.is_crossing(a)) {
            if (excluded) excluded->push_back(a);
            continue;
        }
        NormCurveSample s = surface.sample(a);
        if (with_fd) {
            s.fd = surface.finite_difference_check(a);
            s.fd_checked = true;
        }
        out.push_back(s);
    }
    return out;
}

}  // namespace orlicz
