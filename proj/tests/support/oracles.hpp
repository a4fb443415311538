#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the norm, curve or detector code of the library.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "orlicz/step_function.hpp"

namespace oracle {

using orlicz::StepFunction;

inline double lp_norm(const StepFunction& f, double p) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.cells(); ++i) s += f.width(i) * std::pow(std::fabs(f.values()[i]), p);
    return std::pow(s, 1.0 / p);
}

inline StepFunction lp_normalized(const StepFunction& f, double p) { return (1.0 / lp_norm(f, p)) * f; }

struct Curve {
    double N, Np, Npp;
};

// N(alpha) = (sum w |f + alpha g|^p)^(1/p) and its first two derivatives.
inline Curve lp_curve(const StepFunction& f, const StepFunction& g, double p, double alpha) {
    std::vector<double> t = orlicz::common_breakpoints(f, g);
    double P = 0.0, P1 = 0.0, P2 = 0.0;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        const double mid = 0.5 * (t[i] + t[i + 1]), w = t[i + 1] - t[i];
        const double a = f(mid), b = g(mid), s = a + alpha * b, m = std::fabs(s);
        if (m == 0.0) continue;
        P += w * std::pow(m, p);
        P1 += w * p * std::pow(m, p - 1.0) * (s > 0 ? 1.0 : -1.0) * b;
        P2 += w * p * (p - 1.0) * std::pow(m, p - 2.0) * b * b;
    }
    const double q = 1.0 / p;
    return {std::pow(P, q), q * std::pow(P, q - 1.0) * P1,
            q * (q - 1.0) * std::pow(P, q - 2.0) * P1 * P1 + q * std::pow(P, q - 1.0) * P2};
}

// Central difference with one Richardson step.
inline double d1(const std::function<double(double)>& F, double x, double h) {
    const auto c = [&](double s) { return (F(x + s) - F(x - s)) / (2.0 * s); };
    return (4.0 * c(0.5 * h) - c(h)) / 3.0;
}

inline double d2(const std::function<double(double)>& F, double x, double h) {
    const auto c = [&](double s) { return (F(x + s) - 2.0 * F(x) + F(x - s)) / (s * s); };
    return (4.0 * c(0.5 * h) - c(h)) / 3.0;
}

inline double d11(const std::function<double(double, double)>& F, double x, double y, double hx,
                  double hy) {
    const auto c = [&](double a, double b) {
        return (F(x + a, y + b) - F(x + a, y - b) - F(x - a, y + b) + F(x - a, y - b)) / (4.0 * a * b);
    };
    return (4.0 * c(0.5 * hx, 0.5 * hy) - c(hx, hy)) / 3.0;
}

// F(alpha, eta) = sum w M(|f + alpha g| / eta) - 1 on the common refinement.
inline double modular_surface(const StepFunction& f, const StepFunction& g,
                              const std::function<double(double)>& M, double alpha, double eta) {
    std::vector<double> t = orlicz::common_breakpoints(f, g);
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        const double mid = 0.5 * (t[i] + t[i + 1]);
        s += (t[i + 1] - t[i]) * M(std::fabs(f(mid) + alpha * g(mid)) / eta);
    }
    return s - 1.0;
}

// Measures of supp f \ supp g, supp g \ supp f and their intersection, from
// cell midpoints of the joint refinement.
struct Supports {
    double f_minus_g = 0.0, g_minus_f = 0.0, both = 0.0;
};

inline Supports supports(const StepFunction& f, const StepFunction& g) {
    std::vector<double> t(f.breakpoints());
    t.insert(t.end(), g.breakpoints().begin(), g.breakpoints().end());
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    Supports s;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        const double mid = 0.5 * (t[i] + t[i + 1]), w = t[i + 1] - t[i];
        const bool a = f(mid) != 0.0, b = g(mid) != 0.0;
        if (a && b) s.both += w;
        else if (a) s.f_minus_g += w;
        else if (b) s.g_minus_f += w;
    }
    return s;
}

// sup over u in [0, umax] of u v - M(u): dense scan then local refinement.
inline double legendre(const std::function<double(double)>& M, double v, double umax) {
    const int n = 4000;
    int best = 0;
    double bv = -1e300;
    for (int i = 0; i <= n; ++i) {
        const double u = umax * i / n, val = u * v - M(u);
        if (val > bv) {
            bv = val;
            best = i;
        }
    }
    double lo = umax * std::max(0, best - 1) / n, hi = umax * std::min(n, best + 1) / n;
    for (int it = 0; it < 200; ++it) {
        const double a = lo + (hi - lo) / 3.0, b = hi - (hi - lo) / 3.0;
        if (a * v - M(a) < b * v - M(b)) lo = a;
        else hi = b;
    }
    const double u = 0.5 * (lo + hi);
    return std::max(bv, u * v - M(u));
}

// Conjugate of u^p: (p - 1) p^(-q) v^q with q = p / (p - 1).
inline double power_conjugate(double p, double v) {
    const double q = p / (p - 1.0);
    return (p - 1.0) * std::pow(p, -q) * std::pow(v, q);
}

}  // namespace oracle
