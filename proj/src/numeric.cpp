#include "orlicz/numeric.hpp"

#include <cmath>

#include "orlicz/error.hpp"

namespace orlicz::numeric {
namespace {

struct Panel {
    double a, b, fa, fm, fb, whole;
};

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double refine(const std::function<double(double)>& f, const Panel& p, double tol, int depth,
              const QuadratureOptions& opts) {
    const double m = 0.5 * (p.a + p.b);
    const double lm = 0.5 * (p.a + m);
    const double rm = 0.5 * (m + p.b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(p.a, m, p.fa, flm, p.fm);
    const double right = simpson(m, p.b, p.fm, frm, p.fb);
    const double delta = left + right - p.whole;
    const double scale = std::max(tol, opts.rel_tol * std::fabs(left + right));
    if (depth >= opts.max_depth || std::fabs(delta) <= 15.0 * scale || !(m > p.a && m < p.b))
        return left + right + delta / 15.0;
    return refine(f, {p.a, m, p.fa, flm, p.fm, left}, 0.5 * tol, depth + 1, opts) +
           refine(f, {m, p.b, p.fm, frm, p.fb, right}, 0.5 * tol, depth + 1, opts);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const QuadratureOptions& opts) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    // Seed with four panels so a symmetric integrand cannot fake convergence.
    const double q1 = 0.5 * (a + m);
    const double q3 = 0.5 * (m + b);
    const double fq1 = f(q1);
    const double fq3 = f(q3);
    const double tol = 0.5 * opts.abs_tol;
    return refine(f, {a, m, fa, fq1, fm, simpson(a, m, fa, fq1, fm)}, tol, 1, opts) +
           refine(f, {m, b, fm, fq3, fb, simpson(m, b, fm, fq3, fb)}, tol, 1, opts);
}

double bisect_nondecreasing(const std::function<double(double)>& g, double target, double lo,
                            double hi) {
    if (!(g(hi) >= target)) throw BracketError("bisection: upper end does not reach the target");
    if (g(lo) >= target) return lo;
    for (int it = 0; it < 2200; ++it) {
        const double mid = lo + 0.5 * (hi - lo);
        if (!(mid > lo && mid < hi)) break;
        if (g(mid) >= target)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

MinimumResult golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                                      double tol, int max_iter) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    int it = 0;
    for (; it < max_iter && (b - a) > tol * std::max(1.0, std::fabs(0.5 * (a + b))); ++it) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    if (fc <= fd) return {c, fc, it};
    return {d, fd, it};
}

}  // namespace orlicz::numeric
