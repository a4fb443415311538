#pragma once

#include <functional>

namespace orlicz::numeric {

struct QuadratureOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-13;
    int max_depth = 48;
};

/// Adaptive Simpson on [a, b] with Richardson correction of each accepted panel.
/// Panels split wherever the local error estimate exceeds its share of the
/// tolerance, so endpoint singularities of the derivative (q(s) ~ s^(1/3))
/// are resolved by repeated subdivision.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const QuadratureOptions& opts = {});

/// Smallest x in [lo, hi] with g(x) >= target for nondecreasing g, to the
/// resolution of adjacent doubles. Requires g(lo) < target <= g(hi).
double bisect_nondecreasing(const std::function<double(double)>& g, double target, double lo,
                            double hi);

struct MinimumResult {
    double x = 0.0;
    double value = 0.0;
    int iterations = 0;
};

/// Golden-section search for the minimum of a unimodal objective on [lo, hi].
/// Stops when the bracket width is below tol * max(1, |x|).
MinimumResult golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                                      double tol = 1e-10, int max_iter = 400);

}  // namespace orlicz::numeric
