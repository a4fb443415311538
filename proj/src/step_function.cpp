#include "orlicz/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>

#include "orlicz/error.hpp"

namespace orlicz {
namespace {

std::vector<double> merge_sorted(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

template <class Op>
StepFunction pointwise(const StepFunction& f, const StepFunction& g, Op op) {
    std::vector<double> t = common_breakpoints(f, g);
    const StepFunction fr = f.refine_to(t);
    const StepFunction gr = g.refine_to(t);
    std::vector<double> v(t.size() - 1);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = op(fr.values()[i], gr.values()[i]);
    return StepFunction(std::move(t), std::move(v));
}

}  // namespace

StepFunction::StepFunction() : t_{0.0, 1.0}, v_{0.0} {}

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<double> values)
    : t_(std::move(breakpoints)), v_(std::move(values)) {
    if (t_.size() < 2) throw PreconditionError("a step function needs at least one cell");
    if (t_.front() != 0.0 || t_.back() != 1.0)
        throw PreconditionError("breakpoints must run from 0 to 1");
    if (v_.size() + 1 != t_.size())
        throw PreconditionError("need exactly one value per cell");
    for (std::size_t i = 1; i < t_.size(); ++i)
        if (!(t_[i] > t_[i - 1])) throw PreconditionError("breakpoints must be strictly increasing");
    for (double x : v_)
        if (!std::isfinite(x)) throw PreconditionError("step function values must be finite");
}

StepFunction StepFunction::constant(double c) { return StepFunction({0.0, 1.0}, {c}); }

StepFunction StepFunction::indicator(double a, double b, double c) {
    if (!(0.0 <= a && a < b && b <= 1.0)) throw PreconditionError("indicator needs 0 <= a < b <= 1");
    std::vector<double> t{0.0};
    std::vector<double> v;
    if (a > 0.0) {
        t.push_back(a);
        v.push_back(0.0);
    }
    t.push_back(b);
    v.push_back(c);
    if (b < 1.0) {
        t.push_back(1.0);
        v.push_back(0.0);
    }
    return StepFunction(std::move(t), std::move(v));
}

StepFunction StepFunction::uniform(std::vector<double> values) {
    std::vector<double> t = uniform_breakpoints(values.size());
    return StepFunction(std::move(t), std::move(values));
}

StepFunction StepFunction::place(const StepFunction& f, double a, double b) {
    if (!(0.0 <= a && a < b && b <= 1.0)) throw PreconditionError("place needs 0 <= a < b <= 1");
    std::vector<double> t{0.0};
    std::vector<double> v;
    if (a > 0.0) {
        t.push_back(a);
        v.push_back(0.0);
    }
    for (std::size_t i = 0; i < f.cells(); ++i) {
        const double end = i + 1 == f.cells() ? b : a + (b - a) * f.t_[i + 1];
        if (end > t.back()) {
            t.push_back(end);
            v.push_back(f.v_[i]);
        }
    }
    if (b < 1.0) {
        t.push_back(1.0);
        v.push_back(0.0);
    }
    return StepFunction(std::move(t), std::move(v));
}

std::vector<double> StepFunction::widths() const {
    std::vector<double> w(v_.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = t_[i + 1] - t_[i];
    return w;
}

double StepFunction::operator()(double t) const {
    if (!(t >= 0.0 && t <= 1.0)) throw DomainError("step functions live on [0, 1]");
    auto it = std::upper_bound(t_.begin(), t_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - t_.begin());
    if (i > v_.size()) i = v_.size();
    return v_[i - 1];
}

StepFunction StepFunction::refine_to(const std::vector<double>& bps) const {
    for (double t : t_)
        if (!std::binary_search(bps.begin(), bps.end(), t))
            throw PreconditionError("refinement misses breakpoint " + std::to_string(t));
    std::vector<double> v(bps.size() - 1);
    std::size_t j = 0;
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
        while (j + 1 < v_.size() && t_[j + 1] <= bps[i]) ++j;
        v[i] = v_[j];
    }
    return StepFunction(bps, std::move(v));
}

StepFunction StepFunction::restrict_rescale(double a, double b) const {
    if (!(0.0 <= a && a < b && b <= 1.0)) throw PreconditionError("restrict needs 0 <= a < b <= 1");
    std::vector<double> t{0.0};
    std::vector<double> v;
    for (std::size_t i = 0; i < v_.size(); ++i) {
        const double lo = std::max(a, t_[i]), hi = std::min(b, t_[i + 1]);
        if (!(hi > lo)) continue;
        const double end = hi >= b ? 1.0 : (hi - a) / (b - a);
        if (end > t.back()) {
            t.push_back(end);
            v.push_back(v_[i]);
        }
    }
    return StepFunction(std::move(t), std::move(v));
}

StepFunction StepFunction::simplified() const {
    std::vector<double> t{0.0};
    std::vector<double> v{v_[0]};
    for (std::size_t i = 1; i < v_.size(); ++i) {
        if (v_[i] == v.back()) continue;
        t.push_back(t_[i]);
        v.push_back(v_[i]);
    }
    t.push_back(1.0);
    return StepFunction(std::move(t), std::move(v));
}

double StepFunction::sup_norm() const {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::fabs(x));
    return m;
}

double StepFunction::integral() const {
    double s = 0.0;
    for (std::size_t i = 0; i < v_.size(); ++i) s += (t_[i + 1] - t_[i]) * v_[i];
    return s;
}

bool StepFunction::is_zero() const {
    return std::all_of(v_.begin(), v_.end(), [](double x) { return x == 0.0; });
}

StepFunction StepFunction::abs() const {
    StepFunction r = *this;
    for (double& x : r.v_) x = std::fabs(x);
    return r;
}

bool StepFunction::same_function(const StepFunction& other) const {
    const std::vector<double> t = common_breakpoints(*this, other);
    return refine_to(t).v_ == other.refine_to(t).v_;
}

StepFunction StepFunction::operator-() const { return -1.0 * *this; }

StepFunction& StepFunction::operator*=(double c) {
    for (double& x : v_) x *= c;
    return *this;
}

StepFunction operator+(const StepFunction& f, const StepFunction& g) {
    return pointwise(f, g, [](double a, double b) { return a + b; });
}

StepFunction operator-(const StepFunction& f, const StepFunction& g) {
    return pointwise(f, g, [](double a, double b) { return a - b; });
}

StepFunction operator*(const StepFunction& f, const StepFunction& g) {
    return pointwise(f, g, [](double a, double b) { return a * b; });
}

StepFunction operator*(double c, const StepFunction& f) {
    StepFunction r = f;
    r *= c;
    return r;
}

std::vector<double> common_breakpoints(const StepFunction& f, const StepFunction& g) {
    return merge_sorted(f.breakpoints(), g.breakpoints());
}

StepFunction combine(const StepFunction& f, const StepFunction& g, double alpha) {
    return pointwise(f, g, [alpha](double a, double b) { return a + alpha * b; });
}

std::vector<double> uniform_breakpoints(std::size_t n) {
    if (n == 0) throw PreconditionError("need at least one cell");
    std::vector<double> t(n + 1);
    for (std::size_t i = 0; i <= n; ++i) t[i] = static_cast<double>(i) / static_cast<double>(n);
    return t;
}

}  // namespace orlicz
