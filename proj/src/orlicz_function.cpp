#include "orlicz/orlicz_function.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "orlicz/error.hpp"
#include "orlicz/kernels.hpp"

namespace orlicz {

std::string_view to_string(Kind kind) {
    switch (kind) {
        case Kind::power: return "power";
        case Kind::power_log: return "power_log";
        case Kind::exp_type: return "exp_type";
        case Kind::piecewise_hermite: return "piecewise_hermite";
        case Kind::complementary: return "complementary";
    }
    return "unknown";
}

std::string_view to_string(ZeroClass zc) {
    switch (zc) {
        case ZeroClass::zero: return "zero";
        case ZeroClass::infinite: return "infinite";
        case ZeroClass::finite_positive: return "finite_positive";
        case ZeroClass::indeterminate: return "indeterminate";
    }
    return "unknown";
}

Kind kind_from_string(std::string_view s) {
    for (Kind k : {Kind::power, Kind::power_log, Kind::exp_type, Kind::piecewise_hermite,
                   Kind::complementary})
        if (to_string(k) == s) return k;
    throw ParseError("unknown Orlicz kind '" + std::string(s) + "'");
}

ZeroClass zero_class_from_string(std::string_view s) {
    for (ZeroClass z : {ZeroClass::zero, ZeroClass::infinite, ZeroClass::finite_positive,
                        ZeroClass::indeterminate})
        if (to_string(z) == s) return z;
    throw ParseError("unknown zero class '" + std::string(s) + "'");
}

void OrliczModel::elasticity(std::span<const double> u, std::span<double> out) const {
    std::vector<double> m0(u.size()), m1(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        m0[i] = value(u[i]);
        m1[i] = first(u[i]);
    }
    kernels::product_ratio(u, m1, m0, out);
}

void OrliczModel::curvature(std::span<const double> u, std::span<double> out) const {
    std::vector<double> m1(u.size()), m2(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        m1[i] = first(u[i]);
        m2[i] = second(u[i]);
    }
    kernels::product_ratio(u, m2, m1, out);
}

OrliczFunction::OrliczFunction(Kind kind, Params params, double u_max,
                               std::optional<ZeroClass> zero_class,
                               std::shared_ptr<const OrliczModel> model)
    : kind_(kind),
      params_(std::move(params)),
      u_max_(u_max),
      zero_class_(zero_class),
      model_(std::move(model)) {
    if (!model_) throw PreconditionError("Orlicz function without evaluation rules");
    if (!(u_max_ > 1.0)) throw PreconditionError("u_max must exceed 1");
}

double OrliczFunction::param(const std::string& name) const {
    auto it = params_.find(name);
    if (it == params_.end()) throw PreconditionError("missing parameter '" + name + "'");
    return it->second;
}

void OrliczFunction::check_domain(double u) const {
    if (std::isnan(u) || u < 0.0 || u > u_max_) {
        std::ostringstream os;
        os << "argument " << u << " outside [0, " << u_max_ << "]";
        throw DomainError(os.str());
    }
}

double OrliczFunction::evaluate(double u, Order order) const {
    check_domain(u);
    switch (order) {
        case Order::value: return model_->value(u);
        case Order::first: return model_->first(u);
        case Order::second: return model_->second(u);
    }
    return model_->value(u);
}

void OrliczFunction::evaluate_many(std::span<const double> u, Order order,
                                   std::span<double> out) const {
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = evaluate(u[i], order);
}

void OrliczFunction::elasticity_many(std::span<const double> u, std::span<double> out) const {
    for (double x : u) check_domain(x);
    model_->elasticity(u, out);
}

void OrliczFunction::curvature_many(std::span<const double> u, std::span<double> out) const {
    for (double x : u) check_domain(x);
    model_->curvature(u, out);
}

OrliczFunction OrliczFunction::with_u_max(double u_max) const {
    return OrliczFunction(kind_, params_, u_max, zero_class_, model_);
}

OrliczFunction OrliczFunction::with_zero_class(std::optional<ZeroClass> zc) const {
    return OrliczFunction(kind_, params_, u_max_, zc, model_);
}

std::string OrliczFunction::describe() const {
    std::ostringstream os;
    os << to_string(kind_);
    if (!params_.empty()) {
        os << '(';
        bool first = true;
        for (const auto& [k, v] : params_) {
            os << (first ? "" : ", ") << k << '=' << v;
            first = false;
        }
        os << ')';
    }
    return os.str();
}

namespace {

// coef * u^e with 0 * (anything) == 0, so u = 0 never produces inf * 0.
double term(double coef, double u, double e) {
    if (coef == 0.0) return 0.0;
    return coef * std::pow(u, e);
}

ZeroClass power_zero_class(double p) {
    if (p > 2.0 || p == 1.0) return ZeroClass::zero;
    if (p < 2.0) return ZeroClass::infinite;
    return ZeroClass::finite_positive;
}

class PowerModel final : public OrliczModel {
public:
    explicit PowerModel(double p) : p_(p) {}
    double value(double u) const override { return std::pow(u, p_); }
    double first(double u) const override { return term(p_, u, p_ - 1.0); }
    double second(double u) const override { return term(p_ * (p_ - 1.0), u, p_ - 2.0); }

private:
    double p_;
};

class PowerLogModel final : public OrliczModel {
public:
    explicit PowerLogModel(double p) : p_(p), c_(1.0 + std::log(2.0)) {}

    double value(double u) const override {
        return std::pow(u, p_) * (1.0 + std::log1p(u)) / c_;
    }
    double first(double u) const override {
        const double L = 1.0 + std::log1p(u);
        return (term(p_, u, p_ - 1.0) * L + std::pow(u, p_) / (1.0 + u)) / c_;
    }
    double second(double u) const override {
        const double L = 1.0 + std::log1p(u);
        const double a = term(p_ * (p_ - 1.0), u, p_ - 2.0) * L;
        const double b = term(2.0 * p_, u, p_ - 1.0) / (1.0 + u);
        const double c = std::pow(u, p_) / ((1.0 + u) * (1.0 + u));
        return (a + b - c) / c_;
    }

    // Common powers cancel, which keeps the ratios finite for huge u.
    void elasticity(std::span<const double> u, std::span<double> out) const override {
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double x = u[i];
            const double L = 1.0 + std::log1p(x);
            out[i] = p_ + x / ((1.0 + x) * L);
        }
    }
    void curvature(std::span<const double> u, std::span<double> out) const override {
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double x = u[i];
            const double L = 1.0 + std::log1p(x);
            const double r = x / (1.0 + x);
            const double num = p_ * (p_ - 1.0) * L + 2.0 * p_ * r - r * r;
            const double den = p_ * L + r;
            out[i] = num / den;
        }
    }

private:
    double p_;
    double c_;
};

class ExpTypeModel final : public OrliczModel {
public:
    ExpTypeModel() : c_(std::exp(1.0) - 2.0) {}

    double value(double u) const override { return tail(u) / c_; }
    double first(double u) const override { return std::expm1(u) / c_; }
    double second(double u) const override { return std::exp(u) / c_; }

    void elasticity(std::span<const double> u, std::span<double> out) const override {
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double x = u[i];
            if (x > 30.0) {
                const double e = std::exp(-x);
                out[i] = x * (1.0 - e) / (1.0 - (1.0 + x) * e);
            } else {
                out[i] = x * std::expm1(x) / tail(x);
            }
        }
    }
    void curvature(std::span<const double> u, std::span<double> out) const override {
        for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] / -std::expm1(-u[i]);
    }

private:
    // e^u - u - 1 without cancellation near 0.
    static double tail(double u) {
        if (u < 0.5) {
            double t = u * u / 2.0, s = 0.0;
            for (int k = 3; k < 24 && t != 0.0; ++k) {
                s += t;
                t *= u / k;
            }
            return s;
        }
        return std::expm1(u) - u;
    }

    double c_;
};

}  // namespace

OrliczFunction power(double p, double u_max) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw PreconditionError("power exponent must be >= 1");
    return OrliczFunction(Kind::power, {{"p", p}}, u_max, power_zero_class(p),
                          std::make_shared<PowerModel>(p));
}

OrliczFunction power_log(double p, double u_max) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw PreconditionError("power_log exponent must be >= 1");
    // For p = 1 the 2pu^(p-1)/(1+u) term keeps M'' positive at 0.
    const ZeroClass zc = p == 1.0 ? ZeroClass::finite_positive : power_zero_class(p);
    return OrliczFunction(Kind::power_log, {{"p", p}}, u_max, zc,
                          std::make_shared<PowerLogModel>(p));
}

OrliczFunction exp_type(double u_max) {
    return OrliczFunction(Kind::exp_type, {}, u_max, ZeroClass::finite_positive,
                          std::make_shared<ExpTypeModel>());
}

}  // namespace orlicz
