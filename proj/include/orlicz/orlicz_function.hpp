#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace orlicz {

enum class Kind { power, power_log, exp_type, piecewise_hermite, complementary };

/// Behaviour of M'' as u -> 0+.
enum class ZeroClass { zero, infinite, finite_positive, indeterminate };

enum class Order { value = 0, first = 1, second = 2 };

std::string_view to_string(Kind kind);
std::string_view to_string(ZeroClass zc);
Kind kind_from_string(std::string_view s);
ZeroClass zero_class_from_string(std::string_view s);

inline constexpr double kDefaultUMax = 1099511627776.0;  // 2^40
inline constexpr double kExpTypeUMax = 1048576.0;        // 2^20

/// Evaluation rules behind an OrliczFunction. Implementations are immutable.
class OrliczModel {
public:
    virtual ~OrliczModel() = default;

    virtual double value(double u) const = 0;
    virtual double first(double u) const = 0;
    /// May throw UndefinedDerivativeError at a kink.
    virtual double second(double u) const = 0;

    /// out[i] = u M'(u) / M(u)
    virtual void elasticity(std::span<const double> u, std::span<double> out) const;
    /// out[i] = u M''(u) / M'(u)
    virtual void curvature(std::span<const double> u, std::span<double> out) const;

    /// Points a grid sweep must include to see fine structure (e.g. narrow ramps).
    virtual std::vector<double> probe_points() const { return {}; }
};

using Params = std::map<std::string, double>;

/// An Orlicz function M with its first two derivatives, a trusted range
/// [0, u_max] and the declared class of M'' at zero.
class OrliczFunction {
public:
    OrliczFunction(Kind kind, Params params, double u_max, std::optional<ZeroClass> zero_class,
                   std::shared_ptr<const OrliczModel> model);

    Kind kind() const noexcept { return kind_; }
    const Params& params() const noexcept { return params_; }
    double param(const std::string& name) const;
    double u_max() const noexcept { return u_max_; }
    std::optional<ZeroClass> declared_zero_class() const noexcept { return zero_class_; }
    const OrliczModel& model() const noexcept { return *model_; }
    std::shared_ptr<const OrliczModel> model_ptr() const noexcept { return model_; }

    /// Throws DomainError outside [0, u_max].
    double evaluate(double u, Order order = Order::value) const;
    double operator()(double u) const { return evaluate(u, Order::value); }
    double derivative(double u) const { return evaluate(u, Order::first); }
    double second_derivative(double u) const { return evaluate(u, Order::second); }

    void evaluate_many(std::span<const double> u, Order order, std::span<double> out) const;
    void elasticity_many(std::span<const double> u, std::span<double> out) const;
    void curvature_many(std::span<const double> u, std::span<double> out) const;
    std::vector<double> probe_points() const { return model_->probe_points(); }

    OrliczFunction with_u_max(double u_max) const;
    OrliczFunction with_zero_class(std::optional<ZeroClass> zc) const;

    std::string describe() const;

private:
    void check_domain(double u) const;

    Kind kind_;
    Params params_;
    double u_max_;
    std::optional<ZeroClass> zero_class_;
    std::shared_ptr<const OrliczModel> model_;
};

/// M(u) = u^p, p >= 1.
OrliczFunction power(double p, double u_max = kDefaultUMax);

/// M(u) = u^p (1 + log(1 + u)) / (1 + log 2), so that M(1) = 1.
OrliczFunction power_log(double p, double u_max = kDefaultUMax);

/// M(u) = (e^u - u - 1) / (e - 2). Fails Delta_2. M overflows to +inf past u ~ 709;
/// the elasticity and curvature ratios stay finite over the whole range.
OrliczFunction exp_type(double u_max = kExpTypeUMax);

}  // namespace orlicz
