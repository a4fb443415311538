#pragma once

#include <cstddef>
#include <vector>

namespace orlicz {

/// Piecewise-constant function on [0, 1]: value v_i on [t_{i-1}, t_i).
class StepFunction {
public:
    /// The zero function on a single cell.
    StepFunction();
    StepFunction(std::vector<double> breakpoints, std::vector<double> values);

    static StepFunction constant(double c);
    /// c on [a, b), zero elsewhere.
    static StepFunction indicator(double a, double b, double c = 1.0);
    /// n equal cells with the given values.
    static StepFunction uniform(std::vector<double> values);
    /// f rescaled from [0, 1] onto [a, b), zero elsewhere.
    static StepFunction place(const StepFunction& f, double a, double b);

    const std::vector<double>& breakpoints() const noexcept { return t_; }
    const std::vector<double>& values() const noexcept { return v_; }
    std::size_t cells() const noexcept { return v_.size(); }
    double width(std::size_t i) const { return t_[i + 1] - t_[i]; }
    std::vector<double> widths() const;

    /// Value at t in [0, 1]; t = 1 reads the last cell.
    double operator()(double t) const;

    /// Same function on a finer partition; bps must contain every own breakpoint.
    StepFunction refine_to(const std::vector<double>& bps) const;
    /// Restriction to [a, b) stretched back onto [0, 1).
    StepFunction restrict_rescale(double a, double b) const;
    /// Adjacent cells with equal values merged.
    StepFunction simplified() const;

    double sup_norm() const;
    double integral() const;
    bool is_zero() const;
    StepFunction abs() const;

    /// Same function, regardless of representation.
    bool same_function(const StepFunction& other) const;

    StepFunction operator-() const;
    StepFunction& operator*=(double c);
    friend StepFunction operator+(const StepFunction& f, const StepFunction& g);
    friend StepFunction operator-(const StepFunction& f, const StepFunction& g);
    friend StepFunction operator*(const StepFunction& f, const StepFunction& g);
    friend StepFunction operator*(double c, const StepFunction& f);
    friend StepFunction operator*(const StepFunction& f, double c) { return c * f; }

private:
    std::vector<double> t_;
    std::vector<double> v_;
};

/// Union of both breakpoint sets.
std::vector<double> common_breakpoints(const StepFunction& f, const StepFunction& g);

/// f + alpha g on the common refinement.
StepFunction combine(const StepFunction& f, const StepFunction& g, double alpha);

/// Uniform breakpoints i / n.
std::vector<double> uniform_breakpoints(std::size_t n);

}  // namespace orlicz
