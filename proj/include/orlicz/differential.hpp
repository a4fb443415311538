#pragma once

#include <vector>

#include "orlicz/orlicz_function.hpp"
#include "orlicz/step_function.hpp"

namespace orlicz {

/// The five partials of F(alpha, eta) = int M(|f + alpha g| / eta) - 1.
struct Partials {
    double F_alpha = 0.0;
    double F_alphaalpha = 0.0;
    double F_eta = 0.0;
    double F_alphaeta = 0.0;
    double F_etaeta = 0.0;
};

/// Relative residuals |closed - fd| / max(1, |closed|).
struct FdResiduals {
    double F_alpha = 0.0;
    double F_alphaalpha = 0.0;
    double F_eta = 0.0;
    double F_alphaeta = 0.0;
    double F_etaeta = 0.0;
    double Nprime = 0.0;
    double Nsecond = 0.0;
    double Nsecond_fd = 0.0;  // the finite-difference estimate itself
    double max() const;
};

struct NormCurveSample {
    double alpha = 0.0;
    double N = 0.0;
    double Nprime = 0.0;
    double Nsecond = 0.0;
    Partials partials;
    bool fd_checked = false;
    FdResiduals fd;
};

inline constexpr double kUnitTolerance = 1e-10;

/// F for a fixed unit pair. Works on the common refinement of f and g.
class ModularSurface {
public:
    ModularSurface(const StepFunction& f, const StepFunction& g, const OrliczFunction& phi,
                   double unit_tol = kUnitTolerance);

    double value(double alpha, double eta) const;
    Partials partials(double alpha, double eta) const;
    double norm(double alpha) const;

    /// N, N' and N'' at alpha from the implicit relations.
    NormCurveSample sample(double alpha) const;
    /// Closed-form partials and N', N'' against central differences with one
    /// Richardson step; h defaults to 1e-4 max(1, |alpha|).
    FdResiduals finite_difference_check(double alpha, double h = 0.0) const;

    /// alpha where some cell of f + alpha g vanishes while g does not.
    std::vector<double> crossing_points() const;
    bool is_crossing(double alpha) const;

    const OrliczFunction& phi() const noexcept { return phi_; }
    StepFunction combination(double alpha) const;

private:
    std::vector<double> t_, w_, f_, g_;
    OrliczFunction phi_;
};

double F_value(const StepFunction& f, const StepFunction& g, double alpha, double eta,
               const OrliczFunction& phi);
Partials F_partials(const StepFunction& f, const StepFunction& g, double alpha, double eta,
                    const OrliczFunction& phi);
/// Sample with finite-difference residuals attached.
NormCurveSample norm_curve(const StepFunction& f, const StepFunction& g, double alpha,
                           const OrliczFunction& phi);
FdResiduals finite_difference_check(const StepFunction& f, const StepFunction& g, double alpha,
                                    const OrliczFunction& phi, double h = 0.0);

/// Samples at each alpha that is not a crossing point; skipped ones go to `excluded`.
std::vector<NormCurveSample> sweep(const ModularSurface& surface, const std::vector<double>& alphas,
                                   bool with_fd, std::vector<double>* excluded = nullptr);

}  // namespace orlicz
