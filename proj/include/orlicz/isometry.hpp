#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/detector.hpp"
#include "orlicz/orlicz_function.hpp"
#include "orlicz/step_function.hpp"

namespace orlicz {

using Operator = std::function<StepFunction(const StepFunction&)>;

/// Tf(t) = a(t) f(sigma(t)). Target cell j is mapped affinely and increasingly
/// onto source cell sigma[j] of the uniform source partition.
struct WeightedComposition {
    std::vector<double> target;  // breakpoints of the target partition
    std::size_t source_cells = 1;
    std::vector<std::size_t> sigma;
    StepFunction weight;

    static WeightedComposition uniform(std::vector<std::size_t> sigma, StepFunction weight);
    static WeightedComposition identity(std::size_t cells);

    void validate() const;
    StepFunction apply(const StepFunction& f) const;
    Operator as_operator() const;
};

StepFunction apply_operator(const WeightedComposition& T, const StepFunction& f);

/// T1 o T2 for compositions on the same uniform partition.
WeightedComposition compose(const WeightedComposition& T1, const WeightedComposition& T2);

/// Rotation by `angle` of the two halves of [0, 1]: with u, v the rescaled
/// halves of f, Tf = (c u - s v) on the left half and (s u + c v) on the right.
Operator rotation_operator(double angle);

/// Tf = f + (int f) chi_[0,1]; not an isometry.
Operator perturbed_identity();

struct PreservationFailure {
    std::size_t pair_index = 0;
    std::string reason;
};

struct IsometryReport {
    double max_norm_deviation = 0.0;
    std::size_t worst_index = 0;
    std::size_t testset_size = 0;
    bool is_isometry = false;
    std::vector<PreservationFailure> preservation_failures;
    std::size_t pairs_checked = 0;
    std::size_t detector_checked = 0;
    std::size_t detector_agreements = 0;
    std::size_t detector_inconclusive = 0;
    std::size_t detector_disagreements = 0;
    std::vector<std::string> notes;
};

inline constexpr double kIsometryTolerance = 1e-9;

struct IsometryOptions {
    std::size_t combinations = 200;
    std::uint64_t seed = 1;
    bool detector = true;
    DetectorOptions detector_options;
};

/// Deviation max |‖Tf‖ - ‖f‖| over the testset extended by random combinations f + alpha g.
IsometryReport check_isometry(const Operator& T, const OrliczFunction& phi,
                              const std::vector<StepFunction>& testset,
                              const IsometryOptions& opts = {});

/// Verifies supp Tf and supp Tg stay disjoint. T must pass check_isometry on
/// the pair members first; otherwise PreconditionError.
IsometryReport check_disjointness_preservation(
    const Operator& T, const OrliczFunction& phi,
    const std::vector<std::pair<StepFunction, StepFunction>>& pairs,
    const IsometryOptions& opts = {});

inline constexpr std::size_t kUncovered = std::numeric_limits<std::size_t>::max();

struct Recovery {
    std::size_t resolution = 0;
    std::vector<double> breakpoints;  // fine target partition
    std::vector<std::size_t> sigma;   // fine cell -> source cell, kUncovered if a = 0
    StepFunction a;
    double residual = 0.0;
    bool unimodular = false;
    bool geometric_lattice = false;
    double lattice_A = 0.0;
    double lattice_gamma = 0.0;
    std::optional<bool> power_like_near_zero;
    double power_exponent = 0.0;

    /// a(t) f(sigma(t)) for f constant on the source cells.
    StepFunction apply(const StepFunction& f) const;
};

/// Fits log M against log u on [1e-8, t0]; true when R^2 >= 1 - 1e-6.
bool power_like_near_zero(const OrliczFunction& phi, double t0, double* exponent = nullptr);

/// Probes T with the indicators of the uniform partition at `resolution`.
Recovery recover_weighted_composition(const Operator& T, std::size_t resolution,
                                      const OrliczFunction& phi, std::uint64_t seed = 1,
                                      std::size_t validation = 32);

}  // namespace orlicz
