#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "orlicz/orlicz_function.hpp"

namespace orlicz {

inline constexpr double kEpsPos = 1e-8;
inline constexpr double kDefaultU0 = 1e-8;
inline constexpr double kDefaultGridTop = 1048576.0;  // 2^20
inline constexpr int kPointsPerOctave = 64;

/// Geometric grid lo * 2^(i / per_octave), closed off with hi.
struct GeometricGrid {
    double lo = kDefaultU0;
    double hi = kDefaultGridTop;
    int per_octave = kPointsPerOctave;

    std::vector<double> points() const;
};

/// [max(u0, eps_pos), min(2^20, u_max)] at 64 points per octave.
GeometricGrid default_condition_grid(const OrliczFunction& phi, double u0 = kDefaultU0);

enum class Condition { axioms, delta2, delta2plus, all_inequality, equivalence };
std::string_view to_string(Condition c);

struct ConditionReport {
    Condition condition = Condition::axioms;
    bool passed = false;
    double witness_sup = 0.0;
    double witness_arg = 0.0;
    double bound = 0.0;
    double u0_used = 0.0;
    GeometricGrid grid;
    double min_ratio = 0.0;
    double min_arg = 0.0;
    std::size_t points_tested = 0;
    std::size_t points_skipped = 0;
    std::size_t probes_tested = 0;
    std::vector<std::string> failures;
    std::vector<std::string> notes;
};

ConditionReport check_axioms(const OrliczFunction& phi);
ConditionReport check_axioms(const OrliczFunction& phi, const GeometricGrid& grid);

/// Sup of u M'(u) / M(u) over the grid, with the lower check M(u) <= u M'(u) and a
/// doubling spot-check M(2u) <= 2^sup M(u) on the lower half of the grid.
ConditionReport check_delta2(const OrliczFunction& phi, double u0 = kDefaultU0);
ConditionReport check_delta2(const OrliczFunction& phi, double u0, const GeometricGrid& grid);

/// Sup of u M''(u) / M'(u) over the grid. Kinks are skipped and counted.
ConditionReport check_delta2plus(const OrliczFunction& phi, double u0 = kDefaultU0);
ConditionReport check_delta2plus(const OrliczFunction& phi, double u0, const GeometricGrid& grid);

/// Class read off M'' on u_k = 1e-2 * 2^-k, k = 0..40, with no reference to
/// the declared class.
ZeroClass observe_zero_class(const OrliczFunction& phi);

/// As observe_zero_class, but a declared class that disagrees is a PreconditionError.
ZeroClass classify_second_derivative_at_zero(const OrliczFunction& phi);

}  // namespace orlicz
