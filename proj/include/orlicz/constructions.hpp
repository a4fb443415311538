#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "orlicz/conditions.hpp"
#include "orlicz/orlicz_function.hpp"

namespace orlicz {

/// One interval of a piecewise M1'. Polynomial rules store
/// M1'(k + t) = c[0] + c[1] t + c[2] t^2 + c[3] t^3 in the local variable t.
struct Segment {
    enum class Rule { source, constant, linear, connector, blend, ramp };
    Rule rule = Rule::source;
    std::array<double, 4> c{};
};

std::string_view to_string(Segment::Rule rule);
Segment::Rule segment_rule_from_string(std::string_view s);

/// M1 given by its derivative on knots 0 = u_0 < ... < u_K. Segment i covers
/// [u_i, u_{i+1}); the last segment continues past u_K. Source segments
/// delegate to the source function, so M1 = M wherever M1' = M'.
class PiecewiseOrlicz final : public OrliczModel {
public:
    PiecewiseOrlicz(std::vector<double> knots, std::vector<Segment> segments, OrliczFunction source,
                    std::string construction, std::vector<double> probes);

    double value(double u) const override;
    double first(double u) const override;
    double second(double u) const override;
    std::vector<double> probe_points() const override { return probes_; }

    const std::vector<double>& knots() const noexcept { return knots_; }
    const std::vector<Segment>& segments() const noexcept { return segments_; }
    const OrliczFunction& source() const noexcept { return source_; }
    const std::vector<double>& integral_cache() const noexcept { return cache_; }
    const std::string& construction() const noexcept { return construction_; }

private:
    std::size_t locate(double u) const;
    double seg_first(std::size_t i, double u) const;
    double seg_second(std::size_t i, double u) const;

    std::vector<double> knots_;
    std::vector<Segment> segments_;
    OrliczFunction source_;
    std::string construction_;
    std::vector<double> probes_;
    std::vector<double> cache_;
};

/// Wraps a piecewise model as an Orlicz function with the source's range and zero class.
OrliczFunction make_piecewise(std::vector<double> knots, std::vector<Segment> segments,
                              const OrliczFunction& source, std::string construction,
                              std::vector<double> probes, Params params = {});

/// nullptr unless phi is piecewise.
const PiecewiseOrlicz* as_piecewise(const OrliczFunction& phi);

/// M1 equivalent to M with bounded u M1''/M1'. M1 = M on [0, 2]; on each
/// octave [2^k, 2^(k+1)] M1' runs from M'(2^k) to M'(2^(k+1)) through a
/// quadratic connector on [2^k, 2^k + 1] and a straight segment after it.
OrliczFunction build_delta2plus_equivalent(const OrliczFunction& phi);

/// Perturbation of M within relative eps whose u M1''/M1' exceeds 2^n at u = n + 1/2.
OrliczFunction build_delta2plus_violator(const OrliczFunction& phi, double eps);

/// Checks M2(k u) <= M1(u) <= M2(l u) on the grid.
ConditionReport verify_equivalence(const OrliczFunction& m1, const OrliczFunction& m2, double k,
                                   double l, const GeometricGrid& grid);

/// Right inverse q(v) of M': the smallest u with M'(u) >= v.
double invert_derivative(const OrliczFunction& phi, double v);

/// M*(v) = integral of q over [0, v]; (M*)' = q, (M*)'' = 1 / M''(q).
OrliczFunction complementary(const OrliczFunction& phi);

/// Source of a complementary function, or nullptr.
const OrliczFunction* complementary_source(const OrliczFunction& phi);

}  // namespace orlicz
