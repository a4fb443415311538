#include "orlicz/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "orlicz/error.hpp"
#include "orlicz/kernels.hpp"

namespace orlicz {
namespace {

constexpr double kMinEndSlope = 1e-3;

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

struct Sweep {
    std::vector<double> u;
    std::vector<char> probe;
};

Sweep build_sweep(const OrliczFunction& phi, const GeometricGrid& grid) {
    std::vector<double> pts = grid.points();
    std::vector<double> probes;
    for (double p : phi.probe_points())
        if (p >= grid.lo && p <= grid.hi) probes.push_back(p);
    std::sort(probes.begin(), probes.end());

    Sweep s;
    s.u.reserve(pts.size() + probes.size());
    std::size_t j = 0;
    for (double x : pts) {
        while (j < probes.size() && probes[j] <= x) {
            if (probes[j] != x) {
                s.u.push_back(probes[j]);
                s.probe.push_back(1);
            }
            ++j;
        }
        s.u.push_back(x);
        s.probe.push_back(0);
    }
    for (; j < probes.size(); ++j) {
        s.u.push_back(probes[j]);
        s.probe.push_back(1);
    }
    for (std::size_t i = 0; i < s.u.size(); ++i)
        if (s.probe[i] == 0 && std::binary_search(probes.begin(), probes.end(), s.u[i]))
            s.probe[i] = 1;
    return s;
}

void validate_grid(const OrliczFunction& phi, double u0, const GeometricGrid& grid) {
    if (!(grid.lo > 0.0) || !(grid.hi >= grid.lo) || grid.per_octave < 1)
        throw PreconditionError("grid must be nonempty and positive");
    if (grid.lo < std::max(u0, kEpsPos))
        throw PreconditionError("grid starts below max(u0, eps_pos)");
    if (grid.hi > phi.u_max()) throw PreconditionError("grid exceeds u_max");
}

// Running sup of the ratio must not grow by more than 1% over the top four
// octaves. When the function carries probe points, the last four probes must
// also stay within 1% of the sup reached before them.
double threshold_bound(const Sweep& s, const std::vector<double>& r, double hi,
                       std::vector<std::string>& notes) {
    const std::size_t n = r.size();
    std::vector<double> run(n);
    double S = -kInf;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isnan(r[i])) S = std::max(S, r[i]);
        run[i] = S;
    }
    std::size_t cut = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (s.u[i] <= hi / 16.0) cut = i;
    double bound = 1.01 * run[cut];

    std::vector<std::size_t> probes;
    for (std::size_t i = 0; i < n; ++i)
        if (s.probe[i]) probes.push_back(i);
    if (probes.size() >= 5) {
        const std::size_t j = probes[probes.size() - 4];
        if (j > 0) {
            bound = std::min(bound, 1.01 * run[j - 1]);
            notes.push_back("probe tail tested from u = " + fmt(s.u[j]));
        }
    }
    return bound;
}

void fill_sup(ConditionReport& rep, const Sweep& s, const std::vector<double>& r,
              const std::vector<char>& keep) {
    rep.witness_sup = -kInf;
    rep.min_ratio = kInf;
    bool saw_nan = false;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (!keep.empty() && !keep[i]) continue;
        if (std::isnan(r[i])) {
            if (!saw_nan) rep.failures.push_back("ratio undefined at u = " + fmt(s.u[i]));
            saw_nan = true;
            rep.witness_sup = std::numeric_limits<double>::quiet_NaN();
            rep.witness_arg = s.u[i];
            continue;
        }
        if (!saw_nan && r[i] > rep.witness_sup) {
            rep.witness_sup = r[i];
            rep.witness_arg = s.u[i];
        }
        if (r[i] < rep.min_ratio) {
            rep.min_ratio = r[i];
            rep.min_arg = s.u[i];
        }
    }
}

}  // namespace

std::vector<double> GeometricGrid::points() const {
    std::vector<double> out;
    if (!(lo > 0.0) || !(hi >= lo) || per_octave < 1) return out;
    const double octaves = std::log2(hi / lo);
    const auto n = static_cast<long>(std::floor(octaves * per_octave + 1e-9));
    out.reserve(static_cast<std::size_t>(n) + 2);
    for (long i = 0; i <= n; ++i) {
        const double x = lo * std::exp2(static_cast<double>(i) / per_octave);
        if (x >= hi) break;
        out.push_back(x);
    }
    out.push_back(hi);
    return out;
}

GeometricGrid default_condition_grid(const OrliczFunction& phi, double u0) {
    return GeometricGrid{std::max(u0, kEpsPos), std::min(kDefaultGridTop, phi.u_max()),
                         kPointsPerOctave};
}

std::string_view to_string(Condition c) {
    switch (c) {
        case Condition::axioms: return "axioms";
        case Condition::delta2: return "delta2";
        case Condition::delta2plus: return "delta2plus";
        case Condition::all_inequality: return "all_inequality";
        case Condition::equivalence: return "equivalence";
    }
    return "unknown";
}

ConditionReport check_axioms(const OrliczFunction& phi) {
    return check_axioms(phi, default_condition_grid(phi));
}

ConditionReport check_axioms(const OrliczFunction& phi, const GeometricGrid& grid) {
    validate_grid(phi, 0.0, grid);
    ConditionReport rep;
    rep.condition = Condition::axioms;
    rep.grid = grid;
    rep.u0_used = grid.lo;
    rep.bound = 0.0;

    const double m0 = phi(0.0);
    const double m1 = phi(1.0);
    if (std::fabs(m0) > 1e-12) rep.failures.push_back("M(0) = " + fmt(m0));
    if (std::fabs(m1 - 1.0) > 1e-12) rep.failures.push_back("M(1) = " + fmt(m1));

    const std::vector<double> u = grid.points();
    rep.points_tested = u.size();
    double prev_m = m0, prev_d = phi.derivative(0.0), prev_ratio = -kInf;
    bool mono_m = true, mono_d = true, convex = true, ratio_up = true;
    double first_ratio = kInf, last_ratio = kInf;
    for (double x : u) {
        const double m = phi(x);
        const double d = phi.derivative(x);
        if (mono_m && m < prev_m - 1e-12 * std::fabs(prev_m)) {
            rep.failures.push_back("M decreases at u = " + fmt(x));
            mono_m = false;
        }
        if (mono_d && d < prev_d - 1e-12 * std::fabs(prev_d)) {
            rep.failures.push_back("M' decreases at u = " + fmt(x));
            mono_d = false;
        }
        try {
            const double d2 = phi.second_derivative(x);
            if (convex && d2 < -1e-12 * (1.0 + d / x)) {
                rep.failures.push_back("M'' negative at u = " + fmt(x));
                convex = false;
            }
        } catch (const UndefinedDerivativeError&) {
            ++rep.points_skipped;
        }
        if (std::isfinite(m)) {
            const double ratio = m / x;
            if (ratio_up && !(ratio > prev_ratio)) {
                rep.failures.push_back("M(u)/u not increasing at u = " + fmt(x));
                ratio_up = false;
            }
            prev_ratio = ratio;
            if (first_ratio == kInf) first_ratio = ratio;
            last_ratio = ratio;
        } else {
            last_ratio = kInf;
        }
        prev_m = m;
        prev_d = d;
    }
    // M(u)/u must still move at a power rate over the end octaves of the grid.
    if (!u.empty()) {
        const double lo = grid.lo, hi = grid.hi;
        const double span = std::min(2.0, hi / lo);
        const auto slope = [&](double a) {
            const double ra = phi(a) / a, rb = phi(a * span) / (a * span);
            return std::log(rb / ra) / std::log(span);
        };
        const double bottom = slope(lo), top = std::isfinite(last_ratio) ? slope(hi / span) : kInf;
        if (!(bottom >= kMinEndSlope))
            rep.failures.push_back("M(u)/u = " + fmt(first_ratio) + " at grid bottom with log-slope " +
                                   fmt(bottom) + ": no decay to 0");
        if (!(top >= kMinEndSlope))
            rep.failures.push_back("M(u)/u = " + fmt(last_ratio) + " at grid top with log-slope " +
                                   fmt(top) + ": no growth");
    }

    rep.witness_sup = static_cast<double>(rep.failures.size());
    rep.witness_arg = u.empty() ? 0.0 : u.back();
    rep.min_ratio = first_ratio;
    rep.min_arg = grid.lo;
    rep.passed = rep.failures.empty();
    return rep;
}

ConditionReport check_delta2(const OrliczFunction& phi, double u0) {
    return check_delta2(phi, u0, default_condition_grid(phi, u0));
}

ConditionReport check_delta2(const OrliczFunction& phi, double u0, const GeometricGrid& grid) {
    validate_grid(phi, u0, grid);
    ConditionReport rep;
    rep.condition = Condition::delta2;
    rep.grid = grid;
    rep.u0_used = std::max(u0, kEpsPos);
    rep.notes.push_back("sup estimated on a sampled grid");

    const Sweep s = build_sweep(phi, grid);
    for (std::size_t i = 0; i < s.u.size(); ++i)
        if (phi(s.u[i]) == 0.0)
            throw DomainError("M vanishes at grid point u = " + fmt(s.u[i]));
    std::vector<double> r(s.u.size());
    phi.elasticity_many(s.u, r);
    rep.points_tested = s.u.size();
    rep.probes_tested = static_cast<std::size_t>(std::count(s.probe.begin(), s.probe.end(), 1));

    fill_sup(rep, s, r, {});
    rep.bound = threshold_bound(s, r, grid.hi, rep.notes);

    bool ok = std::isfinite(rep.witness_sup) && rep.witness_sup <= rep.bound;
    if (std::isfinite(rep.witness_sup) && !ok)
        rep.failures.push_back("ratio still growing over the top of the grid");
    if (!(rep.min_ratio > 1.0)) {
        rep.failures.push_back("u M'/M = " + fmt(rep.min_ratio) + " <= 1 at u = " + fmt(rep.min_arg));
        ok = false;
    }
    if (std::isfinite(rep.witness_sup)) {
        const double factor = std::exp2(rep.witness_sup);
        for (std::size_t i = 0; i < s.u.size() / 2; ++i) {
            const double x = s.u[i];
            if (2.0 * x > phi.u_max()) break;
            if (phi(2.0 * x) > factor * phi(x) * (1.0 + 1e-12)) {
                rep.failures.push_back("M(2u) > 2^sup M(u) at u = " + fmt(x));
                ok = false;
                break;
            }
        }
    }
    rep.passed = ok;
    return rep;
}

ConditionReport check_delta2plus(const OrliczFunction& phi, double u0) {
    return check_delta2plus(phi, u0, default_condition_grid(phi, u0));
}

ConditionReport check_delta2plus(const OrliczFunction& phi, double u0, const GeometricGrid& grid) {
    validate_grid(phi, u0, grid);
    ConditionReport rep;
    rep.condition = Condition::delta2plus;
    rep.grid = grid;
    rep.u0_used = std::max(u0, kEpsPos);
    rep.notes.push_back("sup estimated on a sampled grid");

    const Sweep s = build_sweep(phi, grid);
    const std::size_t n = s.u.size();
    std::vector<double> r(n);
    std::vector<char> keep(n, 1);
    try {
        phi.curvature_many(s.u, r);
    } catch (const UndefinedDerivativeError&) {
        std::vector<double> m1(n), m2(n);
        for (std::size_t i = 0; i < n; ++i) {
            m1[i] = phi.derivative(s.u[i]);
            try {
                m2[i] = phi.second_derivative(s.u[i]);
            } catch (const UndefinedDerivativeError&) {
                keep[i] = 0;
                m2[i] = 0.0;
                ++rep.points_skipped;
            }
        }
        kernels::product_ratio(s.u, m2, m1, r);
    }
    if (static_cast<double>(rep.points_skipped) > 0.01 * static_cast<double>(n))
        throw UndefinedDerivativeError("more than 1% of the grid hits kinks of M'");

    rep.points_tested = n - rep.points_skipped;
    for (std::size_t i = 0; i < n; ++i)
        if (s.probe[i] && keep[i]) ++rep.probes_tested;

    fill_sup(rep, s, r, keep);
    // Skipped points carry no ratio; the running sup just carries over them.
    std::vector<double> rr = r;
    for (std::size_t i = 0; i < n; ++i)
        if (!keep[i]) rr[i] = std::numeric_limits<double>::quiet_NaN();
    rep.bound = threshold_bound(s, rr, grid.hi, rep.notes);
    rep.passed = std::isfinite(rep.witness_sup) && rep.witness_sup <= rep.bound;
    if (std::isfinite(rep.witness_sup) && !rep.passed)
        rep.failures.push_back("u M''/M' running sup grows past " + fmt(rep.bound) +
                               ", reaching " + fmt(rep.witness_sup) + " at u = " +
                               fmt(rep.witness_arg));
    if (rep.points_skipped > 0)
        rep.notes.push_back(std::to_string(rep.points_skipped) + " kink points skipped");
    return rep;
}

ZeroClass observe_zero_class(const OrliczFunction& phi) {
    std::vector<double> v;
    for (int k = 0; k <= 40; ++k) v.push_back(phi.second_derivative(1e-2 * std::exp2(-k)));
    const std::size_t n = v.size();
    const double last = v.back();
    bool nonincreasing = true, nondecreasing = true;
    for (std::size_t i = n - 5; i + 1 < n; ++i) {
        if (v[i + 1] > v[i]) nonincreasing = false;
        if (v[i + 1] < v[i]) nondecreasing = false;
    }
    if (last < 1e-6 && nonincreasing) return ZeroClass::zero;
    if (last > 1e6 && nondecreasing) return ZeroClass::infinite;
    const auto [lo, hi] = std::minmax_element(v.end() - 5, v.end());
    if (last > 0.0 && std::isfinite(last) && *hi - *lo <= 0.01 * last)
        return ZeroClass::finite_positive;
    return ZeroClass::indeterminate;
}

ZeroClass classify_second_derivative_at_zero(const OrliczFunction& phi) {
    const ZeroClass observed = observe_zero_class(phi);
    if (auto declared = phi.declared_zero_class(); declared && *declared != observed)
        throw PreconditionError("declared zero class '" + std::string(to_string(*declared)) +
                                "' but M'' near 0 behaves as '" +
                                std::string(to_string(observed)) + "'");
    return observed;
}

}  // namespace orlicz
