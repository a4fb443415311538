#include "orlicz/constructions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "orlicz/error.hpp"
#include "orlicz/numeric.hpp"

namespace orlicz {
namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

double poly(const std::array<double, 4>& c, double t) {
    return c[0] + t * (c[1] + t * (c[2] + t * c[3]));
}

double poly_d(const std::array<double, 4>& c, double t) {
    return c[1] + t * (2.0 * c[2] + t * 3.0 * c[3]);
}

double poly_int(const std::array<double, 4>& c, double t) {
    return t * (c[0] + t * (c[1] / 2.0 + t * (c[2] / 3.0 + t * c[3] / 4.0)));
}

}  // namespace

std::string_view to_string(Segment::Rule rule) {
    switch (rule) {
        case Segment::Rule::source: return "source";
        case Segment::Rule::constant: return "constant";
        case Segment::Rule::linear: return "linear";
        case Segment::Rule::connector: return "connector";
        case Segment::Rule::blend: return "blend";
        case Segment::Rule::ramp: return "ramp";
    }
    return "unknown";
}

Segment::Rule segment_rule_from_string(std::string_view s) {
    using R = Segment::Rule;
    for (R r : {R::source, R::constant, R::linear, R::connector, R::blend, R::ramp})
        if (to_string(r) == s) return r;
    throw ParseError("unknown segment rule '" + std::string(s) + "'");
}

PiecewiseOrlicz::PiecewiseOrlicz(std::vector<double> knots, std::vector<Segment> segments,
                                 OrliczFunction source, std::string construction,
                                 std::vector<double> probes)
    : knots_(std::move(knots)),
      segments_(std::move(segments)),
      source_(std::move(source)),
      construction_(std::move(construction)),
      probes_(std::move(probes)) {
    if (knots_.empty() || knots_.front() != 0.0)
        throw ConstructionError("piecewise knots must start at 0");
    if (segments_.size() != knots_.size())
        throw ConstructionError("one segment per knot required");
    for (std::size_t i = 1; i < knots_.size(); ++i)
        if (!(knots_[i] > knots_[i - 1]))
            throw ConstructionError("knots must be strictly increasing");
    if (knots_.back() > source_.u_max()) throw ConstructionError("knots exceed the source range");

    cache_.assign(knots_.size(), 0.0);
    for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
        const Segment& s = segments_[i];
        const double a = knots_[i], b = knots_[i + 1];
        const double piece = s.rule == Segment::Rule::source ? source_(b) - source_(a)
                                                             : poly_int(s.c, b - a);
        cache_[i + 1] = cache_[i] + piece;
    }

    // Junction continuity and monotonicity of M1'.
    for (std::size_t i = 1; i < knots_.size(); ++i) {
        const double left = seg_first(i - 1, knots_[i]);
        const double right = seg_first(i, knots_[i]);
        if (std::fabs(left - right) > 1e-12 * std::max({1.0, std::fabs(left), std::fabs(right)}))
            throw ConstructionError("M1' jumps at knot " + fmt(knots_[i]) + ": " + fmt(left) +
                                    " vs " + fmt(right));
    }
    for (std::size_t i = 0; i < knots_.size(); ++i) {
        const Segment& s = segments_[i];
        if (s.rule == Segment::Rule::source) continue;
        const double len = i + 1 < knots_.size() ? knots_[i + 1] - knots_[i] : 0.0;
        // A polynomial derivative of degree <= 2 is monotone iff it is at both ends.
        const double d0 = poly_d(s.c, 0.0), d1 = poly_d(s.c, len);
        const double scale = 1e-9 * std::max({1.0, std::fabs(d0), std::fabs(d1)});
        if (d0 < -scale || d1 < -scale)
            throw ConstructionError("M1' decreasing on segment starting at " + fmt(knots_[i]));
        if (s.c[3] != 0.0 && len > 0.0) {
            // Interior extremum of the quadratic M1''.
            const double tc = -2.0 * s.c[2] / (6.0 * s.c[3]);
            if (tc > 0.0 && tc < len && poly_d(s.c, tc) < -scale)
                throw ConstructionError("M1' decreasing inside segment starting at " +
                                        fmt(knots_[i]));
        }
    }
}

std::size_t PiecewiseOrlicz::locate(double u) const {
    auto it = std::upper_bound(knots_.begin(), knots_.end(), u);
    return static_cast<std::size_t>(it - knots_.begin()) - 1;
}

double PiecewiseOrlicz::seg_first(std::size_t i, double u) const {
    const Segment& s = segments_[i];
    if (s.rule == Segment::Rule::source) return source_.derivative(u);
    return poly(s.c, u - knots_[i]);
}

double PiecewiseOrlicz::seg_second(std::size_t i, double u) const {
    const Segment& s = segments_[i];
    if (s.rule == Segment::Rule::source) return source_.second_derivative(u);
    return poly_d(s.c, u - knots_[i]);
}

double PiecewiseOrlicz::value(double u) const {
    const std::size_t i = locate(u);
    const Segment& s = segments_[i];
    if (s.rule == Segment::Rule::source) {
        if (i == 0) return source_(u);
        return cache_[i] + (source_(u) - source_(knots_[i]));
    }
    return cache_[i] + poly_int(s.c, u - knots_[i]);
}

double PiecewiseOrlicz::first(double u) const { return seg_first(locate(u), u); }

double PiecewiseOrlicz::second(double u) const {
    const std::size_t i = locate(u);
    const double right = seg_second(i, u);
    if (i > 0 && u == knots_[i]) {
        const double left = seg_second(i - 1, u);
        if (std::fabs(left - right) > 1e-9 * std::max({1.0, std::fabs(left), std::fabs(right)}))
            throw UndefinedDerivativeError("M1'' undefined at knot " + fmt(u));
    }
    return right;
}

OrliczFunction make_piecewise(std::vector<double> knots, std::vector<Segment> segments,
                              const OrliczFunction& source, std::string construction,
                              std::vector<double> probes, Params params) {
    auto model = std::make_shared<PiecewiseOrlicz>(std::move(knots), std::move(segments), source,
                                                   std::move(construction), std::move(probes));
    return OrliczFunction(Kind::piecewise_hermite, std::move(params), source.u_max(),
                          source.declared_zero_class(), std::move(model));
}

const PiecewiseOrlicz* as_piecewise(const OrliczFunction& phi) {
    return dynamic_cast<const PiecewiseOrlicz*>(&phi.model());
}

OrliczFunction build_delta2plus_equivalent(const OrliczFunction& phi) {
    if (const ConditionReport ax = check_axioms(phi); !ax.passed)
        throw PreconditionError("source fails the Orlicz axioms: " + ax.failures.front());
    if (const ConditionReport d2 = check_delta2(phi); !d2.passed)
        throw PreconditionError("source fails Delta_2");

    const int K = std::min(24, static_cast<int>(std::floor(std::log2(phi.u_max()))) - 1);
    if (K < 1) throw PreconditionError("u_max too small for the octave construction");

    std::vector<double> knots{0.0};
    std::vector<Segment> segs{{Segment::Rule::source, {}}};

    double s_in;
    try {
        s_in = phi.second_derivative(2.0);
    } catch (const UndefinedDerivativeError&) {
        s_in = phi.derivative(2.0) - phi.derivative(1.0);
    }
    for (int k = 1; k <= K; ++k) {
        const double a = std::exp2(k);
        const double A = phi.derivative(a);
        const double A_next = phi.derivative(2.0 * a);
        const double s_k = (A_next - A - 0.5 * s_in) / (a - 0.5);
        if (!(s_k >= 0.0))
            throw ConstructionError("octave " + std::to_string(k) +
                                    ": connector needs a negative slope (" + fmt(s_k) + ")");
        knots.push_back(a);
        segs.push_back({Segment::Rule::connector, {A, s_in, 0.5 * (s_k - s_in), 0.0}});
        knots.push_back(a + 1.0);
        segs.push_back({Segment::Rule::linear, {A + 0.5 * (s_in + s_k), s_k, 0.0, 0.0}});
        s_in = s_k;
    }
    std::vector<double> probes(knots.begin() + 1, knots.end());
    return make_piecewise(std::move(knots), std::move(segs), phi, "delta2plus_equivalent",
                          std::move(probes), {{"octaves", static_cast<double>(K)}});
}

namespace {

struct Window {
    int n;
    double c, delta, L, R, alpha, beta, w;
};

Window window_for(const OrliczFunction& phi, int n) {
    Window W{};
    W.n = n;
    W.c = n + 0.5;
    W.delta = std::exp2(-2 * n);
    W.L = phi.derivative(W.c - W.delta);
    W.R = phi.derivative(W.c + W.delta);
    W.alpha = W.R - W.L;
    W.beta = (W.alpha / std::exp2(n)) * (W.c - W.delta) / W.R;
    W.w = std::min(W.beta / 10.0, W.delta / 16.0);
    return W;
}

bool selectable(const Window& W, double eps) {
    return W.alpha < eps && W.beta < 0.5 * std::exp2(-W.n) && W.beta < W.delta;
}

bool resolvable(const Window& W) {
    const double ulp = std::nextafter(W.c, 2.0 * W.c) - W.c;
    return W.alpha > 0.0 && W.w >= 64.0 * ulp;
}

// Cubic Hermite M1' on [x0, x0 + H] from (y0, m0) to (y1, m1), checked for
// monotonicity with the Fritsch-Carlson region.
Segment hermite(double y0, double m0, double y1, double m1, double H) {
    const double d = (y1 - y0) / H;
    if (d <= 0.0) {
        if (m0 != 0.0 || m1 != 0.0) throw ConstructionError("blend endpoints not increasing");
    } else {
        const double a = m0 / d, b = m1 / d;
        if (a * a + b * b > 9.0)
            throw ConstructionError("blend cannot be monotone (Fritsch-Carlson test)");
    }
    return {Segment::Rule::blend,
            {y0, m0, (3.0 * d - 2.0 * m0 - m1) / H, (m0 + m1 - 2.0 * d) / (H * H)}};
}

}  // namespace

OrliczFunction build_delta2plus_violator(const OrliczFunction& phi, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw PreconditionError("eps must lie in (0, 1)");
    if (const ConditionReport r = check_delta2plus(phi); !r.passed)
        throw PreconditionError("source fails Delta_2+");

    constexpr int kMaxN = 64;
    std::vector<Window> wins;
    for (int n = 1; n <= kMaxN; ++n) {
        if (n + 1.0 > phi.u_max()) break;
        wins.push_back(window_for(phi, n));
    }
    int n_last = 0;
    for (const Window& W : wins)
        if (resolvable(W)) n_last = W.n;
    int n1 = 0;
    for (int n = n_last; n >= 1; --n) {
        const Window& W = wins[static_cast<std::size_t>(n - 1)];
        if (!selectable(W, eps) || !resolvable(W)) break;
        n1 = n;
    }
    if (n1 == 0)
        throw ConstructionError("no n <= 64 satisfies alpha(n) < eps and the beta(n) bounds "
                                "at resolvable scale");

    std::vector<double> knots{0.0};
    std::vector<Segment> segs{{Segment::Rule::source, {}}};
    std::vector<double> probes;
    const auto lin = [](Segment::Rule r, double y, double m) { return Segment{r, {y, m, 0.0, 0.0}}; };
    for (int n = n1; n <= n_last; ++n) {
        const Window& W = wins[static_cast<std::size_t>(n - 1)];
        const double h = 0.5 * W.w;
        const double slope = W.alpha / W.beta;
        const double x1 = W.c - W.delta, x2 = W.c - 0.5 * W.beta;
        const double x3 = W.c + 0.5 * W.beta, x4 = W.c + W.delta;
        const std::array<double, 8> k{x1 - h, x1 + h, x2 - h, x2 + h, x3 - h, x3 + h, x4 - h, x4 + h};
        const auto len = [&](std::size_t j) { return k[j + 1] - k[j]; };

        const double y3 = W.L + 0.5 * slope * len(2);
        const double y4 = y3 + slope * len(3);
        const double y5 = y4 + 0.5 * slope * len(4);
        const std::array<Segment, 7> piece{
            hermite(phi.derivative(k[0]), phi.second_derivative(k[0]), W.L, 0.0, len(0)),
            lin(Segment::Rule::constant, W.L, 0.0),
            Segment{Segment::Rule::blend, {W.L, 0.0, slope / (2.0 * len(2)), 0.0}},
            lin(Segment::Rule::ramp, y3, slope),
            Segment{Segment::Rule::blend, {y4, slope, -slope / (2.0 * len(4)), 0.0}},
            lin(Segment::Rule::constant, y5, 0.0),
            hermite(y5, 0.0, phi.derivative(k[7]), phi.second_derivative(k[7]), len(6))};
        for (std::size_t j = 0; j < 7; ++j) {
            knots.push_back(k[j]);
            segs.push_back(piece[j]);
        }
        knots.push_back(k[7]);
        segs.push_back({Segment::Rule::source, {}});
        probes.push_back(W.c);
    }
    return make_piecewise(std::move(knots), std::move(segs), phi, "delta2plus_violator",
                          std::move(probes),
                          {{"eps", eps}, {"n1", static_cast<double>(n1)},
                           {"n_last", static_cast<double>(n_last)}});
}

ConditionReport verify_equivalence(const OrliczFunction& m1, const OrliczFunction& m2, double k,
                                   double l, const GeometricGrid& grid) {
    if (!(k > 0.0) || !(l > 0.0)) throw PreconditionError("scale factors must be positive");
    ConditionReport rep;
    rep.condition = Condition::equivalence;
    rep.grid = grid;
    rep.u0_used = grid.lo;
    rep.bound = 1.0;
    rep.witness_sup = 0.0;
    rep.min_ratio = std::numeric_limits<double>::infinity();
    const std::vector<double> u = grid.points();
    rep.points_tested = u.size();
    for (double x : u) {
        const double mid = m1(x);
        const double lower = m2(k * x);
        const double upper = m2(l * x);
        const bool lower_ok = lower <= mid * (1.0 + 1e-12);
        const bool upper_ok = mid <= upper * (1.0 + 1e-12);
        // Worst of the two envelope ratios; 1 means touching.
        double r = 0.0;
        if (mid > 0.0) r = std::max(r, lower / mid);
        if (upper > 0.0) r = std::max(r, mid / upper);
        if (!lower_ok || !upper_ok) {
            if (rep.failures.size() < 8)
                rep.failures.push_back(std::string(lower_ok ? "upper" : "lower") +
                                       " envelope fails at u = " + fmt(x));
            if (!std::isfinite(r) || r <= 1.0) r = std::numeric_limits<double>::infinity();
        }
        if (r > rep.witness_sup || std::isnan(r)) {
            rep.witness_sup = r;
            rep.witness_arg = x;
        }
        if (mid > 0.0 && std::isfinite(upper) && upper > 0.0) {
            const double slack = upper / mid;
            if (slack < rep.min_ratio) {
                rep.min_ratio = slack;
                rep.min_arg = x;
            }
        }
    }
    rep.passed = rep.failures.empty();
    return rep;
}

double invert_derivative(const OrliczFunction& phi, double v) {
    if (std::isnan(v) || v < 0.0) throw DomainError("cannot invert M' at " + fmt(v));
    const double top = phi.derivative(phi.u_max());
    if (v > top)
        throw DomainError("value " + fmt(v) + " exceeds M'(u_max) = " + fmt(top));
    const auto g = [&](double u) { return phi.derivative(u); };
    if (g(0.0) >= v) return 0.0;

    double hi = std::min(1.0, phi.u_max());
    while (g(hi) < v) {
        if (hi == phi.u_max()) throw InversionError("no preimage below u_max");
        hi = std::min(2.0 * hi, phi.u_max());
    }
    double lo = 0.5 * hi;
    while (lo > 1e-300 && g(lo) >= v) lo *= 0.5;
    if (g(lo) >= v) lo = 0.0;

    const double u = numeric::bisect_nondecreasing(g, v, lo, hi);
    const double r = std::fabs(g(u) - v);
    if (r > 1e-12 * std::max(1.0, v))
        throw InversionError("M' jumps across " + fmt(v) + " near u = " + fmt(u) +
                             " (residual " + fmt(r) + ")");
    return u;
}

namespace {

class ComplementaryModel final : public OrliczModel {
public:
    explicit ComplementaryModel(OrliczFunction src) : src_(std::move(src)) {}

    double value(double v) const override {
        if (v == 0.0) return 0.0;
        return numeric::adaptive_simpson([this](double s) { return first(s); }, 0.0, v);
    }
    double first(double v) const override { return invert_derivative(src_, v); }
    double second(double v) const override {
        const double d2 = src_.second_derivative(first(v));
        return 1.0 / d2;
    }

    const OrliczFunction& source() const { return src_; }

private:
    OrliczFunction src_;
};

ZeroClass flip(ZeroClass z) {
    switch (z) {
        case ZeroClass::zero: return ZeroClass::infinite;
        case ZeroClass::infinite: return ZeroClass::zero;
        default: return z;
    }
}

}  // namespace

OrliczFunction complementary(const OrliczFunction& phi) {
    if (const ConditionReport ax = check_axioms(phi); !ax.passed)
        throw PreconditionError("source fails the Orlicz axioms: " + ax.failures.front());
    // Right inverse of a flat stretch of M' is ambiguous.
    const std::vector<double> u = default_condition_grid(phi).points();
    double prev = phi.derivative(0.0);
    for (double x : u) {
        const double d = phi.derivative(x);
        if (!(d > prev) && std::isfinite(d))
            throw InversionError("M' is flat near u = " + fmt(x));
        prev = d;
    }

    double umax = phi.u_max();
    while (!std::isfinite(phi.derivative(umax))) umax *= 0.5;
    const double vmax = phi.derivative(umax);
    std::optional<ZeroClass> zc;
    if (auto d = phi.declared_zero_class()) zc = flip(*d);
    const OrliczFunction src = umax == phi.u_max() ? phi : phi.with_u_max(umax);
    return OrliczFunction(Kind::complementary, phi.params(), vmax, zc,
                          std::make_shared<ComplementaryModel>(src));
}

const OrliczFunction* complementary_source(const OrliczFunction& phi) {
    if (auto* m = dynamic_cast<const ComplementaryModel*>(&phi.model())) return &m->source();
    return nullptr;
}

}  // namespace orlicz
