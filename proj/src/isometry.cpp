#include "orlicz/isometry.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <random>
#include <sstream>

#include "orlicz/conditions.hpp"
#include "orlicz/error.hpp"
#include "orlicz/function_space.hpp"
#include "orlicz/generators.hpp"

namespace orlicz {
namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

}  // namespace

WeightedComposition WeightedComposition::uniform(std::vector<std::size_t> sigma,
                                                 StepFunction weight) {
    WeightedComposition T;
    T.target = uniform_breakpoints(sigma.size());
    T.source_cells = sigma.size();
    T.sigma = std::move(sigma);
    T.weight = std::move(weight);
    T.validate();
    return T;
}

WeightedComposition WeightedComposition::identity(std::size_t cells) {
    std::vector<std::size_t> sigma(cells);
    for (std::size_t i = 0; i < cells; ++i) sigma[i] = i;
    return uniform(std::move(sigma), StepFunction::constant(1.0));
}

void WeightedComposition::validate() const {
    if (target.size() < 2 || target.front() != 0.0 || target.back() != 1.0)
        throw PreconditionError("target partition must run from 0 to 1");
    for (std::size_t i = 1; i < target.size(); ++i)
        if (!(target[i] > target[i - 1]))
            throw PreconditionError("target partition must be strictly increasing");
    if (sigma.size() + 1 != target.size())
        throw PreconditionError("sigma must assign every target cell");
    if (source_cells == 0) throw PreconditionError("source partition needs cells");
    for (std::size_t s : sigma)
        if (s >= source_cells) throw PreconditionError("sigma points outside the source partition");
}

StepFunction WeightedComposition::apply(const StepFunction& f) const {
    const double n = static_cast<double>(source_cells);
    const std::vector<double>& fb = f.breakpoints();
    const std::vector<double>& fv = f.values();
    std::vector<double> t{0.0};
    std::vector<double> v;
    for (std::size_t j = 0; j < sigma.size(); ++j) {
        const double t0 = target[j], t1 = target[j + 1];
        const double s0 = static_cast<double>(sigma[j]) / n;
        const double s1 = static_cast<double>(sigma[j] + 1) / n;
        const double scale = (t1 - t0) / (s1 - s0);
        auto k = static_cast<std::size_t>(std::upper_bound(fb.begin(), fb.end(), s0) - fb.begin()) - 1;
        for (; k < fv.size() && fb[k] < s1; ++k) {
            const double hi = std::min(s1, fb[k + 1]);
            const double end = hi >= s1 ? t1 : t0 + (hi - s0) * scale;
            if (end > t.back()) {
                t.push_back(end);
                v.push_back(fv[k]);
            }
        }
        t.back() = t1;
    }
    return weight * StepFunction(std::move(t), std::move(v));
}

Operator WeightedComposition::as_operator() const {
    return [T = *this](const StepFunction& f) { return T.apply(f); };
}

StepFunction apply_operator(const WeightedComposition& T, const StepFunction& f) {
    return T.apply(f);
}

WeightedComposition compose(const WeightedComposition& T1, const WeightedComposition& T2) {
    if (T2.target != uniform_breakpoints(T1.source_cells))
        throw PreconditionError("composition needs T2's target partition to be T1's source partition");
    WeightedComposition T;
    T.target = T1.target;
    T.source_cells = T2.source_cells;
    T.sigma.resize(T1.sigma.size());
    for (std::size_t j = 0; j < T1.sigma.size(); ++j) T.sigma[j] = T2.sigma[T1.sigma[j]];
    WeightedComposition move_only = T1;
    move_only.weight = StepFunction::constant(1.0);
    T.weight = T1.weight * move_only.apply(T2.weight);
    T.validate();
    return T;
}

Operator rotation_operator(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return [c, s](const StepFunction& f) {
        const StepFunction u = f.restrict_rescale(0.0, 0.5);
        const StepFunction v = f.restrict_rescale(0.5, 1.0);
        return StepFunction::place(c * u - s * v, 0.0, 0.5) +
               StepFunction::place(s * u + c * v, 0.5, 1.0);
    };
}

Operator perturbed_identity() {
    return [](const StepFunction& f) { return f + StepFunction::constant(f.integral()); };
}

IsometryReport check_isometry(const Operator& T, const OrliczFunction& phi,
                              const std::vector<StepFunction>& testset,
                              const IsometryOptions& opts) {
    if (testset.empty()) throw PreconditionError("isometry check needs a nonempty testset");
    if (!check_delta2(phi).passed) throw PreconditionError("isometry check needs Delta_2");
    std::vector<StepFunction> all = testset;
    gen::Rng rng(opts.seed);
    std::uniform_int_distribution<std::size_t> pick(0, testset.size() - 1);
    for (std::size_t k = 0; k < opts.combinations; ++k) {
        const StepFunction& f = testset[pick(rng)];
        const StepFunction& g = testset[pick(rng)];
        all.push_back(combine(f, g, gen::uniform(rng, -2.0, 2.0)));
    }
    IsometryReport rep;
    rep.testset_size = all.size();
    for (std::size_t i = 0; i < all.size(); ++i) {
        const double dev = std::fabs(luxemburg_norm(T(all[i]), phi) - luxemburg_norm(all[i], phi));
        if (dev > rep.max_norm_deviation || std::isnan(dev)) {
            rep.max_norm_deviation = dev;
            rep.worst_index = i;
        }
    }
    rep.is_isometry = rep.max_norm_deviation <= kIsometryTolerance;
    return rep;
}

IsometryReport check_disjointness_preservation(
    const Operator& T, const OrliczFunction& phi,
    const std::vector<std::pair<StepFunction, StepFunction>>& pairs, const IsometryOptions& opts) {
    std::vector<StepFunction> members;
    for (const auto& [f, g] : pairs) {
        members.push_back(f);
        members.push_back(g);
    }
    IsometryReport rep = check_isometry(T, phi, members, opts);
    if (!rep.is_isometry)
        throw PreconditionError("operator is not an isometry (norm deviation " +
                                fmt(rep.max_norm_deviation) +
                                "); disjointness preservation is not tested");

    enum class Regime { none, zero, infinite } regime = Regime::none;
    if (opts.detector) {
        try {
            const ZeroClass zc = classify_second_derivative_at_zero(phi);
            if (zc == ZeroClass::zero) {
                require_zero_regime(phi);
                regime = Regime::zero;
            } else if (zc == ZeroClass::infinite) {
                require_infinite_regime(phi);
                regime = Regime::infinite;
            } else {
                rep.notes.push_back("detector skipped: M''(0) is " + std::string(to_string(zc)));
            }
        } catch (const Error& e) {
            rep.notes.push_back(std::string("detector skipped: ") + e.what());
        }
    }

    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& [f, g] = pairs[i];
        if (support_relation(f, g).relation != Relation::disjoint)
            throw PreconditionError("pair " + std::to_string(i) + " is not disjoint");
        const StepFunction Tf = T(f), Tg = T(g);
        ++rep.pairs_checked;
        const SupportRelation r = support_relation(Tf, Tg);
        if (r.mu_intersection != 0.0)
            rep.preservation_failures.push_back(
                {i, "supports of Tf and Tg meet on measure " + fmt(r.mu_intersection)});
        if (regime == Regime::none) continue;

        const StepFunction nf = normalized(Tf, phi), ng = normalized(Tg, phi);
        ++rep.detector_checked;
        Claim got, want;
        if (regime == Regime::zero) {
            got = unchecked::disjointness_zero_case(nf, ng, phi, opts.detector_options).claim;
            want = Claim::disjoint;
        } else {
            got = unchecked::support_equality(nf, ng, phi, opts.detector_options).claim;
            want = Claim::supports_differ;
        }
        if (got == Claim::inconclusive)
            ++rep.detector_inconclusive;
        else if (got == want)
            ++rep.detector_agreements;
        else
            ++rep.detector_disagreements;
    }
    return rep;
}

StepFunction Recovery::apply(const StepFunction& f) const {
    const std::vector<double> grid = uniform_breakpoints(resolution);
    for (double b : f.breakpoints())
        if (!std::binary_search(grid.begin(), grid.end(), b))
            throw PreconditionError("recovered operator acts on functions constant on the probe cells");
    const StepFunction fr = f.refine_to(grid);
    std::vector<double> v(sigma.size());
    for (std::size_t c = 0; c < sigma.size(); ++c)
        v[c] = sigma[c] == kUncovered ? 0.0 : fr.values()[sigma[c]];
    return a * StepFunction(breakpoints, std::move(v));
}

bool power_like_near_zero(const OrliczFunction& phi, double t0, double* exponent) {
    const std::vector<double> u = GeometricGrid{1e-8, t0, 8}.points();
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    const double n = static_cast<double>(u.size());
    for (double x0 : u) {
        const double m = phi(x0);
        if (!(m > 0.0)) return false;
        const double x = std::log(x0), y = std::log(m);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    const double cxx = sxx - sx * sx / n, cxy = sxy - sx * sy / n, cyy = syy - sy * sy / n;
    if (exponent) *exponent = cxy / cxx;
    const double r2 = cyy > 0.0 ? cxy * cxy / (cxx * cyy) : 1.0;
    return r2 >= 1.0 - 1e-6;
}

Recovery recover_weighted_composition(const Operator& T, std::size_t resolution,
                                      const OrliczFunction& phi, std::uint64_t seed,
                                      std::size_t validation) {
    if (resolution == 0) throw PreconditionError("resolution must be positive");
    const std::vector<double> grid = uniform_breakpoints(resolution);
    std::vector<StepFunction> images;
    std::vector<double> fine{0.0, 1.0};
    for (std::size_t i = 0; i < resolution; ++i) {
        images.push_back(T(StepFunction::indicator(grid[i], grid[i + 1])));
        std::vector<double> merged;
        std::set_union(fine.begin(), fine.end(), images.back().breakpoints().begin(),
                       images.back().breakpoints().end(), std::back_inserter(merged));
        merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
        fine = std::move(merged);
    }

    Recovery rec;
    rec.resolution = resolution;
    rec.breakpoints = fine;
    rec.sigma.assign(fine.size() - 1, kUncovered);
    std::vector<double> a(fine.size() - 1, 0.0);
    for (std::size_t i = 0; i < resolution; ++i) {
        const StepFunction img = images[i].refine_to(fine);
        for (std::size_t c = 0; c < a.size(); ++c) {
            const double v = img.values()[c];
            if (std::fabs(v) <= kSupportFloor) continue;
            if (rec.sigma[c] != kUncovered)
                throw AmbiguityError("target cell [" + fmt(fine[c]) + ", " + fmt(fine[c + 1]) +
                                     ") is covered by the images of cells " +
                                     std::to_string(rec.sigma[c]) + " and " + std::to_string(i));
            rec.sigma[c] = i;
            a[c] = v;
        }
    }
    rec.a = StepFunction(fine, a);

    gen::Rng rng(seed);
    std::vector<StepFunction> checks;
    for (std::size_t i = 0; i < resolution; ++i) checks.push_back(StepFunction::indicator(grid[i], grid[i + 1]));
    for (std::size_t k = 0; k < validation; ++k) {
        std::vector<double> v(resolution);
        for (double& x : v)
            x = std::bernoulli_distribution(0.25)(rng) ? 0.0 : gen::uniform(rng, -2.0, 2.0);
        checks.push_back(StepFunction::uniform(std::move(v)));
    }
    for (const StepFunction& f : checks)
        rec.residual = std::max(rec.residual, luxemburg_norm(T(f) - rec.apply(f), phi));

    std::vector<double> mags;
    for (std::size_t c = 0; c < a.size(); ++c)
        if (rec.sigma[c] != kUncovered) mags.push_back(std::fabs(a[c]));
    rec.unimodular = !mags.empty() && std::all_of(mags.begin(), mags.end(), [](double m) {
        return std::fabs(m - 1.0) <= 1e-6;
    });
    if (!mags.empty()) {
        const double A = *std::min_element(mags.begin(), mags.end());
        double gamma = 1.0;
        for (double m : mags)
            if (m / A > 1.0 + 1e-6 && (gamma == 1.0 || m / A < gamma)) gamma = m / A;
        bool fits = true;
        if (gamma > 1.0) {
            for (double m : mags) {
                const double k = std::log(m / A) / std::log(gamma);
                if (std::fabs(k - std::round(k)) > 1e-6) fits = false;
            }
        }
        rec.geometric_lattice = fits;
        rec.lattice_A = A;
        rec.lattice_gamma = gamma;
    }
    double p = 0.0;
    rec.power_like_near_zero = power_like_near_zero(phi, 1e-2, &p);
    rec.power_exponent = p;
    return rec;
}

}  // namespace orlicz
