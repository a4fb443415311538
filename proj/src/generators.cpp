#include "orlicz/generators.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "orlicz/error.hpp"

namespace orlicz::gen {
namespace {

double sign(Rng& rng) { return std::bernoulli_distribution(0.5)(rng) ? 1.0 : -1.0; }

double magnitude(Rng& rng, const StepOptions& o) { return uniform(rng, o.lo, o.hi); }

enum State { none = 0, f_only = 1, g_only = 2, both = 3 };

bool layout_ok(SupportPattern p, const std::vector<int>& s) {
    const auto count = [&](int st) { return std::count(s.begin(), s.end(), st); };
    switch (p) {
        case SupportPattern::disjoint: return count(f_only) > 0 && count(g_only) > 0;
        case SupportPattern::proper_overlap:
            return count(both) > 0 && count(f_only) > 0 && count(g_only) > 0;
        case SupportPattern::g_exceeds_f: return count(g_only) > 0 && count(f_only) + count(both) > 0;
        case SupportPattern::g_within_f: return count(f_only) > 0 && count(both) > 0;
        case SupportPattern::equal: return count(both) > 0;
    }
    return false;
}

std::vector<int> allowed(SupportPattern p) {
    switch (p) {
        case SupportPattern::disjoint: return {none, f_only, g_only};
        case SupportPattern::proper_overlap:
        case SupportPattern::g_exceeds_f: return {none, f_only, g_only, both};
        case SupportPattern::g_within_f: return {none, f_only, both};
        case SupportPattern::equal: return {none, both};
    }
    return {};
}

}  // namespace

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

StepFunction random_step(Rng& rng, const StepOptions& opts) {
    const std::size_t n =
        std::uniform_int_distribution<std::size_t>(opts.min_cells, opts.max_cells)(rng);
    std::vector<double> v(n);
    for (;;) {
        for (double& x : v)
            x = std::bernoulli_distribution(opts.zero_probability)(rng) ? 0.0
                                                                        : sign(rng) * magnitude(rng, opts);
        if (std::any_of(v.begin(), v.end(), [](double x) { return x != 0.0; })) break;
    }
    return StepFunction::uniform(std::move(v));
}

std::pair<StepFunction, StepFunction> random_pair(Rng& rng, SupportPattern pattern,
                                                  std::size_t cells, const StepOptions& opts) {
    if (cells < 2) throw PreconditionError("a support pattern needs at least two cells");
    const std::vector<int> states = allowed(pattern);
    std::vector<int> s(cells);
    do {
        for (int& x : s)
            x = states[std::uniform_int_distribution<std::size_t>(0, states.size() - 1)(rng)];
    } while (!layout_ok(pattern, s));

    std::vector<double> f(cells, 0.0), g(cells, 0.0);
    for (std::size_t i = 0; i < cells; ++i) {
        const double sf = sign(rng);
        if (s[i] == f_only || s[i] == both) f[i] = sf * magnitude(rng, opts);
        if (s[i] == both) g[i] = sf * magnitude(rng, opts);
        if (s[i] == g_only) g[i] = sign(rng) * magnitude(rng, opts);
    }
    return {StepFunction::uniform(std::move(f)), StepFunction::uniform(std::move(g))};
}

WeightedComposition random_unimodular_composition(Rng& rng, std::size_t cells, bool split_sign) {
    std::vector<std::size_t> sigma(cells);
    std::iota(sigma.begin(), sigma.end(), std::size_t{0});
    std::shuffle(sigma.begin(), sigma.end(), rng);

    std::vector<double> t{0.0};
    std::vector<double> a;
    const std::size_t split =
        split_sign ? std::uniform_int_distribution<std::size_t>(0, cells - 1)(rng) : cells;
    const double n = static_cast<double>(cells);
    for (std::size_t j = 0; j < cells; ++j) {
        const double s = sign(rng);
        if (j == split) {
            t.push_back((static_cast<double>(j) + 0.5) / n);
            a.push_back(s);
            a.push_back(-s);
        } else {
            a.push_back(s);
        }
        t.push_back(static_cast<double>(j + 1) / n);
    }
    return WeightedComposition::uniform(std::move(sigma), StepFunction(std::move(t), std::move(a)));
}

}  // namespace orlicz::gen
