#pragma once

#include <cstddef>
#include <random>
#include <utility>

#include "orlicz/isometry.hpp"
#include "orlicz/step_function.hpp"

namespace orlicz::gen {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi);

struct StepOptions {
    std::size_t min_cells = 2;
    std::size_t max_cells = 16;
    double zero_probability = 0.25;
    double lo = 0.5;  // magnitude range of nonzero values
    double hi = 1.5;
};

/// Random values on a uniform partition with a random cell count; never zero.
StepFunction random_step(Rng& rng, const StepOptions& opts = {});

/// Support layouts on a uniform partition. Where both are nonzero, g shares
/// the sign of f, so f + alpha g has no zero cell for alpha > 0.
enum class SupportPattern {
    disjoint,
    proper_overlap,  // at least one shared cell, f and g each have cells of their own
    g_exceeds_f,     // at least one cell of g outside supp f
    g_within_f,      // supp g strictly inside supp f
    equal
};

std::pair<StepFunction, StepFunction> random_pair(Rng& rng, SupportPattern pattern,
                                                  std::size_t cells = 16,
                                                  const StepOptions& opts = {});

/// Random cell permutation with weight +-1; optionally one sign flip inside a cell.
WeightedComposition random_unimodular_composition(Rng& rng, std::size_t cells,
                                                  bool split_sign = true);

}  // namespace orlicz::gen
