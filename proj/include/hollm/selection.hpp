#pragma once

#include <vector>

#include "hollm/rng.hpp"

namespace hollm {

struct SelectionOutcome {
    std::vector<int> chosen;              // leaf indices in draw order, no duplicates
    std::vector<double> probabilities;    // the p vector the first draw used
};

/// p_l = B_l / sum_r B_r. Errors when every score is zero.
std::vector<double> leaf_probabilities(const std::vector<double>& scores);

/// Iterative categorical draws without replacement: draw, remove, renormalize,
/// until min(M, K) indices are chosen. Deterministic given the rng stream.
SelectionOutcome sample_without_replacement(const std::vector<double>& p, int M, Rng& rng);

} // namespace hollm
