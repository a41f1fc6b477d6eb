#pragma once

#include <vector>

#include "hollm/core.hpp"
#include "hollm/partition.hpp"

namespace hollm {

/// Per-leaf score components: raw, normalized, and the composite.
struct ScoreBreakdown {
    double mu = 0.0;        // best shifted observation in the leaf
    double sigma_sq = 0.0;  // empirical variance of the shifted values
    double V = 0.0;         // d-th root of the region volume
    double E = 0.0;         // exploration bonus
    double mu_norm = 0.0;
    double V_norm = 0.0;
    double E_norm = 0.0;
    double B = 0.0;         // composite score
};

/// max_i (v_i - f_min + epsilon); f_min is the minimum over the whole history.
double exploitation_mu(const std::vector<double>& leaf_values, double f_min, double epsilon);

/// Geometric mean of the side lengths; 0 for degenerate regions.
double region_volume(const Region& region);

/// sqrt(2 sigma^2 max(0, ln(t/(K n))) / n) + c max(0, ln(t/(K n))) / n
double ucbv_bonus(double sigma_sq, int n, int t, int K, double c);

/// c sqrt(2 ln(t) / n), the variance-free classical bonus.
double ucb1_bonus(int n, int t, double c);

/// Unbiased sample variance of the shifted values; sigma0_sq when n < 2.
double leaf_variance(const std::vector<double>& leaf_values, double sigma0_sq);

/// alpha_min + (alpha_max - alpha_min) (1 + cos(pi t / T)) / 2
double cosine_alpha(int t, int T, double alpha_min, double alpha_max);

/// (v - min) / (max - min); all 1.0 when max == min so that every leaf keeps
/// a positive selection probability.
std::vector<double> minmax_normalize(const std::vector<double>& values);

/// Composite scores for all leaves of the current partition.
std::vector<ScoreBreakdown> composite_scores(const std::vector<Leaf>& leaves,
                                             const History& history, double alpha_t,
                                             const RunConfig& config);

} // namespace hollm
