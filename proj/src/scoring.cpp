#include "hollm/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hollm {

double exploitation_mu(const std::vector<double>& leaf_values, double f_min, double epsilon) {
    if (leaf_values.empty()) return 0.0;  // caller supplies the empty-cell default
    double best = -std::numeric_limits<double>::infinity();
    for (double v : leaf_values) best = std::max(best, v - f_min + epsilon);
    return best;
}

double region_volume(const Region& region) {
    const int d = region.dims();
    double product = 1.0;
    for (int j = 0; j < d; ++j) {
        double side = region.side(j);
        if (side <= 0.0) return 0.0;
        product *= side;
    }
    return std::pow(product, 1.0 / static_cast<double>(d));
}

double ucbv_bonus(double sigma_sq, int n, int t, int K, double c) {
    if (n < 1 || t < 1 || K < 1 || sigma_sq < 0.0)
        throw std::invalid_argument("ucbv_bonus requires n,t,K >= 1 and sigma_sq >= 0");
    double log_term = std::max(0.0, std::log(static_cast<double>(t) /
                                             (static_cast<double>(K) * static_cast<double>(n))));
    return std::sqrt(2.0 * sigma_sq * log_term / static_cast<double>(n)) +
           c * log_term / static_cast<double>(n);
}

double ucb1_bonus(int n, int t, double c) {
    if (n < 1 || t < 1) throw std::invalid_argument("ucb1_bonus requires n,t >= 1");
    return c * std::sqrt(2.0 * std::log(static_cast<double>(t)) / static_cast<double>(n));
}

double leaf_variance(const std::vector<double>& leaf_values, double sigma0_sq) {
    const std::size_t n = leaf_values.size();
    if (n < 2) return sigma0_sq;
    double mean = 0.0;
    for (double v : leaf_values) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : leaf_values) {
        double dv = v - mean;
        ss += dv * dv;
    }
    return ss / static_cast<double>(n - 1);
}

double cosine_alpha(int t, int T, double alpha_min, double alpha_max) {
    if (T <= 0 || t < 0 || t > T)
        throw std::invalid_argument("cosine_alpha requires 0 <= t <= T, T > 0");
    if (t == 0) return alpha_max;  // exact endpoints
    if (t == T) return alpha_min;
    double cosv = std::cos(M_PI * static_cast<double>(t) / static_cast<double>(T));
    return alpha_min + 0.5 * (alpha_max - alpha_min) * (1.0 + cosv);
}

std::vector<double> minmax_normalize(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("minmax_normalize on empty list");
    auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    double lo = *lo_it, hi = *hi_it;
    std::vector<double> out(values.size());
    if (hi == lo) {
        std::fill(out.begin(), out.end(), 1.0);
        return out;
    }
    for (std::size_t i = 0; i < values.size(); ++i)
        out[i] = (values[i] - lo) / (hi - lo);
    return out;
}

namespace {

Region point_bounding_box(const Leaf& leaf, const History& history, int d) {
    std::vector<double> lo(static_cast<std::size_t>(d), std::numeric_limits<double>::infinity());
    std::vector<double> hi(static_cast<std::size_t>(d), -std::numeric_limits<double>::infinity());
    for (int i : leaf.indices) {
        const auto& p = history.at(i).point;
        for (int j = 0; j < d; ++j) {
            lo[j] = std::min(lo[j], p[j]);
            hi[j] = std::max(hi[j], p[j]);
        }
    }
    return Region(std::move(lo), std::move(hi));
}

} // namespace

std::vector<ScoreBreakdown> composite_scores(const std::vector<Leaf>& leaves,
                                             const History& history, double alpha_t,
                                             const RunConfig& config) {
    if (leaves.empty()) throw std::invalid_argument("composite_scores on empty leaf list");
    const int K = static_cast<int>(leaves.size());
    const int t = history.t();
    const int d = history.space().dims();

    double f_min = std::numeric_limits<double>::infinity();
    for (const auto& e : history.evaluations()) f_min = std::min(f_min, e.value);

    std::vector<ScoreBreakdown> scores(leaves.size());
    for (std::size_t l = 0; l < leaves.size(); ++l) {
        const Leaf& leaf = leaves[l];
        ScoreBreakdown& s = scores[l];
        if (leaf.n() == 0) {
            // high exploration for empty cells, entering the shared normalization raw
            s.mu = 0.0;
            s.V = 1.0;
            s.E = 1.0;
            continue;
        }
        std::vector<double> shifted;
        shifted.reserve(leaf.indices.size());
        for (int i : leaf.indices)
            shifted.push_back(history.at(i).value - f_min + config.epsilon);

        s.mu = exploitation_mu(shifted, 0.0, 0.0);  // values already shifted
        s.sigma_sq = leaf_variance(shifted, config.sigma0_sq);
        s.V = config.volume_source == VolumeSource::cell
                  ? region_volume(leaf.region)
                  : region_volume(point_bounding_box(leaf, history, d));
        s.E = config.scoring_variant == ScoringVariant::ucb1
                  ? ucb1_bonus(leaf.n(), t, config.c)
                  : ucbv_bonus(s.sigma_sq, leaf.n(), t, K, config.c);
    }

    std::vector<double> mu_raw(leaves.size()), v_raw(leaves.size()), e_raw(leaves.size());
    for (std::size_t l = 0; l < leaves.size(); ++l) {
        mu_raw[l] = scores[l].mu;
        v_raw[l] = scores[l].V;
        e_raw[l] = scores[l].E;
    }
    auto mu_n = minmax_normalize(mu_raw);
    auto v_n = minmax_normalize(v_raw);
    auto e_n = minmax_normalize(e_raw);

    for (std::size_t l = 0; l < leaves.size(); ++l) {
        ScoreBreakdown& s = scores[l];
        s.mu_norm = mu_n[l];
        s.V_norm = v_n[l];
        s.E_norm = e_n[l];
        double explore = config.beta1 * s.V_norm + config.beta2 * s.E_norm;
        switch (config.scoring_variant) {
            case ScoringVariant::ucbv:
            case ScoringVariant::ucb1:
                s.B = s.mu_norm + alpha_t * explore;
                break;
            case ScoringVariant::exploit_only:
                s.B = s.mu_norm;
                break;
            case ScoringVariant::explore_only:
                s.B = alpha_t * explore;
                break;
            case ScoringVariant::uniform:
                s.B = 1.0;
                break;
        }
    }
    return scores;
}

} // namespace hollm
