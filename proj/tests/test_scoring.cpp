#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hollm/scoring.hpp"

using namespace hollm;

namespace {

// independent transcriptions of the score formulas used as test oracles
double oracle_ucbv(double sigma_sq, double n, double t, double K, double c) {
    double log_term = std::log(t / (K * n));
    if (log_term < 0.0) log_term = 0.0;
    return std::sqrt(2.0 * sigma_sq * log_term / n) + c * log_term / n;
}

double oracle_ucb1(double n, double t, double c) {
    return c * std::sqrt(2.0 * std::log(t) / n);
}

double oracle_cosine(double t, double T, double lo, double hi) {
    return lo + 0.5 * (hi - lo) * (1.0 + std::cos(M_PI * t / T));
}

double oracle_mu(const std::vector<double>& values, double f_min, double eps) {
    double best = values.front() - f_min + eps;
    for (double v : values) best = std::max(best, v - f_min + eps);
    return best;
}

double oracle_volume(const Region& r) {
    double prod = 1.0;
    for (int j = 0; j < r.dims(); ++j) prod *= r.side(j);
    return std::pow(prod, 1.0 / r.dims());
}

Leaf make_leaf(Region region, std::vector<int> indices) {
    Leaf leaf;
    leaf.region = std::move(region);
    leaf.indices = std::move(indices);
    return leaf;
}

} // namespace

TEST_CASE("exploitation term is the best shifted observation") {
    CHECK(exploitation_mu({3.0, 5.0}, 3.0, 1e-6) == doctest::Approx(2.000001).epsilon(1e-12));
    CHECK(exploitation_mu({3.0}, 3.0, 1e-6) == doctest::Approx(1e-6));  // worst leaf stays positive
    std::vector<double> vals = {-2.0, 7.5, 1.0};
    CHECK(exploitation_mu(vals, -2.0, 1e-6) == doctest::Approx(9.5 + 1e-6));
    CHECK(exploitation_mu(vals, -2.0, 1e-6) == doctest::Approx(oracle_mu(vals, -2.0, 1e-6)));
}

TEST_CASE("region volume is the geometric mean of side lengths") {
    CHECK(region_volume(Region({0, 0, 0}, {1, 1, 1})) == doctest::Approx(1.0));
    CHECK(region_volume(Region({0, 0}, {2, 0.5})) == doctest::Approx(1.0));
    CHECK(region_volume(Region({0, 0, 0}, {1, 8, 0.125})) == doctest::Approx(1.0));
    CHECK(region_volume(Region({0.5, 0.0}, {0.5, 1.0})) == 0.0);  // zero-width side
}

TEST_CASE("ucbv bonus hand values") {
    CHECK(ucbv_bonus(0.5, 3, 6, 2, 1.0) == 0.0);  // t = K*n, clamped log
    double expected = std::sqrt(2.0 * 0.01 * std::log(5.0)) + std::log(5.0);
    CHECK(ucbv_bonus(0.01, 1, 10, 2, 1.0) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(ucbv_bonus(0.01, 1, 10, 2, 1.0) == doctest::Approx(1.78885).epsilon(1e-5));
    CHECK(ucbv_bonus(0.9, 5, 8, 2, 1.0) == 0.0);  // over-sampled: t < K*n
}

TEST_CASE("ucbv bonus matches the oracle on 1000 random tuples") {
    Rng rng(101);
    for (int i = 0; i < 1000; ++i) {
        double sigma_sq = rng.uniform(0.0, 4.0);
        int n = 1 + static_cast<int>(rng.below(50));
        int t = 1 + static_cast<int>(rng.below(500));
        int K = 1 + static_cast<int>(rng.below(40));
        double c = rng.uniform(0.0, 3.0);
        double got = ucbv_bonus(sigma_sq, n, t, K, c);
        double want = oracle_ucbv(sigma_sq, n, t, K, c);
        CHECK(std::abs(got - want) <= 1e-12);
    }
}

TEST_CASE("ucb1 bonus matches the classical form") {
    CHECK(ucb1_bonus(7, 7, 1.0) ==
          doctest::Approx(std::sqrt(2.0 * std::log(7.0) / 7.0)).epsilon(1e-12));
    Rng rng(102);
    for (int i = 0; i < 1000; ++i) {
        int n = 1 + static_cast<int>(rng.below(60));
        int t = 1 + static_cast<int>(rng.below(900));
        double c = rng.uniform(0.0, 3.0);
        CHECK(std::abs(ucb1_bonus(n, t, c) - oracle_ucb1(n, t, c)) <= 1e-12);
    }
}

TEST_CASE("leaf variance is unbiased with a single-point default") {
    CHECK(leaf_variance({1.0, 3.0}, 0.01) == doctest::Approx(2.0));
    CHECK(leaf_variance({4.2}, 0.01) == doctest::Approx(0.01));
    CHECK(leaf_variance({2.0, 2.0, 2.0}, 0.01) == doctest::Approx(0.0));
}

TEST_CASE("cosine annealing endpoints are exact") {
    CHECK(cosine_alpha(0, 50, 0.01, 1.0) == 1.0);
    CHECK(cosine_alpha(50, 50, 0.01, 1.0) == 0.01);
    CHECK(cosine_alpha(25, 50, 0.01, 1.0) == doctest::Approx((0.01 + 1.0) / 2.0));
}

TEST_CASE("cosine annealing matches the oracle and is non-increasing") {
    Rng rng(103);
    for (int i = 0; i < 1000; ++i) {
        int T = 1 + static_cast<int>(rng.below(200));
        int t = static_cast<int>(rng.below(static_cast<std::uint64_t>(T) + 1));
        double lo = rng.uniform(0.0, 0.5), hi = lo + rng.uniform(0.0, 2.0);
        CHECK(std::abs(cosine_alpha(t, T, lo, hi) - oracle_cosine(t, T, lo, hi)) <= 1e-12);
    }
    double prev = cosine_alpha(0, 100, 0.01, 1.0);
    for (int t = 1; t <= 100; ++t) {
        double cur = cosine_alpha(t, 100, 0.01, 1.0);
        CHECK(cur <= prev + 1e-15);
        prev = cur;
    }
}

TEST_CASE("min-max normalization with the degenerate all-ones rule") {
    CHECK(minmax_normalize({1.0, 3.0}) == std::vector<double>{0.0, 1.0});
    CHECK(minmax_normalize({5.0, 5.0, 5.0}) == std::vector<double>{1.0, 1.0, 1.0});
    CHECK(minmax_normalize({0.0, 0.5, 1.0}) == std::vector<double>{0.0, 0.5, 1.0});
    CHECK_THROWS_AS(minmax_normalize({}), std::invalid_argument);
}

TEST_CASE("single leaf scores 1 + alpha") {
    History h(SearchSpace({0.0}, {1.0}));
    h.append({0.5}, 1.0);
    h.append({0.7}, 2.0);
    std::vector<Leaf> leaves = {make_leaf(Region({0.0}, {1.0}), {1, 2})};
    RunConfig config;
    auto scores = composite_scores(leaves, h, 0.4, config);
    REQUIRE(scores.size() == 1);
    CHECK(scores[0].mu_norm == 1.0);
    CHECK(scores[0].V_norm == 1.0);
    CHECK(scores[0].E_norm == 1.0);
    CHECK(scores[0].B == doctest::Approx(1.4));
}

TEST_CASE("larger volume wins when everything else is equal") {
    History h(SearchSpace({0.0}, {4.0}));
    h.append({0.5}, 1.0);
    h.append({2.5}, 1.0);
    std::vector<Leaf> leaves = {
        make_leaf(Region({0.0}, {1.0}), {1}),
        make_leaf(Region({1.0}, {4.0}), {2}),
    };
    RunConfig config;
    auto scores = composite_scores(leaves, h, 0.5, config);
    CHECK(scores[1].B > scores[0].B);
}

TEST_CASE("empty cells enter normalization with the high-exploration default") {
    History h(SearchSpace({0.0}, {1.0}));
    h.append({0.25}, 3.0);
    std::vector<Leaf> leaves = {
        make_leaf(Region({0.0}, {0.5}), {1}),
        make_leaf(Region({0.5}, {1.0}), {}),  // synthetic empty cell
    };
    RunConfig config;
    auto scores = composite_scores(leaves, h, 1.0, config);
    CHECK(scores[1].mu == 0.0);
    CHECK(scores[1].V == 1.0);
    CHECK(scores[1].E == 1.0);
    CHECK(scores[1].mu_norm == 0.0);
    CHECK(scores[1].E_norm == 1.0);
}

TEST_CASE("scoring variants") {
    History h(SearchSpace({0.0}, {1.0}));
    h.append({0.1}, 1.0);
    h.append({0.2}, 5.0);
    h.append({0.8}, 2.0);
    Partition p = build_partition(h, h.space(), 1);
    RunConfig config;

    config.scoring_variant = ScoringVariant::uniform;
    for (const auto& s : composite_scores(p.leaves, h, 0.7, config)) CHECK(s.B == 1.0);

    config.scoring_variant = ScoringVariant::exploit_only;
    for (const auto& s : composite_scores(p.leaves, h, 0.7, config)) CHECK(s.B == s.mu_norm);

    config.scoring_variant = ScoringVariant::explore_only;
    for (const auto& s : composite_scores(p.leaves, h, 0.7, config))
        CHECK(s.B == doctest::Approx(0.7 * (0.5 * s.V_norm + 0.5 * s.E_norm)));

    config.scoring_variant = ScoringVariant::ucb1;
    auto scores = composite_scores(p.leaves, h, 0.7, config);
    for (std::size_t i = 0; i < scores.size(); ++i)
        CHECK(scores[i].E == doctest::Approx(oracle_ucb1(p.leaves[i].n(), h.t(), config.c)));
}

TEST_CASE("alpha = 0 ranks leaves purely by exploitation") {
    SearchSpace space({0.0, 0.0}, {1.0, 1.0});
    History h(space);
    Rng rng(55);
    for (int i = 0; i < 40; ++i)
        h.append({rng.uniform01(), rng.uniform01()}, rng.uniform(-3.0, 3.0));
    Partition p = build_partition(h, space, 2);
    RunConfig config;
    auto scores = composite_scores(p.leaves, h, 0.0, config);
    for (std::size_t a = 0; a < scores.size(); ++a)
        for (std::size_t b = 0; b < scores.size(); ++b)
            if (scores[a].mu > scores[b].mu) CHECK(scores[a].B >= scores[b].B);
}

TEST_CASE("composite scores stay non-negative, finite, and component-monotone") {
    SearchSpace space({-1.0, -1.0, -1.0}, {1.0, 1.0, 1.0});
    History h(space);
    Rng rng(56);
    for (int i = 0; i < 60; ++i)
        h.append({rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)},
                 rng.uniform(-5.0, 5.0));
    Partition p = build_partition(h, space, 2);
    RunConfig config;
    auto scores = composite_scores(p.leaves, h, 0.9, config);
    for (const auto& s : scores) {
        CHECK(s.B >= 0.0);
        CHECK(std::isfinite(s.B));
        CHECK(s.B <= 1.0 + 0.9 + 1e-12);
        CHECK(s.mu_norm >= 0.0);
        CHECK(s.mu_norm <= 1.0);
        CHECK(s.V_norm >= 0.0);
        CHECK(s.V_norm <= 1.0);
        CHECK(s.E_norm >= 0.0);
        CHECK(s.E_norm <= 1.0);
    }
    // min-max preserves the rank order within every component
    for (std::size_t a = 0; a < scores.size(); ++a)
        for (std::size_t b = 0; b < scores.size(); ++b) {
            if (scores[a].mu > scores[b].mu) CHECK(scores[a].mu_norm >= scores[b].mu_norm);
            if (scores[a].V > scores[b].V) CHECK(scores[a].V_norm >= scores[b].V_norm);
            if (scores[a].E > scores[b].E) CHECK(scores[a].E_norm >= scores[b].E_norm);
        }
}

TEST_CASE("composite_scores rejects an empty leaf list") {
    History h(SearchSpace({0.0}, {1.0}));
    h.append({0.5}, 1.0);
    RunConfig config;
    CHECK_THROWS_AS(composite_scores({}, h, 0.5, config), std::invalid_argument);
}
