#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "hollm/selection.hpp"

using namespace hollm;

TEST_CASE("leaf probabilities normalize the scores") {
    auto p = leaf_probabilities({1.0, 1.0, 2.0});
    CHECK(p == std::vector<double>{0.25, 0.25, 0.5});
    CHECK(leaf_probabilities({5.0}) == std::vector<double>{1.0});

    auto uniform = leaf_probabilities(std::vector<double>(8, 1.0));
    for (double v : uniform) CHECK(v == doctest::Approx(1.0 / 8.0));

    double total = 0.0;
    for (double v : leaf_probabilities({0.3, 1.7, 0.01, 4.0})) total += v;
    CHECK(std::abs(total - 1.0) <= 1e-12);

    CHECK_THROWS_WITH_AS(leaf_probabilities({0.0, 0.0}), "degenerate scores",
                         std::invalid_argument);
    CHECK_THROWS_AS(leaf_probabilities({}), std::invalid_argument);
}

TEST_CASE("selection exhausts all leaves when M >= K") {
    Rng rng(5);
    auto outcome = sample_without_replacement({0.2, 0.3, 0.5}, 10, rng);
    CHECK(outcome.chosen.size() == 3);
    std::set<int> unique(outcome.chosen.begin(), outcome.chosen.end());
    CHECK(unique == std::set<int>{0, 1, 2});
}

TEST_CASE("selection outcomes have no duplicates and length min(M, K)") {
    Rng rng(6);
    for (int trial = 0; trial < 200; ++trial) {
        int K = 1 + static_cast<int>(rng.below(12));
        int M = 1 + static_cast<int>(rng.below(12));
        std::vector<double> w(static_cast<std::size_t>(K));
        for (auto& v : w) v = rng.uniform(0.001, 1.0);
        auto p = leaf_probabilities(w);
        auto outcome = sample_without_replacement(p, M, rng);
        CHECK(static_cast<int>(outcome.chosen.size()) == std::min(M, K));
        std::set<int> unique(outcome.chosen.begin(), outcome.chosen.end());
        CHECK(unique.size() == outcome.chosen.size());
        for (int idx : outcome.chosen) {
            CHECK(idx >= 0);
            CHECK(idx < K);
        }
    }
}

TEST_CASE("selection is deterministic for a fixed stream") {
    std::vector<double> p = {0.1, 0.2, 0.3, 0.4};
    Rng a(77), b(77);
    auto o1 = sample_without_replacement(p, 3, a);
    auto o2 = sample_without_replacement(p, 3, b);
    CHECK(o1.chosen == o2.chosen);
    CHECK(o1.probabilities == p);
}

TEST_CASE("first-draw marginal matches p over 100k draws") {
    const std::vector<double> p = {0.25, 0.25, 0.5};
    const int draws = 100000;
    std::vector<int> counts(3, 0);
    Rng rng(424242);
    for (int i = 0; i < draws; ++i) {
        auto outcome = sample_without_replacement(p, 1, rng);
        ++counts[static_cast<std::size_t>(outcome.chosen[0])];
    }
    for (std::size_t i = 0; i < 3; ++i) {
        double freq = static_cast<double>(counts[i]) / draws;
        CHECK(std::abs(freq - p[i]) < 0.01);
    }
}

TEST_CASE("a dominant leaf is drawn first almost always") {
    std::vector<double> p = {0.999, 0.001};
    Rng rng(9);
    int first = 0;
    for (int i = 0; i < 2000; ++i)
        if (sample_without_replacement(p, 1, rng).chosen[0] == 0) ++first;
    CHECK(first > 1950);
}

TEST_CASE("every positive-probability leaf appears in some batch") {
    std::vector<double> p = {0.9, 0.05, 0.05};
    Rng rng(10);
    std::set<int> seen;
    for (int i = 0; i < 500 && seen.size() < 3; ++i) {
        auto outcome = sample_without_replacement(p, 1, rng);
        seen.insert(outcome.chosen[0]);
    }
    CHECK(seen.size() == 3);
}

TEST_CASE("zero-mass leaves are still selected once positive mass runs out") {
    std::vector<double> p = {1.0, 0.0, 0.0};
    Rng rng(11);
    auto outcome = sample_without_replacement(p, 3, rng);
    CHECK(outcome.chosen.size() == 3);
    CHECK(outcome.chosen[0] == 0);
    std::set<int> unique(outcome.chosen.begin(), outcome.chosen.end());
    CHECK(unique == std::set<int>{0, 1, 2});
}
