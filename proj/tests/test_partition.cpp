#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hollm/partition.hpp"

using namespace hollm;

namespace {

History random_history(const SearchSpace& space, int n, std::uint64_t seed) {
    History h(space);
    Rng rng(seed);
    for (int i = 0; i < n; ++i) {
        Point x(static_cast<std::size_t>(space.dims()));
        for (int j = 0; j < space.dims(); ++j)
            x[static_cast<std::size_t>(j)] = rng.uniform(space.lower[j], space.upper[j]);
        h.append(std::move(x), rng.uniform(-1.0, 1.0));
    }
    return h;
}

// independent transcription: per-dimension variance around the mean
int oracle_max_variance_dim(const std::vector<Point>& pts) {
    const int d = static_cast<int>(pts[0].size());
    int best = 0;
    double best_var = -1.0;
    for (int j = 0; j < d; ++j) {
        double mean = 0.0;
        for (const auto& p : pts) mean += p[j];
        mean /= static_cast<double>(pts.size());
        double var = 0.0;
        for (const auto& p : pts) var += (p[j] - mean) * (p[j] - mean);
        if (var > best_var + 1e-15) {
            best_var = var;
            best = j;
        }
    }
    return best;
}

double leaf_volume(const Region& r) {
    double v = 1.0;
    for (int j = 0; j < r.dims(); ++j) v *= r.side(j);
    return v;
}

} // namespace

TEST_CASE("max_leaf_size follows the logarithmic growth rule") {
    CHECK(max_leaf_size(0, 3, 0.0) == 3);
    CHECK(max_leaf_size(17, 3, 0.0) == 3);
    CHECK(max_leaf_size(9999, 3, 0.0) == 3);
    CHECK(max_leaf_size(0, 2, 5.0) == 2);       // ln(1) = 0
    CHECK(max_leaf_size(9, 2, 1.0) == 5);       // 2 + ceil(ln 10) = 5
    CHECK_THROWS_AS(max_leaf_size(-1, 3, 0.0), std::invalid_argument);
}

TEST_CASE("choose_split picks the max-variance dimension and the mean") {
    std::vector<Point> pts = {{0.0, 0.0}, {1.0, 0.1}};
    std::vector<const double*> ptrs = {pts[0].data(), pts[1].data()};
    auto split = choose_split(ptrs, 2);
    REQUIRE(split.has_value());
    CHECK(split->dim == 0);
    CHECK(split->value == doctest::Approx(0.5));
    CHECK(split->dim == oracle_max_variance_dim(pts));
}

TEST_CASE("choose_split is none for identical points") {
    std::vector<Point> pts = {{0.3, 0.7}, {0.3, 0.7}, {0.3, 0.7}};
    std::vector<const double*> ptrs;
    for (auto& p : pts) ptrs.push_back(p.data());
    CHECK(!choose_split(ptrs, 2).has_value());
}

TEST_CASE("choose_split 1-D mean split separates duplicates from the outlier") {
    std::vector<Point> pts = {{0.0}, {0.0}, {1.0}};
    std::vector<const double*> ptrs;
    for (auto& p : pts) ptrs.push_back(p.data());
    auto split = choose_split(ptrs, 1);
    REQUIRE(split.has_value());
    CHECK(split->dim == 0);
    CHECK(split->value == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("choose_split rejects fewer than 2 points") {
    std::vector<Point> pts = {{0.5}};
    std::vector<const double*> ptrs = {pts[0].data()};
    CHECK_THROWS_AS(choose_split(ptrs, 1), std::invalid_argument);
}

TEST_CASE("choose_split agrees with the variance oracle on random nodes") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        int d = 1 + static_cast<int>(rng.below(6));
        int n = 2 + static_cast<int>(rng.below(30));
        std::vector<Point> pts;
        for (int i = 0; i < n; ++i) {
            Point p(static_cast<std::size_t>(d));
            for (int j = 0; j < d; ++j) p[static_cast<std::size_t>(j)] = rng.uniform01();
            pts.push_back(std::move(p));
        }
        std::vector<const double*> ptrs;
        for (auto& p : pts) ptrs.push_back(p.data());
        auto split = choose_split(ptrs, d);
        REQUIRE(split.has_value());
        CHECK(split->dim == oracle_max_variance_dim(pts));
    }
}

TEST_CASE("two mean-separated points split at the midpoint") {
    History h(SearchSpace({0.0}, {1.0}));
    h.append({0.2}, 0.0);
    h.append({0.8}, 0.0);
    Partition p = build_partition(h, h.space(), 1);
    REQUIRE(p.K() == 2);
    CHECK(p.leaves[0].region.lower[0] == doctest::Approx(0.0));
    CHECK(p.leaves[0].region.upper[0] == doctest::Approx(0.5));
    CHECK(p.leaves[1].region.lower[0] == doctest::Approx(0.5));
    CHECK(p.leaves[1].region.upper[0] == doctest::Approx(1.0));
    CHECK(p.leaves[0].indices == std::vector<int>{1});
    CHECK(p.leaves[1].indices == std::vector<int>{2});
}

TEST_CASE("no split when the cap covers all points") {
    History h = random_history(SearchSpace({0.0, 0.0}, {1.0, 1.0}), 5, 3);
    Partition p = build_partition(h, h.space(), 5);
    REQUIRE(p.K() == 1);
    CHECK(p.leaves[0].n() == 5);
    CHECK(p.leaves[0].region.lower == h.space().lower);
    CHECK(p.leaves[0].region.upper == h.space().upper);
}

TEST_CASE("duplicate-heavy histories terminate in a degenerate leaf") {
    History h(SearchSpace({0.0}, {1.0}));
    for (int i = 0; i < 10; ++i) h.append({0.5}, 1.0);
    Partition p = build_partition(h, h.space(), 2);
    REQUIRE(p.K() == 1);
    CHECK(p.leaves[0].degenerate);
    CHECK(p.leaves[0].n() == 10);
}

TEST_CASE("build_partition rejects empty history") {
    History h(SearchSpace({0.0}, {1.0}));
    CHECK_THROWS_AS(build_partition(h, h.space(), 1), std::invalid_argument);
}

TEST_CASE("partition covers the space and assigns every point once") {
    SearchSpace space(std::vector<double>(5, 0.0), std::vector<double>(5, 1.0));
    History h = random_history(space, 200, 17);
    Partition p = build_partition(h, space, 3);

    double total = 0.0;
    for (const auto& leaf : p.leaves) total += leaf_volume(leaf.region);
    CHECK(std::abs(total - space.volume()) <= 1e-9 * space.volume());

    std::vector<int> owner(static_cast<std::size_t>(h.t()) + 1, 0);
    for (const auto& leaf : p.leaves)
        for (int i : leaf.indices) ++owner[static_cast<std::size_t>(i)];
    for (int i = 1; i <= h.t(); ++i) CHECK(owner[static_cast<std::size_t>(i)] == 1);

    for (const auto& leaf : p.leaves) {
        if (!leaf.degenerate) CHECK(leaf.n() <= 3);
        for (int i : leaf.indices) CHECK(leaf.region.contains(h.at(i).point));
    }
}

TEST_CASE("rebuilds are deterministic") {
    SearchSpace space(std::vector<double>(3, -2.0), std::vector<double>(3, 2.0));
    History h = random_history(space, 64, 5);
    Partition a = build_partition(h, space, 2);
    Partition b = build_partition(h, space, 2);
    REQUIRE(a.K() == b.K());
    for (int i = 0; i < a.K(); ++i) {
        CHECK(a.leaves[i].region.lower == b.leaves[i].region.lower);
        CHECK(a.leaves[i].region.upper == b.leaves[i].region.upper);
        CHECK(a.leaves[i].indices == b.leaves[i].indices);
    }
}

TEST_CASE("leaf interiors are pairwise disjoint on sampled points") {
    SearchSpace space({0.0, 0.0}, {1.0, 1.0});
    History h = random_history(space, 80, 23);
    Partition p = build_partition(h, space, 2);

    Rng rng(99);
    for (int s = 0; s < 500; ++s) {
        Point x = {rng.uniform01(), rng.uniform01()};
        int strictly_inside = 0;
        for (const auto& leaf : p.leaves) {
            bool interior = true;
            for (int j = 0; j < 2; ++j)
                if (x[static_cast<std::size_t>(j)] <= leaf.region.lower[j] ||
                    x[static_cast<std::size_t>(j)] >= leaf.region.upper[j])
                    interior = false;
            strictly_inside += interior ? 1 : 0;
        }
        CHECK(strictly_inside <= 1);
    }
}

TEST_CASE("randomized partitions keep the invariants") {
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        int d = 1 + static_cast<int>(rng.below(6));
        int n = 2 + static_cast<int>(rng.below(200));
        int m = 1 + static_cast<int>(rng.below(8));
        SearchSpace space(std::vector<double>(static_cast<std::size_t>(d), -1.0),
                          std::vector<double>(static_cast<std::size_t>(d), 3.0));
        History h = random_history(space, n, rng.next_u64());
        Partition p = build_partition(h, space, m);

        double total = 0.0;
        int points = 0;
        for (const auto& leaf : p.leaves) {
            total += leaf_volume(leaf.region);
            points += leaf.n();
            if (!leaf.degenerate) CHECK(leaf.n() <= m);
        }
        CHECK(points == n);
        CHECK(std::abs(total - space.volume()) <= 1e-9 * space.volume());
    }
}
