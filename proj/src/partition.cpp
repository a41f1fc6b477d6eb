#include "hollm/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hollm {

int max_leaf_size(int t, int m0, double lambda) {
    if (t < 0 || m0 < 1 || lambda < 0.0)
        throw std::invalid_argument("max_leaf_size requires t >= 0, m0 >= 1, lambda >= 0");
    return m0 + static_cast<int>(std::ceil(lambda * std::log1p(static_cast<double>(t))));
}

std::optional<SplitChoice> choose_split(const std::vector<const double*>& points, int d) {
    const std::size_t n = points.size();
    if (n < 2) throw std::invalid_argument("cannot split fewer than 2 points");

    std::vector<double> mean(static_cast<std::size_t>(d), 0.0);
    std::vector<double> var(static_cast<std::size_t>(d), 0.0);
    for (const double* p : points)
        for (int j = 0; j < d; ++j) mean[j] += p[j];
    for (int j = 0; j < d; ++j) mean[j] /= static_cast<double>(n);
    for (const double* p : points)
        for (int j = 0; j < d; ++j) {
            double dx = p[j] - mean[j];
            var[j] += dx * dx;
        }

    // dimensions in decreasing variance order, ties toward the lower index
    std::vector<int> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return var[a] > var[b]; });

    for (int j : order) {
        if (var[j] <= 0.0) break;
        double value = mean[j];
        std::size_t left = 0;
        for (const double* p : points)
            if (p[j] <= value) ++left;
        if (left > 0 && left < n) return SplitChoice{j, value};
    }
    return std::nullopt;  // all points identical, or rounding collapsed every split
}

namespace {

void split_recursive(const History& history, std::vector<int>& indices, Region cell,
                     int m_t, std::vector<Leaf>& out) {
    const int d = cell.dims();
    const int n = static_cast<int>(indices.size());

    std::optional<SplitChoice> split;
    if (n > m_t) {
        std::vector<const double*> pts;
        pts.reserve(indices.size());
        for (int i : indices) pts.push_back(history.at(i).point.data());
        split = choose_split(pts, d);
    }

    if (!split) {
        Leaf leaf;
        leaf.region = std::move(cell);
        std::sort(indices.begin(), indices.end());
        leaf.indices = std::move(indices);
        leaf.degenerate = n > m_t;
        out.push_back(std::move(leaf));
        return;
    }

    std::vector<int> left_idx, right_idx;
    for (int i : indices) {
        const auto& p = history.at(i).point;
        (p[split->dim] <= split->value ? left_idx : right_idx).push_back(i);
    }

    Region left_cell = cell;
    left_cell.upper[split->dim] = split->value;
    Region right_cell = std::move(cell);
    right_cell.lower[split->dim] = split->value;

    split_recursive(history, left_idx, std::move(left_cell), m_t, out);
    split_recursive(history, right_idx, std::move(right_cell), m_t, out);
}

} // namespace

Partition build_partition(const History& history, const SearchSpace& space, int m_t) {
    if (history.empty()) throw std::invalid_argument("empty history");
    if (m_t < 1) throw std::invalid_argument("m_t must be >= 1");

    std::vector<int> all(static_cast<std::size_t>(history.t()));
    std::iota(all.begin(), all.end(), 1);

    Partition partition;
    partition.round = history.t();
    split_recursive(history, all, Region::of(space), m_t, partition.leaves);
    return partition;
}

} // namespace hollm
