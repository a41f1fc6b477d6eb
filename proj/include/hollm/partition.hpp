#pragma once

#include <optional>
#include <vector>

#include "hollm/core.hpp"

namespace hollm {

/// Terminal KD-tree cell together with the evaluations it holds.
struct Leaf {
    Region region;
    std::vector<int> indices;  // 1-based evaluation indices, ascending
    bool degenerate = false;   // could not split despite exceeding the size cap

    int n() const { return static_cast<int>(indices.size()); }
};

/// Disjoint leaves covering the whole search space.
struct Partition {
    std::vector<Leaf> leaves;
    int round = 0;  // t at build time

    int K() const { return static_cast<int>(leaves.size()); }
};

/// m_t = m0 + ceil(lambda * ln(1 + t))
int max_leaf_size(int t, int m0, double lambda);

struct SplitChoice {
    int dim = 0;
    double value = 0.0;
};

/// Splitting rule: dimension of largest variance (ties to the lowest index),
/// threshold at the mean along that dimension. Falls back to the
/// next-highest-variance dimension when the mean split leaves one side empty;
/// returns nullopt when no dimension separates the points.
std::optional<SplitChoice> choose_split(const std::vector<const double*>& points, int d);

/// Rebuilds the KD-tree over the full history. The root cell is the search
/// space; child cells inherit the parent bounds with the split dimension's
/// bound replaced by the split value. Coordinates equal to the split value
/// go left.
Partition build_partition(const History& history, const SearchSpace& space, int m_t);

} // namespace hollm
