#pragma once

#include <cstdint>
#include <vector>

#include "hollm/core.hpp"
#include "hollm/optimizer.hpp"

namespace hollm {

/// r_t = f_star - best_so_far(t); monotone non-increasing.
std::vector<double> simple_regret(const std::vector<double>& best_so_far, double f_star);
std::vector<double> simple_regret(const Trajectory& trajectory, double f_star);

/// R_t = sum_{i<=t} (f_star - v_i); uses per-evaluation values, not best-so-far.
std::vector<double> cumulative_regret(const std::vector<double>& values, double f_star);
std::vector<double> cumulative_regret(const Trajectory& trajectory, double f_star);

/// Mean nearest-neighbor Euclidean distance from each proposal to the
/// context set; low values indicate proposal collapse.
double icl_divergence(const std::vector<Point>& proposals, const std::vector<Point>& context);

/// Estimates sup_{x in [0,1]^d} min_p ||x - p|| by maximizing over a
/// low-discrepancy probe sequence with a seeded shift. A lower bound on the
/// true supremum; deterministic given the seed.
double hausdorff_coverage(const std::vector<Point>& points, int mc_samples, std::uint64_t seed);

} // namespace hollm
