#include "hollm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hollm/rng.hpp"

namespace hollm {

std::vector<double> simple_regret(const std::vector<double>& best_so_far, double f_star) {
    std::vector<double> out(best_so_far.size());
    for (std::size_t i = 0; i < best_so_far.size(); ++i) out[i] = f_star - best_so_far[i];
    return out;
}

std::vector<double> simple_regret(const Trajectory& trajectory, double f_star) {
    std::vector<double> best;
    best.reserve(trajectory.records.size());
    for (const auto& r : trajectory.records) best.push_back(r.best_internal);
    return simple_regret(best, f_star);
}

std::vector<double> cumulative_regret(const std::vector<double>& values, double f_star) {
    std::vector<double> out(values.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        acc += f_star - values[i];
        out[i] = acc;
    }
    return out;
}

std::vector<double> cumulative_regret(const Trajectory& trajectory, double f_star) {
    std::vector<double> values;
    values.reserve(trajectory.records.size());
    for (const auto& r : trajectory.records) values.push_back(r.internal_value);
    return cumulative_regret(values, f_star);
}

namespace {

double sq_dist(const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        double dx = a[j] - b[j];
        s += dx * dx;
    }
    return s;
}

} // namespace

double icl_divergence(const std::vector<Point>& proposals, const std::vector<Point>& context) {
    if (proposals.empty() || context.empty())
        throw std::invalid_argument("icl_divergence on empty set");
    double total = 0.0;
    for (const auto& p : proposals) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const auto& c : context) nearest = std::min(nearest, sq_dist(p, c));
        total += std::sqrt(nearest);
    }
    return total / static_cast<double>(proposals.size());
}

double hausdorff_coverage(const std::vector<Point>& points, int mc_samples, std::uint64_t seed) {
    if (points.empty()) throw std::invalid_argument("hausdorff_coverage on empty point set");
    if (mc_samples < 1) throw std::invalid_argument("mc_samples must be >= 1");
    const std::size_t d = points.front().size();
    for (const auto& p : points) {
        if (p.size() != d) throw std::invalid_argument("inconsistent point dimensionality");
        for (double v : p)
            if (v < 0.0 || v > 1.0)
                throw std::invalid_argument("points must lie in the unit cube");
    }

    // Kronecker (generalized golden ratio) sequence: alpha_j = phi_d^-(j+1),
    // phi_d the positive root of x^(d+1) = x + 1. Shifted by a seeded offset.
    double phi = 2.0;
    for (int it = 0; it < 64; ++it) {
        double f = std::pow(phi, static_cast<double>(d) + 1.0) - phi - 1.0;
        double fp = (static_cast<double>(d) + 1.0) * std::pow(phi, static_cast<double>(d)) - 1.0;
        phi -= f / fp;
    }
    std::vector<double> alpha(d), shift(d);
    Rng rng(seed);
    for (std::size_t j = 0; j < d; ++j) {
        alpha[j] = std::fmod(std::pow(1.0 / phi, static_cast<double>(j + 1)), 1.0);
        shift[j] = rng.uniform01();
    }

    double sup = 0.0;
    Point probe(d);
    for (int n = 0; n < mc_samples; ++n) {
        for (std::size_t j = 0; j < d; ++j) {
            double v = std::fmod(shift[j] + static_cast<double>(n + 1) * alpha[j], 1.0);
            probe[j] = v;
        }
        double nearest = std::numeric_limits<double>::infinity();
        for (const auto& p : points) nearest = std::min(nearest, sq_dist(probe, p));
        sup = std::max(sup, nearest);
    }
    return std::sqrt(sup);
}

} // namespace hollm
