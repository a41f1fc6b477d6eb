#include "hollm/core.hpp"

#include <algorithm>
#include <cmath>

namespace hollm {

SearchSpace::SearchSpace(std::vector<double> lo, std::vector<double> hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
    if (lower.empty() || lower.size() != upper.size())
        throw std::invalid_argument("search space needs matching non-empty bounds");
    for (std::size_t j = 0; j < lower.size(); ++j)
        if (!(lower[j] < upper[j]))
            throw std::invalid_argument("search space requires lower < upper in every dimension");
}

bool SearchSpace::contains(std::span<const double> x) const {
    if (x.size() != lower.size()) return false;
    for (std::size_t j = 0; j < lower.size(); ++j)
        if (x[j] < lower[j] || x[j] > upper[j]) return false;
    return true;
}

double SearchSpace::volume() const {
    double v = 1.0;
    for (std::size_t j = 0; j < lower.size(); ++j) v *= upper[j] - lower[j];
    return v;
}

Region::Region(std::vector<double> lo, std::vector<double> hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
    if (lower.size() != upper.size())
        throw std::invalid_argument("region needs matching bounds");
    for (std::size_t j = 0; j < lower.size(); ++j)
        if (lower[j] > upper[j])
            throw std::invalid_argument("region requires lower <= upper");
}

bool Region::contains(std::span<const double> x) const {
    if (x.size() != lower.size()) return false;
    for (std::size_t j = 0; j < lower.size(); ++j)
        if (x[j] < lower[j] || x[j] > upper[j]) return false;
    return true;
}

const Evaluation& History::append(Point point, double value) {
    if (!space_.contains(point))
        throw std::invalid_argument("evaluation point outside search space");
    Evaluation e;
    e.point = std::move(point);
    e.value = value;
    e.index = static_cast<int>(evals_.size()) + 1;
    evals_.push_back(std::move(e));
    return evals_.back();
}

const Evaluation& history_best(const History& history) {
    if (history.empty()) throw std::invalid_argument("empty history");
    const auto& evals = history.evaluations();
    const Evaluation* best = &evals.front();
    for (const auto& e : evals)
        if (e.value > best->value) best = &e;
    return *best;
}

std::vector<Point> init_random(const SearchSpace& space, int n0, Rng& rng) {
    if (n0 < 1) throw std::invalid_argument("n0 must be >= 1");
    std::vector<Point> points;
    points.reserve(static_cast<std::size_t>(n0));
    for (int i = 0; i < n0; ++i) {
        Point x(static_cast<std::size_t>(space.dims()));
        for (int j = 0; j < space.dims(); ++j)
            x[static_cast<std::size_t>(j)] = rng.uniform(space.lower[j], space.upper[j]);
        points.push_back(std::move(x));
    }
    return points;
}

ScoringVariant scoring_variant_from_string(const std::string& s) {
    if (s == "ucbv") return ScoringVariant::ucbv;
    if (s == "ucb1") return ScoringVariant::ucb1;
    if (s == "exploit_only") return ScoringVariant::exploit_only;
    if (s == "explore_only") return ScoringVariant::explore_only;
    if (s == "uniform") return ScoringVariant::uniform;
    throw std::invalid_argument("unknown scoring variant: " + s);
}

std::string to_string(ScoringVariant v) {
    switch (v) {
        case ScoringVariant::ucbv: return "ucbv";
        case ScoringVariant::ucb1: return "ucb1";
        case ScoringVariant::exploit_only: return "exploit_only";
        case ScoringVariant::explore_only: return "explore_only";
        case ScoringVariant::uniform: return "uniform";
    }
    return "ucbv";
}

VolumeSource volume_source_from_string(const std::string& s) {
    if (s == "cell") return VolumeSource::cell;
    if (s == "point_bbox") return VolumeSource::point_bbox;
    throw std::invalid_argument("unknown volume source: " + s);
}

std::string to_string(VolumeSource v) {
    return v == VolumeSource::cell ? "cell" : "point_bbox";
}

void RunConfig::validate() const {
    if (n0 < 1) throw std::invalid_argument("n0 must be >= 1");
    if (T < n0) throw std::invalid_argument("T must be >= n0");
    if (b < 1 || M < 1 || k < 1) throw std::invalid_argument("b, M, k must be >= 1");
    if (b > k * M) throw std::invalid_argument("b must be <= k*M, otherwise top-b is undefined");
    if (m0 < 0) throw std::invalid_argument("m0 must be >= 0 (0 = auto)");
    if (lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
    if (!(alpha_min <= alpha_max)) throw std::invalid_argument("alpha_min must be <= alpha_max");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
    if (sigma0_sq < 0.0) throw std::invalid_argument("sigma0_sq must be >= 0");
    if (beta1 < 0.0 || beta2 < 0.0) throw std::invalid_argument("beta weights must be >= 0");
    bool both_active = scoring_variant == ScoringVariant::ucbv ||
                       scoring_variant == ScoringVariant::ucb1 ||
                       scoring_variant == ScoringVariant::explore_only;
    if (both_active && std::abs(beta1 + beta2 - 1.0) > 1e-12)
        throw std::invalid_argument("beta1 + beta2 must equal 1 when both exploration terms are active");
}

} // namespace hollm
