#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hollm/rng.hpp"

namespace hollm {

using Point = std::vector<double>;

/// Axis-aligned box, the domain of a run.
struct SearchSpace {
    std::vector<double> lower;
    std::vector<double> upper;

    SearchSpace() = default;
    SearchSpace(std::vector<double> lo, std::vector<double> hi);

    int dims() const { return static_cast<int>(lower.size()); }
    bool contains(std::span<const double> x) const;
    double volume() const;
};

/// Axis-aligned cell, possibly degenerate (zero-width sides allowed).
struct Region {
    std::vector<double> lower;
    std::vector<double> upper;

    Region() = default;
    Region(std::vector<double> lo, std::vector<double> hi);
    static Region of(const SearchSpace& space) { return Region(space.lower, space.upper); }

    int dims() const { return static_cast<int>(lower.size()); }
    bool contains(std::span<const double> x) const;
    double side(int j) const { return upper[j] - lower[j]; }
};

struct Evaluation {
    Point point;
    double value = 0.0;  // internal convention: maximization
    int index = 0;       // 1-based evaluation order
};

/// Append-only evaluation log. The single optimizer loop is the only writer.
class History {
public:
    History() = default;
    explicit History(SearchSpace space) : space_(std::move(space)) {}

    const SearchSpace& space() const { return space_; }
    int t() const { return static_cast<int>(evals_.size()); }
    bool empty() const { return evals_.empty(); }
    const std::vector<Evaluation>& evaluations() const { return evals_; }
    const Evaluation& at(int index) const { return evals_.at(index - 1); }  // 1-based

    /// Appends one evaluation; the point must lie inside the search space.
    const Evaluation& append(Point point, double value);

private:
    SearchSpace space_;
    std::vector<Evaluation> evals_;
};

/// Best evaluation so far; ties break toward the earliest index.
const Evaluation& history_best(const History& history);

/// n0 points uniform in the space; bit-identical for identical seeds.
std::vector<Point> init_random(const SearchSpace& space, int n0, Rng& rng);

enum class ScoringVariant { ucbv, ucb1, exploit_only, explore_only, uniform };
enum class VolumeSource { cell, point_bbox };

ScoringVariant scoring_variant_from_string(const std::string& s);
std::string to_string(ScoringVariant v);
VolumeSource volume_source_from_string(const std::string& s);
std::string to_string(VolumeSource v);

/// All loop hyperparameters. Defaults follow the reference experimental setup.
struct RunConfig {
    int T = 50;              // total evaluation budget
    int n0 = 5;              // initial random evaluations
    int b = 4;               // evaluations per round
    int M = 5;               // regions selected per round
    int k = 5;               // proposals per region
    int m0 = 0;              // initial max leaf size; 0 = auto (ceil(d/2))
    double lambda = 0.0;     // leaf-size growth rate
    double alpha_max = 1.0;
    double alpha_min = 0.01;
    double beta1 = 0.5;      // volume weight
    double beta2 = 0.5;      // UCB-V weight
    double c = 1.0;          // UCB-V correction constant
    double epsilon = 1e-6;   // positivity offset in the exploitation shift
    double sigma0_sq = 0.01; // default variance for single-point cells
    std::uint64_t seed = 0;
    ScoringVariant scoring_variant = ScoringVariant::ucbv;
    VolumeSource volume_source = VolumeSource::cell;

    /// Effective initial leaf size for a d-dimensional problem.
    int m0_for(int d) const { return m0 > 0 ? m0 : (d + 1) / 2; }

    /// Throws std::invalid_argument on any violated invariant.
    void validate() const;
};

/// Maximization-convention objective. Implementations are deterministic
/// unless wrapped by the noise decorator.
class ObjectiveFunction {
public:
    virtual ~ObjectiveFunction() = default;

    /// Internal (maximization) value at x. Throws std::domain_error when
    /// x lies outside the search space.
    virtual double evaluate(std::span<const double> x) = 0;

    virtual const SearchSpace& space() const = 0;

    /// Known internal optimum (max), when the objective has one.
    virtual std::optional<double> known_optimum() const { return std::nullopt; }

    /// Maps an internal value back to the objective's native convention.
    /// Identity unless the objective was registered negated.
    virtual double raw_value(double internal) const { return internal; }

    virtual std::string name() const { return "objective"; }
};

} // namespace hollm
