#include "hollm/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#include "hollm/partition.hpp"
#include "hollm/scoring.hpp"
#include "hollm/selection.hpp"

namespace hollm {

const TrajectoryRecord& Trajectory::best() const {
    if (records.empty()) throw std::logic_error("empty trajectory");
    const TrajectoryRecord* best = &records.front();
    for (const auto& r : records)
        if (r.internal_value > best->internal_value) best = &r;
    return *best;
}

namespace {

class Run {
public:
    Run(ObjectiveFunction& objective, const RunConfig& config, std::string method,
        const RecordSink& sink)
        : objective_(objective),
          config_(config),
          history_(objective.space()),
          sink_(sink),
          start_(std::chrono::steady_clock::now()) {
        config.validate();
        trajectory_.method = std::move(method);
        trajectory_.objective_name = objective.name();
        trajectory_.config = config;
    }

    History& history() { return history_; }
    int t() const { return history_.t(); }

    void evaluate(Point point, int round, int region_index, const std::string& tag,
                  double alpha) {
        double value = objective_.evaluate(point);
        best_ = history_.empty() ? value : std::max(best_, value);
        const Evaluation& e = history_.append(std::move(point), value);

        TrajectoryRecord record;
        record.t = e.index;
        record.point = e.point;
        record.raw_value = objective_.raw_value(value);
        record.internal_value = value;
        record.best_internal = best_;
        record.round = round;
        record.region_index = region_index;
        record.generator_tag = tag;
        record.alpha_t = alpha;
        trajectory_.records.push_back(record);
        if (sink_) sink_(trajectory_.records.back());
    }

    void init_phase() {
        Rng rng = derive_rng(config_.seed, "init", 0);
        for (auto& p : init_random(objective_.space(), config_.n0, rng))
            evaluate(std::move(p), 0, -1, "init", 0.0);
    }

    Trajectory finish(TokenUsage tokens) {
        trajectory_.tokens = tokens;
        trajectory_.wall_ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - start_)
                                  .count();
        return std::move(trajectory_);
    }

private:
    ObjectiveFunction& objective_;
    const RunConfig& config_;
    History history_;
    Trajectory trajectory_;
    const RecordSink& sink_;
    double best_ = -std::numeric_limits<double>::infinity();
    std::chrono::steady_clock::time_point start_;
};

} // namespace

Trajectory run_hollm(ObjectiveFunction& objective, const RunConfig& config,
                     CandidateGenerator& generator, const RecordSink& sink) {
    config.validate();
    const int d = objective.space().dims();

    Run run(objective, config, "hollm", sink);
    run.init_phase();

    int round = 0;
    while (run.t() < config.T) {
        ++round;
        const int t = run.t();
        const int m_t = max_leaf_size(t, config.m0_for(d), config.lambda);
        Partition partition = build_partition(run.history(), objective.space(), m_t);
        const double alpha = cosine_alpha(t, config.T, config.alpha_min, config.alpha_max);

        auto scores = composite_scores(partition.leaves, run.history(), alpha, config);
        std::vector<double> B(scores.size());
        for (std::size_t i = 0; i < scores.size(); ++i) B[i] = scores[i].B;

        Rng select_rng = derive_rng(config.seed, "select", static_cast<std::uint64_t>(round));
        SelectionOutcome selected =
            sample_without_replacement(leaf_probabilities(B), config.M, select_rng);

        // merge in ascending leaf order so outcomes are independent of
        // generation completion order
        std::vector<int> chosen = selected.chosen;
        std::sort(chosen.begin(), chosen.end());

        std::vector<CandidateProposal> proposals;
        proposals.reserve(chosen.size() * static_cast<std::size_t>(config.k));
        for (int leaf_index : chosen) {
            Rng gen_rng = derive_rng(config.seed, "generate", static_cast<std::uint64_t>(round),
                                     static_cast<std::uint64_t>(leaf_index));
            auto batch = generator.generate(partition.leaves[leaf_index].region, run.history(),
                                            config.k, gen_rng);
            for (auto& p : batch) {
                p.region_index = leaf_index;
                proposals.push_back(std::move(p));
            }
        }

        const int b_now = std::min(config.b, config.T - t);
        for (auto& winner : select_top_b(proposals, b_now))
            run.evaluate(std::move(winner.point), round, winner.region_index,
                         winner.generator_tag, alpha);
    }
    return run.finish(generator.usage());
}

Trajectory run_global_llm(ObjectiveFunction& objective, const RunConfig& config,
                          CandidateGenerator& generator, const RecordSink& sink) {
    config.validate();

    Run run(objective, config, "global_llm", sink);
    run.init_phase();

    const Region whole = Region::of(objective.space());
    int round = 0;
    while (run.t() < config.T) {
        ++round;
        Rng gen_rng = derive_rng(config.seed, "generate", static_cast<std::uint64_t>(round), 0);
        auto proposals = generator.generate(whole, run.history(), config.k * config.M, gen_rng);
        for (auto& p : proposals) p.region_index = 0;

        const int b_now = std::min(config.b, config.T - run.t());
        for (auto& winner : select_top_b(proposals, b_now))
            run.evaluate(std::move(winner.point), round, winner.region_index,
                         winner.generator_tag, 0.0);
    }
    return run.finish(generator.usage());
}

Trajectory run_random_search(ObjectiveFunction& objective, const RunConfig& config,
                             const RecordSink& sink) {
    config.validate();

    Run run(objective, config, "rs", sink);
    Rng rng = derive_rng(config.seed, "random_search", 0);
    const auto& space = objective.space();
    while (run.t() < config.T) {
        Point x(static_cast<std::size_t>(space.dims()));
        for (int j = 0; j < space.dims(); ++j)
            x[static_cast<std::size_t>(j)] = rng.uniform(space.lower[j], space.upper[j]);
        run.evaluate(std::move(x), 0, -1, "rs", 0.0);
    }
    return run.finish({});
}

namespace {

class NoisyObjective final : public ObjectiveFunction {
public:
    NoisyObjective(std::unique_ptr<ObjectiveFunction> base, double sigma, Rng rng)
        : base_(std::move(base)), sigma_(sigma), rng_(rng) {
        if (sigma < 0.0) throw std::invalid_argument("sigma must be >= 0");
    }

    double evaluate(std::span<const double> x) override {
        return base_->evaluate(x) + sigma_ * rng_.normal();
    }
    const SearchSpace& space() const override { return base_->space(); }
    std::optional<double> known_optimum() const override { return base_->known_optimum(); }
    double raw_value(double internal) const override { return base_->raw_value(internal); }
    std::string name() const override { return base_->name() + "+noise"; }

private:
    std::unique_ptr<ObjectiveFunction> base_;
    double sigma_;
    Rng rng_;
};

} // namespace

std::unique_ptr<ObjectiveFunction> make_noisy(std::unique_ptr<ObjectiveFunction> base,
                                              double sigma, Rng rng) {
    return std::make_unique<NoisyObjective>(std::move(base), sigma, rng);
}

} // namespace hollm
