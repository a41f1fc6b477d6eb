#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hollm/core.hpp"
#include "hollm/generation.hpp"
#include "hollm/llm_client.hpp"

namespace hollm {

struct TrajectoryRecord {
    int t = 0;
    Point point;
    double raw_value = 0.0;       // objective's native convention
    double internal_value = 0.0;  // maximization convention
    double best_internal = 0.0;   // best-so-far, monotone non-decreasing
    int round = 0;                // 0 for initialization / pure random search
    int region_index = -1;        // origin leaf; -1 when no partition exists
    std::string generator_tag;
    double alpha_t = 0.0;         // 0 where no annealing schedule applies
};

/// Full per-run log: exactly T records at completion, t fields 1..T.
struct Trajectory {
    std::string method;
    std::string objective_name;
    RunConfig config;
    std::vector<TrajectoryRecord> records;
    double wall_ms = 0.0;
    TokenUsage tokens;

    const TrajectoryRecord& best() const;
};

/// Streamed once per evaluation so aborted runs stay analyzable.
using RecordSink = std::function<void(const TrajectoryRecord&)>;

/// The full loop: init, then {partition, score, select, generate, top-b,
/// evaluate} until exactly T evaluations. The final batch is truncated to
/// T - t proposals. Deterministic end-to-end for a fixed seed under
/// scripted/uniform generators.
Trajectory run_hollm(ObjectiveFunction& objective, const RunConfig& config,
                     CandidateGenerator& generator, const RecordSink& sink = nullptr);

/// Baseline without partitioning: one generation call per round over the
/// whole space requesting k*M proposals, top-b evaluated.
Trajectory run_global_llm(ObjectiveFunction& objective, const RunConfig& config,
                          CandidateGenerator& generator, const RecordSink& sink = nullptr);

/// T uniform points evaluated in order.
Trajectory run_random_search(ObjectiveFunction& objective, const RunConfig& config,
                             const RecordSink& sink = nullptr);

/// Adds independent N(0, sigma^2) draws to every evaluation. Trajectories
/// record the noisy observations, matching how all methods observe.
std::unique_ptr<ObjectiveFunction> make_noisy(std::unique_ptr<ObjectiveFunction> base,
                                              double sigma, Rng rng);

} // namespace hollm
