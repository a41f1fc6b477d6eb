#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hollm/core.hpp"
#include "hollm/generation.hpp"
#include "hollm/llm_client.hpp"
#include "hollm/optimizer.hpp"

namespace hollm {

struct MethodSpec {
    std::string method = "hollm";  // hollm | global_llm | rs | rs_kdtree
    std::string generator = "uniform";  // uniform | llm | mock
    ScoringVariant variant = ScoringVariant::ucbv;

    /// Stable identifier used in file names and CSV rows.
    std::string label() const;
    void validate() const;
};

struct LlmSettings {
    EndpointConfig endpoint;
    std::string model = "gemini-2.0-flash";
    double temperature = 0.7;
    int max_retries = 2;
    int n_ctx = 100;
    int max_tokens = 4096;
    GeneratorSpec::PromptMode prompt_mode = GeneratorSpec::PromptMode::two_prompt;
    bool offline = false;                 // forbid network; fixtures only
    std::vector<std::string> fixtures;    // replay files for offline runs
    std::string prompt_dir;               // optional template override
    std::string mock_fixture;             // JSON file for the scripted mock
};

struct ExperimentConfig {
    std::string benchmark;
    std::vector<MethodSpec> methods;
    RunConfig run;
    std::vector<std::uint64_t> seeds;
    std::optional<double> noise_sigma;
    std::string output_dir = "out";
    LlmSettings llm;
    int workers = 1;

    void validate() const;
};

ExperimentConfig experiment_config_from_json_file(const std::string& path);
ExperimentConfig experiment_config_from_json_text(const std::string& text);

struct SummaryRow {
    std::string method;
    std::uint64_t seed = 0;
    int t = 0;
    double best_raw = 0.0;
    double best_internal = 0.0;
    std::optional<double> simple_regret;
    std::optional<double> cum_regret;
};

struct RunStatus {
    std::string label;
    std::uint64_t seed = 0;
    std::string status = "ok";  // ok | failed
    std::string error;
    std::string trajectory_file;
    std::string meta_file;
    double wall_ms = 0.0;
    TokenUsage tokens;
};

struct ExperimentResult {
    std::vector<RunStatus> runs;
    std::string results_csv;
    std::string summary_csv;
    std::string manifest;
};

/// Builds the objective (plus optional noise wrapper) for one run.
std::unique_ptr<ObjectiveFunction> make_run_objective(const ExperimentConfig& config,
                                                      std::uint64_t seed);

/// Builds the generator for one method/run; offline methods replay fixtures.
std::unique_ptr<CandidateGenerator> make_run_generator(const MethodSpec& method,
                                                       const LlmSettings& llm,
                                                       std::uint64_t seed);

/// Runs one (method, seed) pair, streaming records through the sink.
Trajectory run_method(const MethodSpec& method, ObjectiveFunction& objective,
                      const RunConfig& run, CandidateGenerator* generator,
                      const RecordSink& sink = nullptr);

/// Executes all (method x seed) runs, writing per-run JSONL trajectories, a
/// per-evaluation results CSV, an aggregate summary CSV (mean and standard
/// error across seeds), and a JSON manifest. A failing run is recorded in
/// the manifest; the remaining runs continue.
ExperimentResult run_experiment(const ExperimentConfig& config);

} // namespace hollm
