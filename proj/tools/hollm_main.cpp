#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "hollm/benchmarks.hpp"
#include "hollm/experiment.hpp"
#include "hollm/metrics.hpp"
#include "hollm/prompts.hpp"
#include "hollm/trajectory_io.hpp"
#include "hollm/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hollm;

namespace {

struct RunCliOptions {
    std::string benchmark;
    std::string method = "hollm";
    std::string variant = "ucbv";
    std::string generator = "uniform";
    std::string volume_source = "cell";
    std::string out_dir = "out";
    double noise_sigma = 0.0;
    RunConfig run;
    LlmSettings llm;
    std::string prompt_mode = "two_prompt";
};

void add_llm_flags(CLI::App* cmd, LlmSettings& llm, std::string& prompt_mode) {
    cmd->add_option("--endpoint", llm.endpoint.base_url, "OpenAI-compatible base URL");
    cmd->add_option("--model", llm.model, "Model name");
    cmd->add_option("--api-key-env", llm.endpoint.api_key_env,
                    "Environment variable holding the API key");
    cmd->add_option("--temperature", llm.temperature, "Sampling temperature");
    cmd->add_option("--prompt-mode", prompt_mode, "two_prompt or combined");
    cmd->add_option("--nctx", llm.n_ctx, "In-context history cap");
    cmd->add_option("--retries", llm.max_retries, "Re-prompts per region per round");
    cmd->add_option("--prompt-dir", llm.prompt_dir, "Directory overriding prompt templates");
    cmd->add_flag("--offline", llm.offline, "Forbid network; replay fixtures only");
    cmd->add_option("--fixtures", llm.fixtures, "Fixture files for offline replay");
    cmd->add_option("--mock-fixture", llm.mock_fixture, "JSON fixture for the mock generator");
}

int cmd_run(const RunCliOptions& opt) {
    ExperimentConfig config;
    config.benchmark = opt.benchmark;
    MethodSpec method;
    method.method = opt.method;
    method.generator = opt.generator;
    method.variant = scoring_variant_from_string(opt.variant);
    config.methods = {method};
    config.run = opt.run;
    config.run.scoring_variant = method.variant;
    config.run.volume_source = volume_source_from_string(opt.volume_source);
    config.seeds = {opt.run.seed};
    if (opt.noise_sigma > 0.0) config.noise_sigma = opt.noise_sigma;
    config.output_dir = opt.out_dir;
    config.llm = opt.llm;
    config.llm.prompt_mode = opt.prompt_mode == "combined"
                                 ? GeneratorSpec::PromptMode::combined
                                 : GeneratorSpec::PromptMode::two_prompt;

    ExperimentResult result = run_experiment(config);
    const RunStatus& status = result.runs.front();
    if (status.status != "ok") {
        std::cerr << "run failed: " << status.error << "\n";
        return 1;
    }

    auto records = read_trajectory_jsonl(status.trajectory_file);
    double best_internal = records.front().internal_value;
    double best_raw = records.front().raw_value;
    for (const auto& r : records)
        if (r.internal_value > best_internal) {
            best_internal = r.internal_value;
            best_raw = r.raw_value;
        }
    std::cout << "method: " << status.label << "\n"
              << "evaluations: " << records.size() << "\n"
              << "best_internal: " << best_internal << "\n"
              << "best_raw: " << best_raw << "\n"
              << "trajectory: " << status.trajectory_file << "\n";
    return 0;
}

int cmd_compare(const std::string& config_path, const std::string& out_override, int workers) {
    ExperimentConfig config = experiment_config_from_json_file(config_path);
    if (!out_override.empty()) config.output_dir = out_override;
    if (workers > 0) config.workers = workers;
    ExperimentResult result = run_experiment(config);

    int failed = 0;
    for (const auto& run : result.runs) {
        std::cout << run.label << " seed=" << run.seed << " " << run.status;
        if (run.status != "ok") {
            std::cout << " (" << run.error << ")";
            ++failed;
        }
        std::cout << "\n";
    }
    std::cout << "results: " << result.results_csv << "\n"
              << "summary: " << result.summary_csv << "\n"
              << "manifest: " << result.manifest << "\n";
    return failed == 0 ? 0 : 1;
}

int cmd_metrics(const std::vector<std::string>& trajectories, const std::string& out_path,
                int hausdorff_samples, std::uint64_t seed) {
    json report = json::array();
    for (const auto& path : trajectories) {
        auto records = read_trajectory_jsonl(path);
        if (records.empty()) throw std::runtime_error("empty trajectory: " + path);

        std::string meta_path = path;
        if (auto pos = meta_path.rfind(".jsonl"); pos != std::string::npos)
            meta_path = meta_path.substr(0, pos) + ".meta.json";
        TrajectoryMeta meta = read_trajectory_meta(meta_path);

        auto objective = make_objective(meta.benchmark_spec);
        const auto& space = objective->space();

        json entry;
        entry["trajectory"] = path;
        entry["method"] = meta.method;
        entry["benchmark"] = meta.benchmark_spec;

        std::vector<double> best;
        std::vector<double> values;
        for (const auto& r : records) {
            best.push_back(r.best_internal);
            values.push_back(r.internal_value);
        }
        entry["best_internal"] = best;
        if (auto f_star = objective->known_optimum()) {
            entry["simple_regret"] = simple_regret(best, *f_star);
            entry["cumulative_regret"] = cumulative_regret(values, *f_star);
        }

        // per-round proposal divergence from the points the round could see
        json divergence = json::array();
        int max_round = 0;
        for (const auto& r : records) max_round = std::max(max_round, r.round);
        for (int round = 1; round <= max_round; ++round) {
            std::vector<Point> proposals, context;
            for (const auto& r : records) {
                if (r.round == round)
                    proposals.push_back(r.point);
                else if (r.round < round)
                    context.push_back(r.point);
            }
            if (proposals.empty() || context.empty()) continue;
            divergence.push_back(
                {{"round", round}, {"icl_divergence", icl_divergence(proposals, context)}});
        }
        entry["icl_divergence"] = divergence;

        // coverage of the evaluated set, rescaled to the unit cube
        std::vector<Point> unit_points;
        for (const auto& r : records) {
            Point u(r.point.size());
            for (std::size_t j = 0; j < r.point.size(); ++j)
                u[j] = (r.point[j] - space.lower[j]) / (space.upper[j] - space.lower[j]);
            unit_points.push_back(std::move(u));
        }
        entry["hausdorff_coverage"] = hausdorff_coverage(unit_points, hausdorff_samples, seed);
        entry["hausdorff_samples"] = hausdorff_samples;
        entry["hausdorff_note"] = "probe-based lower bound on the true supremum";

        report.push_back(std::move(entry));
    }

    if (out_path.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        out << report.dump(2) << "\n";
        std::cout << "metrics: " << out_path << "\n";
    }
    return 0;
}

int cmd_prompt_preview(const std::string& benchmark, const std::string& mode, int n, int k,
                       std::uint64_t seed, int n_ctx, const std::string& prompt_dir) {
    auto objective = make_objective(benchmark);
    History history(objective->space());
    Rng rng = derive_rng(seed, "init", 0);
    for (auto& p : init_random(objective->space(), n, rng)) {
        double v = objective->evaluate(p);
        history.append(std::move(p), v);
    }
    Region whole = Region::of(objective->space());
    PromptTemplates templates =
        prompt_dir.empty() ? PromptTemplates::defaults() : PromptTemplates::load_dir(prompt_dir);

    if (mode == "generation") {
        std::cout << build_generation_prompt(history, whole, k, n_ctx, templates);
    } else if (mode == "combined") {
        std::cout << build_combined_prompt(history, whole, k, n_ctx, templates);
    } else if (mode == "prediction") {
        Rng crng = derive_rng(seed, "generate", 1, 0);
        std::vector<Point> candidates = init_random(objective->space(), k, crng);
        std::cout << build_prediction_prompt(history, candidates, n_ctx, templates);
    } else {
        std::cerr << "unknown mode: " << mode << " (use generation|prediction|combined)\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"HOLLM: space-partitioned black-box optimization with pluggable "
                 "LLM candidate generation"};
    app.set_version_flag("--version", HOLLM_VERSION);
    app.require_subcommand(1);

    RunCliOptions run_opt;
    auto* run_cmd = app.add_subcommand("run", "Run a single method on a benchmark");
    run_cmd->add_option("--benchmark,-B", run_opt.benchmark, "Benchmark spec, e.g. levy:d=10")
        ->required();
    run_cmd->add_option("--method", run_opt.method, "hollm | global_llm | rs | rs_kdtree");
    run_cmd->add_option("--variant", run_opt.variant,
                        "ucbv | ucb1 | exploit_only | explore_only | uniform");
    run_cmd->add_option("--generator", run_opt.generator, "uniform | llm | mock");
    run_cmd->add_option("--seed", run_opt.run.seed, "Root RNG seed");
    run_cmd->add_option("--budget,-T", run_opt.run.T, "Total evaluation budget");
    run_cmd->add_option("--n0", run_opt.run.n0, "Initial random evaluations");
    run_cmd->add_option("--batch,-b", run_opt.run.b, "Evaluations per round");
    run_cmd->add_option("--regions,-M", run_opt.run.M, "Regions selected per round");
    run_cmd->add_option("--proposals,-k", run_opt.run.k, "Proposals per region");
    run_cmd->add_option("--m0", run_opt.run.m0, "Initial max leaf size (0 = ceil(d/2))");
    run_cmd->add_option("--lambda", run_opt.run.lambda, "Leaf-size growth rate");
    run_cmd->add_option("--alpha-max", run_opt.run.alpha_max, "Initial exploration weight");
    run_cmd->add_option("--alpha-min", run_opt.run.alpha_min, "Final exploration weight");
    run_cmd->add_option("--beta1", run_opt.run.beta1, "Volume mixture weight");
    run_cmd->add_option("--beta2", run_opt.run.beta2, "UCB-V mixture weight");
    run_cmd->add_option("--c", run_opt.run.c, "UCB-V correction constant");
    run_cmd->add_option("--epsilon", run_opt.run.epsilon, "Positivity offset");
    run_cmd->add_option("--sigma0-sq", run_opt.run.sigma0_sq,
                        "Default variance for single-point cells");
    run_cmd->add_option("--volume-source", run_opt.volume_source, "cell | point_bbox");
    run_cmd->add_option("--noise-sigma", run_opt.noise_sigma,
                        "Gaussian observation-noise standard deviation");
    run_cmd->add_option("--out", run_opt.out_dir, "Output directory");
    add_llm_flags(run_cmd, run_opt.llm, run_opt.prompt_mode);

    std::string compare_config, compare_out;
    int compare_workers = 0;
    auto* compare_cmd = app.add_subcommand("compare", "Run an experiment config file");
    compare_cmd->add_option("--config", compare_config, "ExperimentConfig JSON file")->required();
    compare_cmd->add_option("--out", compare_out, "Override output directory");
    compare_cmd->add_option("--workers", compare_workers, "Worker pool size");

    std::vector<std::string> metric_paths;
    std::string metrics_out;
    int hausdorff_samples = 1 << 16;
    std::uint64_t metrics_seed = 0;
    auto* metrics_cmd = app.add_subcommand("metrics", "Post-hoc analysis of trajectory files");
    metrics_cmd->add_option("--trajectory", metric_paths, "Trajectory JSONL file(s)")->required();
    metrics_cmd->add_option("--out", metrics_out, "Write report JSON here (default stdout)");
    metrics_cmd->add_option("--hausdorff-samples", hausdorff_samples, "Probe count");
    metrics_cmd->add_option("--seed", metrics_seed, "Probe shift seed");

    std::string pv_benchmark, pv_mode = "generation", pv_prompt_dir;
    int pv_n = 5, pv_k = 5, pv_nctx = 100;
    std::uint64_t pv_seed = 42;
    auto* preview_cmd =
        app.add_subcommand("prompt-preview", "Render prompts without calling any endpoint");
    preview_cmd->add_option("--benchmark,-B", pv_benchmark, "Benchmark spec")->required();
    preview_cmd->add_option("--mode", pv_mode, "generation | prediction | combined");
    preview_cmd->add_option("--n", pv_n, "Synthetic history size");
    preview_cmd->add_option("--k", pv_k, "Candidate count");
    preview_cmd->add_option("--seed", pv_seed, "History seed");
    preview_cmd->add_option("--nctx", pv_nctx, "In-context history cap");
    preview_cmd->add_option("--prompt-dir", pv_prompt_dir, "Directory overriding templates");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return cmd_run(run_opt);
        if (compare_cmd->parsed()) return cmd_compare(compare_config, compare_out, compare_workers);
        if (metrics_cmd->parsed())
            return cmd_metrics(metric_paths, metrics_out, hausdorff_samples, metrics_seed);
        if (preview_cmd->parsed())
            return cmd_prompt_preview(pv_benchmark, pv_mode, pv_n, pv_k, pv_seed, pv_nctx,
                                      pv_prompt_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
