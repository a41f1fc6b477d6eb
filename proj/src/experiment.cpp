#include "hollm/experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <mutex>

#include "hollm/benchmarks.hpp"
#include "hollm/metrics.hpp"
#include "hollm/trajectory_io.hpp"
#include "hollm/version.hpp"

namespace hollm {

using nlohmann::json;
namespace fs = std::filesystem;

std::string MethodSpec::label() const {
    std::string out = method;
    if (variant != ScoringVariant::ucbv && (method == "hollm" || method == "rs_kdtree"))
        out += "-" + to_string(variant);
    if ((method == "hollm" || method == "global_llm") && generator != "uniform")
        out += "-" + generator;
    return out;
}

void MethodSpec::validate() const {
    if (method != "hollm" && method != "global_llm" && method != "rs" && method != "rs_kdtree")
        throw std::invalid_argument("unknown method: " + method);
    if (generator != "uniform" && generator != "llm" && generator != "mock")
        throw std::invalid_argument("unknown generator: " + generator);
}

void ExperimentConfig::validate() const {
    if (benchmark.empty()) throw std::invalid_argument("benchmark is required");
    if (methods.empty()) throw std::invalid_argument("at least one method is required");
    if (seeds.empty()) throw std::invalid_argument("at least one seed is required");
    for (const auto& m : methods) m.validate();
    run.validate();
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
}

namespace {

GeneratorSpec::PromptMode prompt_mode_from_string(const std::string& s) {
    if (s == "two_prompt") return GeneratorSpec::PromptMode::two_prompt;
    if (s == "combined") return GeneratorSpec::PromptMode::combined;
    throw std::invalid_argument("unknown prompt mode: " + s);
}

LlmSettings llm_settings_from_json(const json& j) {
    LlmSettings s;
    s.endpoint.base_url = j.value("endpoint", s.endpoint.base_url);
    s.endpoint.path = j.value("path", s.endpoint.path);
    s.endpoint.api_key_env = j.value("api_key_env", s.endpoint.api_key_env);
    s.endpoint.timeout_s = j.value("timeout_s", s.endpoint.timeout_s);
    s.endpoint.max_transport_retries =
        j.value("transport_retries", s.endpoint.max_transport_retries);
    s.model = j.value("model", s.model);
    s.temperature = j.value("temperature", s.temperature);
    s.max_retries = j.value("max_retries", s.max_retries);
    s.n_ctx = j.value("n_ctx", s.n_ctx);
    s.max_tokens = j.value("max_tokens", s.max_tokens);
    if (j.contains("prompt_mode"))
        s.prompt_mode = prompt_mode_from_string(j["prompt_mode"].get<std::string>());
    s.offline = j.value("offline", false);
    if (j.contains("fixtures")) s.fixtures = j["fixtures"].get<std::vector<std::string>>();
    s.prompt_dir = j.value("prompt_dir", "");
    s.mock_fixture = j.value("mock_fixture", "");
    return s;
}

std::vector<std::pair<Point, double>> load_mock_fixture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read mock fixture: " + path);
    json j = json::parse(in);
    std::vector<std::pair<Point, double>> fixture;
    for (const auto& e : j)
        fixture.emplace_back(e.at("point").get<Point>(), e.value("value", 0.0));
    return fixture;
}

std::string g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

ExperimentConfig experiment_config_from_json_text(const std::string& text) {
    json j = json::parse(text);
    ExperimentConfig config;
    config.benchmark = j.at("benchmark").get<std::string>();

    for (const auto& m : j.at("methods")) {
        MethodSpec spec;
        if (m.is_string()) {
            spec.method = m.get<std::string>();
        } else {
            spec.method = m.at("method").get<std::string>();
            spec.generator = m.value("generator", spec.generator);
            if (m.contains("variant"))
                spec.variant = scoring_variant_from_string(m["variant"].get<std::string>());
        }
        config.methods.push_back(std::move(spec));
    }

    if (j.contains("run")) config.run = run_config_from_json(j["run"].dump());
    if (j.contains("seeds")) config.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
    if (j.contains("noise")) {
        const auto& n = j["noise"];
        if (n.is_number()) {
            config.noise_sigma = n.get<double>();
        } else if (n.is_object()) {
            if (n.contains("sigma"))
                config.noise_sigma = n["sigma"].get<double>();
            else if (n.contains("pct") && n.contains("range"))
                config.noise_sigma = n["pct"].get<double>() * n["range"].get<double>();
            else
                throw std::invalid_argument("noise needs sigma, or pct together with range");
        }
    }
    config.output_dir = j.value("output_dir", config.output_dir);
    if (j.contains("llm")) config.llm = llm_settings_from_json(j["llm"]);
    config.workers = j.value("workers", 1);
    config.validate();
    return config;
}

ExperimentConfig experiment_config_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return experiment_config_from_json_text(text);
}

std::unique_ptr<ObjectiveFunction> make_run_objective(const ExperimentConfig& config,
                                                      std::uint64_t seed) {
    auto objective = make_objective(config.benchmark);
    if (config.noise_sigma && *config.noise_sigma > 0.0)
        objective = make_noisy(std::move(objective), *config.noise_sigma,
                               derive_rng(seed, "noise", 0));
    return objective;
}

std::unique_ptr<CandidateGenerator> make_run_generator(const MethodSpec& method,
                                                       const LlmSettings& llm,
                                                       std::uint64_t seed) {
    if (method.method == "rs") return nullptr;
    if (method.method == "rs_kdtree" || method.generator == "uniform")
        return std::make_unique<UniformRandomGenerator>();

    if (method.generator == "mock") {
        if (llm.mock_fixture.empty())
            throw std::invalid_argument("mock generator needs llm.mock_fixture");
        return std::make_unique<ScriptedMockGenerator>(load_mock_fixture(llm.mock_fixture));
    }

    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::llm;
    spec.model = llm.model;
    spec.temperature = llm.temperature;
    spec.max_retries = llm.max_retries;
    spec.n_ctx = llm.n_ctx;
    spec.max_tokens = llm.max_tokens;
    spec.prompt_mode = llm.prompt_mode;

    std::shared_ptr<ChatClient> client;
    if (llm.offline) {
        if (llm.fixtures.empty())
            throw std::invalid_argument("--offline llm runs need fixture files");
        client = std::make_shared<ReplayChatClient>(llm.fixtures);
    } else {
        EndpointConfig endpoint = llm.endpoint;
        endpoint.backoff_seed = seed;
        client = std::make_shared<HttpChatClient>(endpoint);
    }

    PromptTemplates templates = llm.prompt_dir.empty() ? PromptTemplates::defaults()
                                                       : PromptTemplates::load_dir(llm.prompt_dir);
    return std::make_unique<LlmGenerator>(spec, std::move(client), std::move(templates));
}

Trajectory run_method(const MethodSpec& method, ObjectiveFunction& objective,
                      const RunConfig& run, CandidateGenerator* generator,
                      const RecordSink& sink) {
    if (method.method == "rs") return run_random_search(objective, run, sink);

    RunConfig cfg = run;
    cfg.scoring_variant = method.variant;
    if (method.method == "global_llm") {
        if (!generator) throw std::invalid_argument("global_llm needs a generator");
        return run_global_llm(objective, cfg, *generator, sink);
    }
    if (!generator) throw std::invalid_argument(method.method + " needs a generator");
    Trajectory trajectory = run_hollm(objective, cfg, *generator, sink);
    trajectory.method = method.label();
    return trajectory;
}

namespace {

struct RunOutput {
    RunStatus status;
    std::vector<TrajectoryRecord> records;
};

RunOutput execute_run(const ExperimentConfig& config, const MethodSpec& method,
                      std::uint64_t seed) {
    RunOutput out;
    out.status.label = method.label();
    out.status.seed = seed;

    fs::path dir(config.output_dir);
    std::string stem = out.status.label + "_seed" + std::to_string(seed);
    fs::path trajectory_path = dir / (stem + ".jsonl");
    fs::path meta_path = dir / (stem + ".meta.json");
    out.status.trajectory_file = trajectory_path.string();
    out.status.meta_file = meta_path.string();

    try {
        auto objective = make_run_objective(config, seed);
        auto generator = make_run_generator(method, config.llm, seed);

        RunConfig run = config.run;
        run.seed = seed;

        TrajectoryWriter writer(trajectory_path.string());
        Trajectory trajectory =
            run_method(method, *objective, run, generator.get(),
                       [&](const TrajectoryRecord& r) { writer.write(r); });

        TrajectoryMeta meta;
        meta.method = trajectory.method;
        meta.objective_name = trajectory.objective_name;
        meta.benchmark_spec = config.benchmark;
        meta.config = trajectory.config;
        meta.wall_ms = trajectory.wall_ms;
        meta.tokens = trajectory.tokens;
        write_trajectory_meta(meta_path.string(), meta);

        out.status.wall_ms = trajectory.wall_ms;
        out.status.tokens = trajectory.tokens;
        out.records = std::move(trajectory.records);
    } catch (const std::exception& e) {
        out.status.status = "failed";
        out.status.error = e.what();
    }
    return out;
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    fs::create_directories(config.output_dir);

    struct Task {
        MethodSpec method;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    for (const auto& method : config.methods)
        for (std::uint64_t seed : config.seeds) tasks.push_back({method, seed});

    std::vector<RunOutput> outputs(tasks.size());
    if (config.workers <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i)
            outputs[i] = execute_run(config, tasks[i].method, tasks[i].seed);
    } else {
        std::mutex mutex;
        std::size_t next = 0;
        auto worker = [&] {
            for (;;) {
                std::size_t i;
                {
                    std::lock_guard lock(mutex);
                    if (next >= tasks.size()) return;
                    i = next++;
                }
                outputs[i] = execute_run(config, tasks[i].method, tasks[i].seed);
            }
        };
        std::vector<std::future<void>> pool;
        int n_workers = std::min<int>(config.workers, static_cast<int>(tasks.size()));
        for (int w = 0; w < n_workers; ++w)
            pool.push_back(std::async(std::launch::async, worker));
        for (auto& f : pool) f.get();
    }

    std::optional<double> f_star;
    {
        auto objective = make_objective(config.benchmark);
        f_star = objective->known_optimum();
    }

    ExperimentResult result;
    fs::path dir(config.output_dir);
    result.results_csv = (dir / "results.csv").string();
    result.summary_csv = (dir / "summary.csv").string();
    result.manifest = (dir / "manifest.json").string();

    // per-evaluation rows, fixed column set
    std::ofstream results(result.results_csv);
    results << "method,seed,t,best_raw,best_internal,simple_regret,cum_regret\n";
    // best_internal curves grouped by (method label, t) for the aggregates
    std::map<std::string, std::map<int, std::vector<double>>> internal_curves;
    std::map<std::string, std::map<int, std::vector<double>>> raw_curves;

    for (std::size_t i = 0; i < tasks.size(); ++i) {
        result.runs.push_back(outputs[i].status);
        if (outputs[i].status.status != "ok") continue;
        const std::string label = outputs[i].status.label;

        double best_raw = 0.0;
        double cum = 0.0;
        for (const auto& r : outputs[i].records) {
            if (r.t == 1 || r.internal_value >= r.best_internal) best_raw = r.raw_value;
            results << label << "," << tasks[i].seed << "," << r.t << "," << g17(best_raw) << ","
                    << g17(r.best_internal) << ",";
            if (f_star) results << g17(*f_star - r.best_internal);
            results << ",";
            if (f_star) {
                cum += *f_star - r.internal_value;
                results << g17(cum);
            }
            results << "\n";
            internal_curves[label][r.t].push_back(r.best_internal);
            raw_curves[label][r.t].push_back(best_raw);
        }
    }
    results.close();

    std::ofstream summary(result.summary_csv);
    summary << "method,t,n_seeds,mean_best_raw,stderr_best_raw,mean_best_internal,"
               "stderr_best_internal\n";
    auto mean_stderr = [](const std::vector<double>& xs) {
        double mean = 0.0;
        for (double x : xs) mean += x;
        mean /= static_cast<double>(xs.size());
        double se = 0.0;
        if (xs.size() > 1) {
            double ss = 0.0;
            for (double x : xs) ss += (x - mean) * (x - mean);
            se = std::sqrt(ss / static_cast<double>(xs.size() - 1)) /
                 std::sqrt(static_cast<double>(xs.size()));
        }
        return std::pair{mean, se};
    };
    for (const auto& [label, curve] : internal_curves) {
        for (const auto& [t, values] : curve) {
            auto [mi, si] = mean_stderr(values);
            auto [mr, sr] = mean_stderr(raw_curves[label][t]);
            summary << label << "," << t << "," << values.size() << "," << g17(mr) << ","
                    << g17(sr) << "," << g17(mi) << "," << g17(si) << "\n";
        }
    }
    summary.close();

    json manifest;
    manifest["version"] = HOLLM_VERSION;
    manifest["record_schema_version"] = kRecordSchemaVersion;
    manifest["benchmark"] = config.benchmark;
    manifest["run_config"] = json::parse(run_config_to_json(config.run));
    manifest["seeds"] = config.seeds;
    if (config.noise_sigma) manifest["noise_sigma"] = *config.noise_sigma;
    if (f_star) manifest["known_optimum_internal"] = *f_star;
    manifest["runs"] = json::array();
    TokenUsage totals;
    double wall_total = 0.0;
    for (const auto& run : result.runs) {
        manifest["runs"].push_back({{"label", run.label},
                                    {"seed", run.seed},
                                    {"status", run.status},
                                    {"error", run.error},
                                    {"trajectory", run.trajectory_file},
                                    {"meta", run.meta_file},
                                    {"wall_ms", run.wall_ms},
                                    {"prompt_tokens", run.tokens.prompt_tokens},
                                    {"completion_tokens", run.tokens.completion_tokens}});
        totals += run.tokens;
        wall_total += run.wall_ms;
    }
    manifest["total_prompt_tokens"] = totals.prompt_tokens;
    manifest["total_completion_tokens"] = totals.completion_tokens;
    manifest["total_wall_ms"] = wall_total;

    std::ofstream mf(result.manifest);
    mf << manifest.dump(2) << "\n";
    return result;
}

} // namespace hollm
