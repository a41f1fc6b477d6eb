#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hollm/benchmarks.hpp"
#include "hollm/experiment.hpp"
#include "hollm/metrics.hpp"
#include "hollm/partition.hpp"
#include "hollm/prompts.hpp"
#include "hollm/scoring.hpp"
#include "hollm/selection.hpp"
#include "hollm/trajectory_io.hpp"
#include "hollm/version.hpp"

namespace py = pybind11;
using namespace hollm;

namespace {

RunConfig config_from_kwargs(int T, int n0, int b, int M, int k, int m0, double lambda,
                             double alpha_max, double alpha_min, double beta1, double beta2,
                             double c, double epsilon, double sigma0_sq, std::uint64_t seed,
                             const std::string& variant, const std::string& volume_source) {
    RunConfig config;
    config.T = T;
    config.n0 = n0;
    config.b = b;
    config.M = M;
    config.k = k;
    config.m0 = m0;
    config.lambda = lambda;
    config.alpha_max = alpha_max;
    config.alpha_min = alpha_min;
    config.beta1 = beta1;
    config.beta2 = beta2;
    config.c = c;
    config.epsilon = epsilon;
    config.sigma0_sq = sigma0_sq;
    config.seed = seed;
    config.scoring_variant = scoring_variant_from_string(variant);
    config.volume_source = volume_source_from_string(volume_source);
    return config;
}

History history_from(const SearchSpace& space, const std::vector<Point>& points,
                     const std::vector<double>& values) {
    if (points.size() != values.size())
        throw std::invalid_argument("points and values must have the same length");
    History history(space);
    for (std::size_t i = 0; i < points.size(); ++i) history.append(points[i], values[i]);
    return history;
}

py::dict trajectory_to_dict(const Trajectory& trajectory) {
    py::list t, points, raw_values, internal_values, best_internal, rounds, regions, tags, alphas;
    for (const auto& r : trajectory.records) {
        t.append(r.t);
        points.append(r.point);
        raw_values.append(r.raw_value);
        internal_values.append(r.internal_value);
        best_internal.append(r.best_internal);
        rounds.append(r.round);
        regions.append(r.region_index);
        tags.append(r.generator_tag);
        alphas.append(r.alpha_t);
    }
    py::dict out;
    out["method"] = trajectory.method;
    out["objective"] = trajectory.objective_name;
    out["t"] = t;
    out["points"] = points;
    out["raw_values"] = raw_values;
    out["internal_values"] = internal_values;
    out["best_internal"] = best_internal;
    out["round"] = rounds;
    out["region_index"] = regions;
    out["generator_tag"] = tags;
    out["alpha_t"] = alphas;
    return out;
}

} // namespace

PYBIND11_MODULE(_hollm, m) {
    m.doc() = "Space-partitioned black-box optimization: KD-tree partitioning, "
              "bandit-style region scoring, stochastic selection, and pluggable "
              "candidate generators.";
    m.attr("__version__") = HOLLM_VERSION;

    m.def("list_benchmarks", [] {
        std::vector<std::string> names;
        for (const auto& def : benchmark_registry()) names.push_back(def.name);
        return names;
    });

    m.def("benchmark_info", [](const std::string& name) {
        const auto& def = benchmark_by_name(name);
        py::dict out;
        out["name"] = def.name;
        out["default_d"] = def.default_d;
        out["fixed_d"] = def.fixed_d;
        out["domain"] = py::make_tuple(def.domain_lo, def.domain_hi);
        out["known_min"] = def.known_min ? py::cast(*def.known_min) : py::none();
        if (def.known_minimizer)
            out["known_minimizer"] = def.known_minimizer(def.default_d);
        else
            out["known_minimizer"] = py::none();
        return out;
    });

    m.def(
        "evaluate_benchmark",
        [](const std::string& spec, const Point& x) {
            auto objective = make_objective(spec);
            return objective->raw_value(objective->evaluate(x));
        },
        py::arg("benchmark"), py::arg("x"),
        "Raw (native-convention) benchmark value at x.");

    // scoring primitives
    m.def("max_leaf_size", &max_leaf_size, py::arg("t"), py::arg("m0"), py::arg("lambda_"));
    m.def("cosine_alpha", &cosine_alpha, py::arg("t"), py::arg("T"), py::arg("alpha_min"),
          py::arg("alpha_max"));
    m.def("ucbv_bonus", &ucbv_bonus, py::arg("sigma_sq"), py::arg("n"), py::arg("t"),
          py::arg("K"), py::arg("c"));
    m.def("ucb1_bonus", &ucb1_bonus, py::arg("n"), py::arg("t"), py::arg("c"));
    m.def("minmax_normalize", &minmax_normalize, py::arg("values"));
    m.def(
        "region_volume",
        [](const std::vector<double>& lower, const std::vector<double>& upper) {
            return region_volume(Region(lower, upper));
        },
        py::arg("lower"), py::arg("upper"));

    m.def(
        "build_partition",
        [](const std::vector<Point>& points, const std::vector<double>& lower,
           const std::vector<double>& upper, int m_t) {
            SearchSpace space(lower, upper);
            History history(space);
            for (const auto& p : points) history.append(p, 0.0);
            Partition partition = build_partition(history, space, m_t);
            py::list leaves;
            for (const auto& leaf : partition.leaves) {
                py::dict entry;
                entry["lower"] = leaf.region.lower;
                entry["upper"] = leaf.region.upper;
                std::vector<int> zero_based;
                for (int i : leaf.indices) zero_based.push_back(i - 1);
                entry["indices"] = zero_based;
                entry["degenerate"] = leaf.degenerate;
                leaves.append(entry);
            }
            return leaves;
        },
        py::arg("points"), py::arg("lower"), py::arg("upper"), py::arg("m_t"),
        "KD-tree leaves over the given points; indices are 0-based positions.");

    m.def(
        "score_partition",
        [](const std::vector<Point>& points, const std::vector<double>& values,
           const std::vector<double>& lower, const std::vector<double>& upper, int m_t,
           double alpha, const std::string& variant, double beta1, double beta2, double c,
           double epsilon, double sigma0_sq) {
            SearchSpace space(lower, upper);
            History history = history_from(space, points, values);
            Partition partition = build_partition(history, space, m_t);
            RunConfig config;
            config.scoring_variant = scoring_variant_from_string(variant);
            config.beta1 = beta1;
            config.beta2 = beta2;
            config.c = c;
            config.epsilon = epsilon;
            config.sigma0_sq = sigma0_sq;
            auto scores = composite_scores(partition.leaves, history, alpha, config);
            py::list out;
            for (std::size_t i = 0; i < scores.size(); ++i) {
                const auto& s = scores[i];
                py::dict entry;
                entry["lower"] = partition.leaves[i].region.lower;
                entry["upper"] = partition.leaves[i].region.upper;
                entry["n"] = partition.leaves[i].n();
                entry["mu"] = s.mu;
                entry["sigma_sq"] = s.sigma_sq;
                entry["V"] = s.V;
                entry["E"] = s.E;
                entry["mu_norm"] = s.mu_norm;
                entry["V_norm"] = s.V_norm;
                entry["E_norm"] = s.E_norm;
                entry["B"] = s.B;
                out.append(entry);
            }
            return out;
        },
        py::arg("points"), py::arg("values"), py::arg("lower"), py::arg("upper"),
        py::arg("m_t"), py::arg("alpha"), py::arg("variant") = "ucbv", py::arg("beta1") = 0.5,
        py::arg("beta2") = 0.5, py::arg("c") = 1.0, py::arg("epsilon") = 1e-6,
        py::arg("sigma0_sq") = 0.01);

    m.def(
        "leaf_probabilities", &leaf_probabilities, py::arg("scores"),
        "Selection probabilities proportional to the composite scores.");

    m.def(
        "sample_without_replacement",
        [](const std::vector<double>& p, int M, std::uint64_t seed) {
            Rng rng(seed);
            return sample_without_replacement(p, M, rng).chosen;
        },
        py::arg("p"), py::arg("M"), py::arg("seed"));

    m.def(
        "run",
        [](const std::string& benchmark, const std::string& method, const std::string& generator,
           int T, int n0, int b, int M, int k, int m0, double lambda, double alpha_max,
           double alpha_min, double beta1, double beta2, double c, double epsilon,
           double sigma0_sq, std::uint64_t seed, const std::string& variant,
           const std::string& volume_source, double noise_sigma) {
            ExperimentConfig config;
            config.benchmark = benchmark;
            MethodSpec spec;
            spec.method = method;
            spec.generator = generator;
            spec.variant = scoring_variant_from_string(variant);
            config.run = config_from_kwargs(T, n0, b, M, k, m0, lambda, alpha_max, alpha_min,
                                            beta1, beta2, c, epsilon, sigma0_sq, seed, variant,
                                            volume_source);
            if (noise_sigma > 0.0) config.noise_sigma = noise_sigma;

            auto objective = make_run_objective(config, seed);
            auto gen = make_run_generator(spec, config.llm, seed);
            Trajectory trajectory = run_method(spec, *objective, config.run, gen.get());
            return trajectory_to_dict(trajectory);
        },
        py::arg("benchmark"), py::arg("method") = "hollm", py::arg("generator") = "uniform",
        py::arg("T") = 50, py::arg("n0") = 5, py::arg("b") = 4, py::arg("M") = 5,
        py::arg("k") = 5, py::arg("m0") = 0, py::arg("lambda_") = 0.0,
        py::arg("alpha_max") = 1.0, py::arg("alpha_min") = 0.01, py::arg("beta1") = 0.5,
        py::arg("beta2") = 0.5, py::arg("c") = 1.0, py::arg("epsilon") = 1e-6,
        py::arg("sigma0_sq") = 0.01, py::arg("seed") = 0, py::arg("variant") = "ucbv",
        py::arg("volume_source") = "cell", py::arg("noise_sigma") = 0.0,
        "Run one optimizer (hollm | global_llm | rs | rs_kdtree) with the uniform "
        "or mock generator and return the trajectory as plain lists.");

    // analysis metrics
    m.def("simple_regret",
          py::overload_cast<const std::vector<double>&, double>(&simple_regret),
          py::arg("best_so_far"), py::arg("f_star"));
    m.def("cumulative_regret",
          py::overload_cast<const std::vector<double>&, double>(&cumulative_regret),
          py::arg("values"), py::arg("f_star"));
    m.def("icl_divergence", &icl_divergence, py::arg("proposals"), py::arg("context"));
    m.def("hausdorff_coverage", &hausdorff_coverage, py::arg("points"),
          py::arg("mc_samples") = (1 << 16), py::arg("seed") = 0);

    m.def(
        "parse_json_candidates",
        [](const std::string& text, int d, bool expect_value) {
            py::list out;
            for (const auto& cand : parse_json_candidates(text, d, expect_value)) {
                py::object predicted =
                    cand.predicted ? py::cast(*cand.predicted) : py::none();
                out.append(py::make_tuple(cand.point, predicted));
            }
            return out;
        },
        py::arg("text"), py::arg("d"), py::arg("expect_value") = false,
        "Extract (point, predicted_value) pairs from free-form model output.");

    m.def(
        "generation_prompt",
        [](const std::vector<Point>& points, const std::vector<double>& values,
           const std::vector<double>& lower, const std::vector<double>& upper,
           const std::vector<double>& region_lower, const std::vector<double>& region_upper,
           int k, int n_ctx) {
            History history = history_from(SearchSpace(lower, upper), points, values);
            return build_generation_prompt(history, Region(region_lower, region_upper), k, n_ctx);
        },
        py::arg("points"), py::arg("values"), py::arg("lower"), py::arg("upper"),
        py::arg("region_lower"), py::arg("region_upper"), py::arg("k") = 5,
        py::arg("n_ctx") = 100);
}
