#include "hollm/prompts.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hollm {

namespace {

const char* kGenerationTemplate =
    R"(# Optimization task

## Problem Description
You are tasked with solving an optimization problem that requires finding optimal solutions.

- **Evaluation**: Candidates are measured by $metrics

## Constraints
The allowable ranges for the variables are:
$region_constraints

## Previously Evaluated Points
Below are examples of points that have been evaluated, showing their coordinates and performance metrics:

$Region_ICL_examples

## Your Task
Generate $target_number_of_candidates new candidate points that:
1. Are likely to achieve higher $metrics than the examples
2. Are different from all previously evaluated points
3. Satisfy all the specified constraints:
$region_constraints

When the region has negative constraints, make sure to take this into account when proposing a candidate value.
Before providing the final output, you MUST perform a check to ensure every single coordinate in your proposed points strictly adheres to the constraints specified.
Any point with a coordinate outside its valid range is incorrect and will be rejected.

## Output Format
Each candidate has to follow this format:

$candidate_sampler_response_format

Provide your response in a JSON list containing each proposed candidate.
Return only the required JSON list output without additional text.
)";

const char* kPredictionTemplate =
    R"(# Configuration Performance Prediction

## Problem Description
You are tasked with predicting the performance of candidate points.

- **Evaluation Metric**: $metrics (to be predicted)

## Reference Points with Known Performance
Below are examples of points that have been evaluated, showing their coordinates and performance metrics:

$Region_ICL_examples

## Candidate Points to Evaluate
You must predict performance for these new configurations:

$target_architectures

## Your Task
1. Predict the $metrics value for each candidate configuration
2. Base your predictions on patterns in the reference examples

## Output Format
Each evaluation has to follow this format:

$surrogate_model_response_format

Provide your response in a JSON list containing each predicted evaluation.
Return only the required JSON list output without additional text.
)";

const char* kCombinedTemplate =
    R"(Suggest $target_number_of_candidates new candidate point(s) for maximizing a blackbox function in a $dims-dimensional search space.

Below are some examples of previously evaluated points with their corresponding function values:
$Region_ICL_examples

The search space is defined by the following bounding boxes:
$region_constraints

Based on the examples above, suggest candidate points that balance exploration (sampling new regions) with exploitation (focusing on promising areas where function values are good). Each candidate point must lie within the specified bounding boxes. In addition, predict an estimated function value for each candidate.

Return the suggestions in the following JSON format exactly, without any additional text:
$candidate_sampler_response_format
)";

std::string point_json(const Point& p, const double* value) {
    std::string out = "{";
    for (std::size_t j = 0; j < p.size(); ++j) {
        out += "\"x" + std::to_string(j + 1) + "\": " + format_coord(p[j]);
        if (j + 1 < p.size() || value != nullptr) out += ", ";
    }
    if (value != nullptr) out += "\"value\": " + format_coord(*value);
    out += "}";
    return out;
}

/// Most recent n_ctx evaluation indices plus the global best, ascending.
std::vector<int> context_indices(const History& history, int n_ctx) {
    const int t = history.t();
    std::vector<int> idx;
    int first = std::max(1, t - n_ctx + 1);
    for (int i = first; i <= t; ++i) idx.push_back(i);
    if (t > 0) {
        int best = history_best(history).index;
        if (best < first) idx.insert(idx.begin(), best);
    }
    return idx;
}

std::string render_icl_examples(const History& history, int n_ctx) {
    std::string out;
    for (int i : context_indices(history, n_ctx)) {
        const auto& e = history.at(i);
        out += point_json(e.point, &e.value);
        out += "\n";
    }
    if (!out.empty()) out.pop_back();
    return out;
}

std::string range_constraints(const Region& region) {
    std::string out;
    for (int j = 0; j < region.dims(); ++j) {
        out += "x" + std::to_string(j + 1) + ": range(float([" + format_coord(region.lower[j]) +
               ", " + format_coord(region.upper[j]) + "]))";
        if (j + 1 < region.dims()) out += "\n";
    }
    return out;
}

std::string bounding_box_constraints(const Region& region) {
    std::string out;
    for (int j = 0; j < region.dims(); ++j) {
        std::string dim = "x" + std::to_string(j + 1);
        out += "   " + dim + "_min: " + format_coord(region.lower[j]) + ", " + dim +
               "_max: " + format_coord(region.upper[j]);
        if (j + 1 < region.dims()) out += "\n";
    }
    return out;
}

std::string point_schema(int d, bool with_value) {
    std::string out = "{";
    for (int j = 0; j < d; ++j) {
        out += "\"x" + std::to_string(j + 1) + "\": float";
        if (j + 1 < d || with_value) out += ", ";
    }
    if (with_value) out += "\"value\": float";
    out += "}";
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read prompt template: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

const PromptTemplates& PromptTemplates::defaults() {
    static const PromptTemplates tpl{kGenerationTemplate, kPredictionTemplate,
                                     kCombinedTemplate};
    return tpl;
}

PromptTemplates PromptTemplates::load_dir(const std::string& dir) {
    PromptTemplates tpl = defaults();
    auto try_load = [&](const std::string& file, std::string& target) {
        std::ifstream probe(dir + "/" + file);
        if (probe.good()) target = read_file(dir + "/" + file);
    };
    try_load("generation.txt", tpl.generation);
    try_load("prediction.txt", tpl.prediction);
    try_load("combined.txt", tpl.combined);
    return tpl;
}

std::string render_template(const std::string& tpl,
                            const std::map<std::string, std::string>& values) {
    std::string out;
    out.reserve(tpl.size());
    std::size_t i = 0;
    while (i < tpl.size()) {
        if (tpl[i] != '$') {
            out += tpl[i++];
            continue;
        }
        std::size_t j = i + 1;
        while (j < tpl.size() &&
               (std::isalnum(static_cast<unsigned char>(tpl[j])) || tpl[j] == '_'))
            ++j;
        std::string token = tpl.substr(i + 1, j - i - 1);
        auto it = values.find(token);
        if (it != values.end()) {
            out += it->second;
            i = j;
        } else {
            out += tpl[i++];
        }
    }
    return out;
}

std::string format_coord(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string build_generation_prompt(const History& history, const Region& region, int k,
                                    int n_ctx, const PromptTemplates& tpl) {
    std::map<std::string, std::string> values = {
        {"metrics", tpl.metrics_label},
        {"region_constraints", range_constraints(region)},
        {"Region_ICL_examples", render_icl_examples(history, n_ctx)},
        {"target_number_of_candidates", std::to_string(k)},
        {"candidate_sampler_response_format", point_schema(region.dims(), false)},
    };
    return render_template(tpl.generation, values);
}

std::string build_prediction_prompt(const History& history, const std::vector<Point>& candidates,
                                    int n_ctx, const PromptTemplates& tpl) {
    if (candidates.empty())
        throw std::invalid_argument("prediction prompt needs at least one candidate");
    std::string targets;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        targets += std::to_string(i + 1) + ": " + point_json(candidates[i], nullptr);
        if (i + 1 < candidates.size()) targets += "\n";
    }
    std::map<std::string, std::string> values = {
        {"metrics", tpl.metrics_label},
        {"Region_ICL_examples", render_icl_examples(history, n_ctx)},
        {"target_architectures", targets},
        {"surrogate_model_response_format", "{\"value\": float}"},
    };
    return render_template(tpl.prediction, values);
}

std::string build_combined_prompt(const History& history, const Region& region, int k,
                                  int n_ctx, const PromptTemplates& tpl) {
    std::map<std::string, std::string> values = {
        {"dims", std::to_string(region.dims())},
        {"region_constraints", bounding_box_constraints(region)},
        {"Region_ICL_examples", render_icl_examples(history, n_ctx)},
        {"target_number_of_candidates", std::to_string(k)},
        {"candidate_sampler_response_format", "[" + point_schema(region.dims(), true) + "]"},
    };
    return render_template(tpl.combined, values);
}

} // namespace hollm
