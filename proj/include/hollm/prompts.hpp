#pragma once

#include <map>
#include <string>
#include <vector>

#include "hollm/core.hpp"

namespace hollm {

/// Text templates with $-placeholders. The built-in defaults can be
/// overridden per file by a directory of generation.txt / prediction.txt /
/// combined.txt.
struct PromptTemplates {
    std::string generation;
    std::string prediction;
    std::string combined;
    std::string metrics_label = "objective value (higher is better)";

    static const PromptTemplates& defaults();
    static PromptTemplates load_dir(const std::string& dir);
};

/// Replaces $name tokens from the map; unknown tokens are left verbatim.
std::string render_template(const std::string& tpl,
                            const std::map<std::string, std::string>& values);

/// Fixed-point rendering used everywhere numbers enter a prompt.
std::string format_coord(double v);

/// Candidate-generation prompt: task description, per-dimension region bounds,
/// the most recent n_ctx history pairs plus the global best, the candidate
/// count, and the JSON output instruction.
std::string build_generation_prompt(const History& history, const Region& region, int k,
                                    int n_ctx, const PromptTemplates& tpl = PromptTemplates::defaults());

/// Performance-prediction prompt for already-generated candidates.
std::string build_prediction_prompt(const History& history, const std::vector<Point>& candidates,
                                    int n_ctx, const PromptTemplates& tpl = PromptTemplates::defaults());

/// Single-call variant asking for candidates and predicted values together.
std::string build_combined_prompt(const History& history, const Region& region, int k,
                                  int n_ctx, const PromptTemplates& tpl = PromptTemplates::defaults());

} // namespace hollm
