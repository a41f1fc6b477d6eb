#include "hollm/generation.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>

namespace hollm {

using nlohmann::json;

void GeneratorSpec::validate() const {
    if (max_retries < 0) throw std::invalid_argument("max_retries must be >= 0");
    if (n_ctx < 1) throw std::invalid_argument("n_ctx must be >= 1");
}

std::optional<std::string> find_json_array(const std::string& text) {
    for (std::size_t start = text.find('['); start != std::string::npos;
         start = text.find('[', start + 1)) {
        int depth = 0;
        bool in_string = false, escaped = false;
        for (std::size_t i = start; i < text.size(); ++i) {
            char ch = text[i];
            if (in_string) {
                if (escaped)
                    escaped = false;
                else if (ch == '\\')
                    escaped = true;
                else if (ch == '"')
                    in_string = false;
                continue;
            }
            if (ch == '"') {
                in_string = true;
            } else if (ch == '[' || ch == '{') {
                ++depth;
            } else if (ch == ']' || ch == '}') {
                --depth;
                if (depth == 0) {
                    std::string candidate = text.substr(start, i - start + 1);
                    json parsed = json::parse(candidate, nullptr, false);
                    if (!parsed.is_discarded() && parsed.is_array()) return candidate;
                    break;  // balanced but invalid; try the next '['
                }
            }
        }
    }
    return std::nullopt;
}

std::vector<ParsedCandidate> parse_json_candidates(const std::string& text, int d,
                                                   bool expect_value) {
    auto array_text = find_json_array(text);
    if (!array_text) throw ParseError("unparseable response: no JSON array found");

    json arr = json::parse(*array_text);
    std::vector<ParsedCandidate> out;
    for (const auto& elem : arr) {
        if (!elem.is_object()) continue;
        ParsedCandidate cand;
        cand.point.reserve(static_cast<std::size_t>(d));
        bool ok = true;
        for (int j = 1; j <= d; ++j) {
            std::string key = "x" + std::to_string(j);
            if (!elem.contains(key) || !elem[key].is_number()) {
                ok = false;
                break;
            }
            cand.point.push_back(elem[key].get<double>());
        }
        if (!ok) continue;
        if (elem.contains("value") && elem["value"].is_number())
            cand.predicted = elem["value"].get<double>();
        if (expect_value && !cand.predicted) continue;
        out.push_back(std::move(cand));
    }
    if (out.empty()) throw ParseError("unparseable response: no valid candidate elements");
    return out;
}

std::vector<double> parse_json_predictions(const std::string& text) {
    auto array_text = find_json_array(text);
    if (!array_text) throw ParseError("unparseable response: no JSON array found");

    json arr = json::parse(*array_text);
    std::vector<double> out;
    for (const auto& elem : arr) {
        if (elem.is_number())
            out.push_back(elem.get<double>());
        else if (elem.is_object() && elem.contains("value") && elem["value"].is_number())
            out.push_back(elem["value"].get<double>());
    }
    if (out.empty()) throw ParseError("unparseable response: no predicted values");
    return out;
}

namespace {

bool same_point(const Point& a, const Point& b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin());
}

bool duplicates_history(const Point& p, const History& history) {
    for (const auto& e : history.evaluations())
        if (same_point(p, e.point)) return true;
    return false;
}

Point uniform_in(const Region& region, Rng& rng) {
    Point x(static_cast<std::size_t>(region.dims()));
    for (int j = 0; j < region.dims(); ++j)
        x[static_cast<std::size_t>(j)] = rng.uniform(region.lower[j], region.upper[j]);
    return x;
}

} // namespace

std::vector<ValidatedPoint> validate_and_retry(std::vector<ParsedCandidate> proposals,
                                               const Region& region, const History& history,
                                               int k, int R, Rng& rng,
                                               const RepromptFn& reprompt) {
    std::vector<ValidatedPoint> kept;
    kept.reserve(static_cast<std::size_t>(k));

    auto admit = [&](std::vector<ParsedCandidate>& batch) {
        for (auto& cand : batch) {
            if (static_cast<int>(kept.size()) >= k) break;  // extras are truncated
            if (!region.contains(cand.point)) continue;
            if (duplicates_history(cand.point, history)) continue;
            bool dup = false;
            for (const auto& kp : kept)
                if (same_point(kp.point, cand.point)) {
                    dup = true;
                    break;
                }
            if (dup) continue;
            kept.push_back({std::move(cand.point), cand.predicted, false});
        }
    };

    admit(proposals);
    for (int attempt = 0; attempt < R && static_cast<int>(kept.size()) < k && reprompt;
         ++attempt) {
        auto more = reprompt(k - static_cast<int>(kept.size()));
        admit(more);
    }
    while (static_cast<int>(kept.size()) < k)
        kept.push_back({uniform_in(region, rng), std::nullopt, true});
    return kept;
}

std::vector<CandidateProposal> select_top_b(const std::vector<CandidateProposal>& all_proposals,
                                            int b) {
    if (static_cast<int>(all_proposals.size()) < b)
        throw std::invalid_argument("select_top_b: fewer proposals than b");
    std::vector<std::size_t> order(all_proposals.size());
    std::iota(order.begin(), order.end(), 0);
    // stable on the merged (region_index, generation order) layout, so ties
    // keep that order
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) {
        return all_proposals[a].predicted_value > all_proposals[c].predicted_value;
    });
    std::vector<CandidateProposal> out;
    out.reserve(static_cast<std::size_t>(b));
    for (int i = 0; i < b; ++i) out.push_back(all_proposals[order[static_cast<std::size_t>(i)]]);
    return out;
}

std::vector<CandidateProposal> UniformRandomGenerator::generate(const Region& region,
                                                                const History&, int k, Rng& rng) {
    std::vector<CandidateProposal> out;
    out.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        out.push_back({uniform_in(region, rng), 0.0, -1, "uniform"});
    return out;
}

ScriptedMockGenerator::ScriptedMockGenerator(std::vector<std::pair<Point, double>> fixture)
    : fixture_(std::move(fixture)) {
    if (fixture_.empty()) throw std::invalid_argument("scripted_mock needs a non-empty fixture");
}

std::vector<CandidateProposal> ScriptedMockGenerator::generate(const Region&, const History&,
                                                               int k, Rng&) {
    std::vector<CandidateProposal> out;
    out.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const auto& [point, value] = fixture_[cursor_];
        out.push_back({point, value, -1, "mock"});
        cursor_ = (cursor_ + 1) % fixture_.size();
    }
    return out;
}

LlmGenerator::LlmGenerator(GeneratorSpec spec, std::shared_ptr<ChatClient> client,
                           PromptTemplates templates)
    : spec_(std::move(spec)), client_(std::move(client)), templates_(std::move(templates)) {
    spec_.validate();
    if (!client_) throw std::invalid_argument("llm generator needs a chat client");
}

std::vector<ParsedCandidate> LlmGenerator::ask(const Region& region, const History& history,
                                               int count) {
    const bool combined = spec_.prompt_mode == GeneratorSpec::PromptMode::combined;
    std::string prompt = combined
                             ? build_combined_prompt(history, region, count, spec_.n_ctx, templates_)
                             : build_generation_prompt(history, region, count, spec_.n_ctx, templates_);
    LlmRequest request{spec_.model, {{"user", prompt}}, spec_.temperature, spec_.max_tokens};
    try {
        LlmResponse response = client_->complete(request);
        return parse_json_candidates(response.text, region.dims(), combined);
    } catch (const AuthError&) {
        throw;  // fatal: bad credentials never get better by retrying
    } catch (const ConfigError&) {
        throw;
    } catch (const LlmError&) {
        return {};
    } catch (const ParseError&) {
        return {};
    }
}

std::vector<CandidateProposal> LlmGenerator::generate(const Region& region,
                                                      const History& history, int k, Rng& rng) {
    auto initial = ask(region, history, k);
    auto validated = validate_and_retry(
        std::move(initial), region, history, k, spec_.max_retries, rng,
        [&](int shortfall) { return ask(region, history, shortfall); });

    if (spec_.prompt_mode == GeneratorSpec::PromptMode::two_prompt) {
        std::vector<Point> pending;
        for (const auto& v : validated)
            if (!v.fallback) pending.push_back(v.point);
        if (!pending.empty()) {
            std::vector<double> predictions;
            for (int attempt = 0; attempt <= spec_.max_retries; ++attempt) {
                std::string prompt =
                    build_prediction_prompt(history, pending, spec_.n_ctx, templates_);
                LlmRequest request{spec_.model, {{"user", prompt}}, spec_.temperature,
                                   spec_.max_tokens};
                try {
                    predictions = parse_json_predictions(client_->complete(request).text);
                    break;
                } catch (const AuthError&) {
                    throw;
                } catch (const ConfigError&) {
                    throw;
                } catch (const LlmError&) {
                } catch (const ParseError&) {
                }
            }
            // assign in candidate order; absent predictions default to 0
            std::size_t vi = 0;
            for (auto& v : validated) {
                if (v.fallback) continue;
                v.predicted = vi < predictions.size() ? predictions[vi] : 0.0;
                ++vi;
            }
        }
    }

    std::vector<CandidateProposal> out;
    out.reserve(validated.size());
    for (auto& v : validated)
        out.push_back({std::move(v.point), v.predicted.value_or(0.0), -1,
                       v.fallback ? "fallback" : "llm"});
    return out;
}

std::unique_ptr<CandidateGenerator> make_generator(const GeneratorSpec& spec,
                                                   std::shared_ptr<ChatClient> client,
                                                   PromptTemplates templates) {
    switch (spec.kind) {
        case GeneratorSpec::Kind::uniform_random:
            return std::make_unique<UniformRandomGenerator>();
        case GeneratorSpec::Kind::scripted_mock:
            return std::make_unique<ScriptedMockGenerator>(spec.fixture);
        case GeneratorSpec::Kind::llm:
            return std::make_unique<LlmGenerator>(spec, std::move(client), std::move(templates));
    }
    throw std::invalid_argument("unknown generator kind");
}

} // namespace hollm
