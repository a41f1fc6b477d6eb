#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hollm/core.hpp"
#include "hollm/llm_client.hpp"
#include "hollm/prompts.hpp"

namespace hollm {

/// In-bounds candidate with the generator's predicted objective value.
struct CandidateProposal {
    Point point;
    double predicted_value = 0.0;
    int region_index = -1;      // origin leaf; assigned by the optimizer loop
    std::string generator_tag;  // "llm", "uniform", "mock", "fallback", ...
};

struct GeneratorSpec {
    enum class Kind { llm, uniform_random, scripted_mock };
    enum class PromptMode { two_prompt, combined };

    Kind kind = Kind::uniform_random;

    // llm settings
    std::string model = "gemini-2.0-flash";
    double temperature = 0.7;
    int max_retries = 2;  // R: re-prompts per region per round
    int n_ctx = 100;      // in-context history cap (global best always added)
    int max_tokens = 4096;
    PromptMode prompt_mode = PromptMode::two_prompt;

    // scripted_mock fixture, replayed in order (cycling)
    std::vector<std::pair<Point, double>> fixture;

    void validate() const;
};

struct ParsedCandidate {
    Point point;
    std::optional<double> predicted;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Locates the first well-formed JSON array in free-form model output
/// (models wrap arrays in prose or code fences). Returns the array text.
std::optional<std::string> find_json_array(const std::string& text);

/// Extracts candidate points from model output. Elements must provide
/// x1..xd as numbers; "value" is required iff expect_value. Malformed
/// elements are dropped; throws ParseError when nothing valid remains.
std::vector<ParsedCandidate> parse_json_candidates(const std::string& text, int d,
                                                   bool expect_value);

/// Extracts predicted values (objects with "value", or bare numbers) in order.
std::vector<double> parse_json_predictions(const std::string& text);

struct ValidatedPoint {
    Point point;
    std::optional<double> predicted;
    bool fallback = false;  // filled uniformly after retries ran out
};

using RepromptFn = std::function<std::vector<ParsedCandidate>(int shortfall)>;

/// Drops out-of-bounds points and exact duplicates of history (or of points
/// already kept), re-prompts up to R times for any shortfall, and fills the
/// remaining deficit uniformly in the region. Always returns exactly k points.
std::vector<ValidatedPoint> validate_and_retry(std::vector<ParsedCandidate> proposals,
                                               const Region& region, const History& history,
                                               int k, int R, Rng& rng,
                                               const RepromptFn& reprompt = nullptr);

/// b proposals with the highest predicted values; ties keep the
/// (region_index, generation order) of the merged input.
std::vector<CandidateProposal> select_top_b(const std::vector<CandidateProposal>& all_proposals,
                                            int b);

/// Produces exactly k in-bounds proposals for one region.
class CandidateGenerator {
public:
    virtual ~CandidateGenerator() = default;
    virtual std::vector<CandidateProposal> generate(const Region& region, const History& history,
                                                    int k, Rng& rng) = 0;
    virtual TokenUsage usage() const { return {}; }
};

class UniformRandomGenerator final : public CandidateGenerator {
public:
    std::vector<CandidateProposal> generate(const Region& region, const History& history, int k,
                                            Rng& rng) override;
};

/// Replays a fixed proposal sequence; test double.
class ScriptedMockGenerator final : public CandidateGenerator {
public:
    explicit ScriptedMockGenerator(std::vector<std::pair<Point, double>> fixture);
    std::vector<CandidateProposal> generate(const Region& region, const History& history, int k,
                                            Rng& rng) override;

private:
    std::vector<std::pair<Point, double>> fixture_;
    std::size_t cursor_ = 0;
};

/// Prompt -> chat call -> parse -> validate pipeline around a ChatClient.
class LlmGenerator final : public CandidateGenerator {
public:
    LlmGenerator(GeneratorSpec spec, std::shared_ptr<ChatClient> client,
                 PromptTemplates templates = PromptTemplates::defaults());

    std::vector<CandidateProposal> generate(const Region& region, const History& history, int k,
                                            Rng& rng) override;
    TokenUsage usage() const override { return client_->total_usage(); }

private:
    std::vector<ParsedCandidate> ask(const Region& region, const History& history, int count);

    GeneratorSpec spec_;
    std::shared_ptr<ChatClient> client_;
    PromptTemplates templates_;
};

/// Builds the generator named by the spec. The llm kind requires a client.
std::unique_ptr<CandidateGenerator> make_generator(const GeneratorSpec& spec,
                                                   std::shared_ptr<ChatClient> client = nullptr,
                                                   PromptTemplates templates = PromptTemplates::defaults());

} // namespace hollm
