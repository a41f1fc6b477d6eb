#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hollm {

struct LlmMessage {
    std::string role;
    std::string content;
};

struct LlmRequest {
    std::string model;
    std::vector<LlmMessage> messages;
    double temperature = 0.7;
    int max_tokens = 4096;
};

struct TokenUsage {
    long long prompt_tokens = 0;
    long long completion_tokens = 0;

    TokenUsage& operator+=(const TokenUsage& o) {
        prompt_tokens += o.prompt_tokens;
        completion_tokens += o.completion_tokens;
        return *this;
    }
};

struct LlmResponse {
    std::string text;
    TokenUsage usage;
    double latency_ms = 0.0;
};

struct LlmError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
/// Bad credentials or missing API key; never retried.
struct AuthError : LlmError {
    using LlmError::LlmError;
};
/// Transient transport failure that survived the retry budget.
struct TransportError : LlmError {
    using LlmError::LlmError;
};
struct ConfigError : LlmError {
    using LlmError::LlmError;
};
struct FixtureError : LlmError {
    using LlmError::LlmError;
};

struct EndpointConfig {
    std::string base_url = "http://localhost:8000";
    std::string path = "/v1/chat/completions";
    std::string api_key_env = "LLM_API_KEY";
    double timeout_s = 60.0;
    int max_transport_retries = 3;
    double backoff_base_ms = 500.0;
    std::uint64_t backoff_seed = 0;
    int max_in_flight = 5;  // parallelism cap when callers share the client
};

/// Raw HTTP POST seam; swapped for a scripted double in tests.
class Transport {
public:
    struct Result {
        int status = 0;
        std::string body;
        bool network_error = false;
        std::string error;
    };

    virtual ~Transport() = default;
    virtual Result post(const std::string& path, const std::string& body,
                        const std::vector<std::pair<std::string, std::string>>& headers) = 0;
};

/// Chat-completion client surface shared by the HTTP and replay backends.
class ChatClient {
public:
    virtual ~ChatClient() = default;
    virtual LlmResponse complete(const LlmRequest& request) = 0;
    virtual TokenUsage total_usage() const = 0;
};

/// OpenAI-compatible chat-completions over HTTP with jittered exponential
/// backoff on 429/5xx/timeouts. The API key is read from the configured
/// environment variable before any network activity.
class HttpChatClient final : public ChatClient {
public:
    explicit HttpChatClient(EndpointConfig config,
                            std::unique_ptr<Transport> transport = nullptr,
                            bool sleep_on_backoff = true);
    ~HttpChatClient() override;

    LlmResponse complete(const LlmRequest& request) override;
    TokenUsage total_usage() const override { return usage_; }

private:
    EndpointConfig config_;
    std::unique_ptr<Transport> transport_;
    TokenUsage usage_;
    std::uint64_t backoff_state_;
    bool sleep_on_backoff_;
};

/// Offline client replaying recorded fixtures in order (cycling by default).
/// Used by every LLM-path test and by --offline runs; performs no network calls.
class ReplayChatClient final : public ChatClient {
public:
    explicit ReplayChatClient(std::vector<std::string> fixture_paths, bool cycle = true);

    LlmResponse complete(const LlmRequest& request) override;
    TokenUsage total_usage() const override { return usage_; }

private:
    std::vector<std::string> responses_;
    std::size_t cursor_ = 0;
    bool cycle_;
    TokenUsage usage_;
};

inline constexpr int kFixtureSchemaVersion = 1;

/// Stores a request/response pair as a replayable JSON fixture.
void record_fixture(const LlmRequest& request, const std::string& response_text,
                    const std::string& path);

struct Fixture {
    LlmRequest request;
    std::string response_text;
};

/// Loads a fixture, validating its schema version.
Fixture load_fixture(const std::string& path);

} // namespace hollm
