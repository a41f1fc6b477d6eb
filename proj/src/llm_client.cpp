#include "hollm/llm_client.hpp"

#ifdef HOLLM_HTTPS
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "hollm/rng.hpp"

namespace hollm {

using nlohmann::json;

namespace {

class HttplibTransport final : public Transport {
public:
    HttplibTransport(std::string base_url, double timeout_s)
        : client_(base_url.c_str()) {
        auto secs = static_cast<time_t>(timeout_s);
        auto usecs = static_cast<time_t>((timeout_s - static_cast<double>(secs)) * 1e6);
        client_.set_connection_timeout(secs, usecs);
        client_.set_read_timeout(secs, usecs);
        client_.set_write_timeout(secs, usecs);
    }

    Result post(const std::string& path, const std::string& body,
                const std::vector<std::pair<std::string, std::string>>& headers) override {
        httplib::Headers h;
        for (const auto& [k, v] : headers) h.emplace(k, v);
        auto res = client_.Post(path.c_str(), h, body, "application/json");
        if (!res)
            return {0, "", true, httplib::to_string(res.error())};
        return {res->status, res->body, false, ""};
    }

private:
    httplib::Client client_;
};

bool retryable(const Transport::Result& r) {
    return r.network_error || r.status == 429 || (r.status >= 500 && r.status < 600);
}

} // namespace

HttpChatClient::HttpChatClient(EndpointConfig config, std::unique_ptr<Transport> transport,
                               bool sleep_on_backoff)
    : config_(std::move(config)),
      transport_(std::move(transport)),
      backoff_state_(config_.backoff_seed),
      sleep_on_backoff_(sleep_on_backoff) {
    if (!transport_)
        transport_ = std::make_unique<HttplibTransport>(config_.base_url, config_.timeout_s);
}

HttpChatClient::~HttpChatClient() = default;

LlmResponse HttpChatClient::complete(const LlmRequest& request) {
    const char* key = std::getenv(config_.api_key_env.c_str());
    if (key == nullptr || *key == '\0')
        throw ConfigError("API key environment variable " + config_.api_key_env + " is not set");

    json body;
    body["model"] = request.model;
    body["messages"] = json::array();
    for (const auto& m : request.messages)
        body["messages"].push_back({{"role", m.role}, {"content", m.content}});
    body["temperature"] = request.temperature;
    body["max_tokens"] = request.max_tokens;
    const std::string payload = body.dump();

    const std::vector<std::pair<std::string, std::string>> headers = {
        {"Authorization", std::string("Bearer ") + key},
    };

    Rng jitter(backoff_state_);
    Transport::Result result;
    for (int attempt = 0;; ++attempt) {
        auto start = std::chrono::steady_clock::now();
        result = transport_->post(config_.path, payload, headers);
        auto elapsed = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();

        if (result.status == 401 || result.status == 403)
            throw AuthError("authentication failed (HTTP " + std::to_string(result.status) + ")");

        if (retryable(result)) {
            if (attempt >= config_.max_transport_retries)
                throw TransportError("transport retries exhausted: " +
                                     (result.network_error
                                          ? result.error
                                          : "HTTP " + std::to_string(result.status)));
            double delay = config_.backoff_base_ms * std::pow(2.0, attempt) *
                           (0.5 + jitter.uniform01());
            if (sleep_on_backoff_ && delay > 0.0)
                std::this_thread::sleep_for(std::chrono::duration<double, std::milli>(delay));
            continue;
        }

        if (result.status != 200)
            throw LlmError("HTTP " + std::to_string(result.status) + ": " + result.body);

        json parsed = json::parse(result.body, nullptr, false);
        if (parsed.is_discarded())
            throw LlmError("non-JSON HTTP body");
        if (!parsed.contains("choices") || parsed["choices"].empty() ||
            !parsed["choices"][0].contains("message"))
            throw LlmError("malformed chat-completions response");

        LlmResponse response;
        response.text = parsed["choices"][0]["message"].value("content", "");
        response.latency_ms = elapsed;
        if (parsed.contains("usage")) {
            response.usage.prompt_tokens = parsed["usage"].value("prompt_tokens", 0LL);
            response.usage.completion_tokens = parsed["usage"].value("completion_tokens", 0LL);
        }
        usage_ += response.usage;
        backoff_state_ = jitter.next_u64();
        return response;
    }
}

ReplayChatClient::ReplayChatClient(std::vector<std::string> fixture_paths, bool cycle)
    : cycle_(cycle) {
    if (fixture_paths.empty()) throw FixtureError("no fixture paths given");
    responses_.reserve(fixture_paths.size());
    for (const auto& p : fixture_paths) responses_.push_back(load_fixture(p).response_text);
}

LlmResponse ReplayChatClient::complete(const LlmRequest&) {
    if (cursor_ >= responses_.size()) {
        if (!cycle_) throw FixtureError("replay fixtures exhausted");
        cursor_ = 0;
    }
    LlmResponse response;
    response.text = responses_[cursor_++];
    return response;
}

void record_fixture(const LlmRequest& request, const std::string& response_text,
                    const std::string& path) {
    json j;
    j["schema_version"] = kFixtureSchemaVersion;
    j["request"]["model"] = request.model;
    j["request"]["temperature"] = request.temperature;
    j["request"]["max_tokens"] = request.max_tokens;
    j["request"]["messages"] = json::array();
    for (const auto& m : request.messages)
        j["request"]["messages"].push_back({{"role", m.role}, {"content", m.content}});
    j["response_text"] = response_text;

    std::ofstream out(path);
    if (!out) throw FixtureError("cannot write fixture: " + path);
    out << j.dump(2) << "\n";
}

Fixture load_fixture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FixtureError("cannot read fixture: " + path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw FixtureError("fixture is not valid JSON: " + path);
    if (j.value("schema_version", -1) != kFixtureSchemaVersion)
        throw FixtureError("fixture schema version mismatch: " + path);

    Fixture f;
    f.response_text = j.at("response_text").get<std::string>();
    if (j.contains("request")) {
        const auto& r = j["request"];
        f.request.model = r.value("model", "");
        f.request.temperature = r.value("temperature", 0.7);
        f.request.max_tokens = r.value("max_tokens", 4096);
        if (r.contains("messages"))
            for (const auto& m : r["messages"])
                f.request.messages.push_back({m.value("role", "user"), m.value("content", "")});
    }
    return f;
}

} // namespace hollm
