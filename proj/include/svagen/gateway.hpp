// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <condition_variable>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace svagen::llm {

struct ChatMessage {
    std::string role; // system | user | assistant
    std::string content;
    bool operator==(const ChatMessage&) const = default;
};

struct CompletionRequest {
    std::string model_id;
    std::vector<ChatMessage> messages;
    double temperature = 0.0;
    int max_tokens = 1024;

    /// Stable across runs and platforms; covers model, messages, temperature.
    std::string fingerprint() const;
};

enum class BackendKind { Http, Replay, Scripted };

struct ProviderConfig {
    BackendKind backend = BackendKind::Replay;
    std::string model_id = "gpt-3.5-turbo";
    // http
    std::string endpoint_url;
    std::string api_key_env_var;
    // replay
    std::string fixture_path; // JSONL file or a directory of *.jsonl
    // scripted (CLI use; tests program the backend directly)
    std::string script_path;
    // recording: append {fingerprint, request_summary, response_text} lines
    std::string record_path;

    int max_concurrent_requests = 4;
    int retry_limit = 2;
    int timeout_seconds = 60;
};

struct GatewayError : std::runtime_error {
    enum class Kind { ReplayMiss, ScriptExhausted, Transport, Config };
    Kind kind;
    std::string fingerprint; // ReplayMiss only

    GatewayError(Kind k, const std::string& what, std::string fp = {})
        : std::runtime_error(what), kind(k), fingerprint(std::move(fp)) {}
};

class Backend {
public:
    virtual ~Backend() = default;
    virtual std::string complete(const CompletionRequest& request) = 0;
};

/// Returns programmed responses in sequence; throws ScriptExhausted when the
/// queue runs dry.  Tracks in-flight overlap so tests can verify the
/// gateway's concurrency bound.
class ScriptedBackend final : public Backend {
public:
    explicit ScriptedBackend(std::vector<std::string> responses = {});
    std::string complete(const CompletionRequest& request) override;

    void push(std::string response);
    void set_delay_ms(int ms) { delay_ms_ = ms; }
    int max_observed_overlap() const { return max_overlap_; }
    std::vector<std::string> request_log() const;

private:
    mutable std::mutex mutex_;
    std::deque<std::string> queue_;
    std::vector<std::string> fingerprints_;
    int delay_ms_ = 0;
    int in_flight_ = 0;
    int max_overlap_ = 0;
};

/// Looks completions up by fingerprint from recorded fixtures.
class ReplayBackend final : public Backend {
public:
    explicit ReplayBackend(const std::string& fixture_path);
    std::string complete(const CompletionRequest& request) override;
    std::size_t size() const { return responses_.size(); }

private:
    std::map<std::string, std::string> responses_;
};

/// OpenAI-compatible chat-completions client over HTTPS/HTTP.
class HttpBackend final : public Backend {
public:
    HttpBackend(std::string endpoint_url, std::string api_key_env_var, int retry_limit,
                int timeout_seconds);
    std::string complete(const CompletionRequest& request) override;

private:
    std::string endpoint_url_;
    std::string api_key_env_var_;
    int retry_limit_;
    int timeout_seconds_;
};

/// The provider boundary: one of the backends above behind an in-flight
/// bound, with optional fixture recording.
class Gateway {
public:
    Gateway(std::unique_ptr<Backend> backend, int max_concurrent_requests,
            std::string record_path = {});

    /// Safe for concurrent callers; at most max_concurrent_requests in flight.
    std::string complete(const CompletionRequest& request);

    static Gateway from_config(const ProviderConfig& config);
    /// Like from_config but keeps a borrowed pointer to a scripted backend so
    /// callers can program it.
    static Gateway scripted(std::vector<std::string> responses, int max_concurrent = 4,
                            std::string record_path = {});

private:
    std::unique_ptr<Backend> backend_;
    int limit_;
    std::mutex slots_mutex_;
    std::condition_variable slots_cv_;
    int in_use_ = 0;

    std::mutex record_mutex_;
    std::string record_path_;
};

/// Strips one fenced ``` block if the whole payload is wrapped in it.
std::string strip_code_fences(const std::string& text);

} // namespace svagen::llm
