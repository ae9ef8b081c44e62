// SPDX-License-Identifier: Apache-2.0
#include "svagen/gateway.hpp"

#include "svagen/fnv.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

// keep the heavy httplib include out of the header
#include <httplib.h>

namespace svagen::llm {

using nlohmann::json;
using nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string CompletionRequest::fingerprint() const {
    char temp_buf[32];
    std::snprintf(temp_buf, sizeof(temp_buf), "%.9g", temperature);
    uint64_t h = fnv1a(model_id);
    h = fnv1a("\x1f", h);
    for (const auto& m : messages) {
        h = fnv1a(m.role, h);
        h = fnv1a("\x1e", h);
        h = fnv1a(m.content, h);
        h = fnv1a("\x1f", h);
    }
    h = fnv1a(temp_buf, h);
    return svagen::to_hex(h);
}

// ---------------------------------------------------------------------------
// ScriptedBackend
// ---------------------------------------------------------------------------

ScriptedBackend::ScriptedBackend(std::vector<std::string> responses) {
    for (auto& r : responses)
        queue_.push_back(std::move(r));
}

void ScriptedBackend::push(std::string response) {
    std::lock_guard lock(mutex_);
    queue_.push_back(std::move(response));
}

std::vector<std::string> ScriptedBackend::request_log() const {
    std::lock_guard lock(mutex_);
    return fingerprints_;
}

std::string ScriptedBackend::complete(const CompletionRequest& request) {
    std::string response;
    {
        std::lock_guard lock(mutex_);
        ++in_flight_;
        max_overlap_ = std::max(max_overlap_, in_flight_);
        fingerprints_.push_back(request.fingerprint());
        if (queue_.empty()) {
            --in_flight_;
            throw GatewayError(GatewayError::Kind::ScriptExhausted,
                               "scripted backend has no responses left (request fingerprint " +
                                   request.fingerprint() + ")");
        }
        response = std::move(queue_.front());
        queue_.pop_front();
    }
    if (delay_ms_ > 0)
        std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms_));
    {
        std::lock_guard lock(mutex_);
        --in_flight_;
    }
    return response;
}

// ---------------------------------------------------------------------------
// ReplayBackend
// ---------------------------------------------------------------------------

namespace {

void load_fixture_file(const fs::path& path, std::map<std::string, std::string>& into) {
    std::ifstream in(path);
    if (!in)
        throw GatewayError(GatewayError::Kind::Config,
                           "cannot open fixture file " + path.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        json doc = json::parse(line, nullptr, false);
        if (doc.is_discarded() || !doc.contains("fingerprint") || !doc.contains("response_text"))
            throw GatewayError(GatewayError::Kind::Config,
                               path.string() + ":" + std::to_string(lineno) +
                                   ": fixture lines must be JSON objects with fingerprint and "
                                   "response_text");
        into[doc["fingerprint"].get<std::string>()] = doc["response_text"].get<std::string>();
    }
}

} // namespace

ReplayBackend::ReplayBackend(const std::string& fixture_path) {
    fs::path p(fixture_path);
    if (fs::is_directory(p)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(p))
            if (entry.is_regular_file() && entry.path().extension() == ".jsonl")
                files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files)
            load_fixture_file(f, responses_);
    } else {
        load_fixture_file(p, responses_);
    }
}

std::string ReplayBackend::complete(const CompletionRequest& request) {
    std::string fp = request.fingerprint();
    auto it = responses_.find(fp);
    if (it == responses_.end())
        throw GatewayError(GatewayError::Kind::ReplayMiss,
                           "no recorded response for request fingerprint " + fp, fp);
    return it->second;
}

// ---------------------------------------------------------------------------
// HttpBackend
// ---------------------------------------------------------------------------

HttpBackend::HttpBackend(std::string endpoint_url, std::string api_key_env_var, int retry_limit,
                         int timeout_seconds)
    : endpoint_url_(std::move(endpoint_url)), api_key_env_var_(std::move(api_key_env_var)),
      retry_limit_(retry_limit), timeout_seconds_(timeout_seconds) {}

std::string HttpBackend::complete(const CompletionRequest& request) {
    const char* key = api_key_env_var_.empty() ? nullptr : std::getenv(api_key_env_var_.c_str());
    if (!key)
        throw GatewayError(GatewayError::Kind::Config,
                           "environment variable " + api_key_env_var_ +
                               " is not set; the API key is never read from config files");

    ordered_json body;
    body["model"] = request.model_id;
    body["messages"] = ordered_json::array();
    for (const auto& m : request.messages)
        body["messages"].push_back({{"role", m.role}, {"content", m.content}});
    body["temperature"] = request.temperature;
    body["max_tokens"] = request.max_tokens;
    const std::string payload = body.dump();

    std::string last_error;
    for (int attempt = 0; attempt <= retry_limit_; ++attempt) {
        httplib::Client client(endpoint_url_);
        client.set_connection_timeout(timeout_seconds_, 0);
        client.set_read_timeout(timeout_seconds_, 0);
        httplib::Headers headers = {{"Authorization", std::string("Bearer ") + key}};
        auto res = client.Post("/v1/chat/completions", headers, payload, "application/json");
        if (!res) {
            last_error = "transport error: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status >= 500) { // transient server failure: retry
            last_error = "server returned status " + std::to_string(res->status);
            continue;
        }
        if (res->status != 200)
            throw GatewayError(GatewayError::Kind::Transport,
                               "chat completion failed with status " +
                                   std::to_string(res->status) + ": " + res->body);
        json doc = json::parse(res->body, nullptr, false);
        if (doc.is_discarded() || !doc.contains("choices") || doc["choices"].empty())
            throw GatewayError(GatewayError::Kind::Transport,
                               "malformed completion response: " + res->body);
        return doc["choices"][0]["message"]["content"].get<std::string>();
    }
    throw GatewayError(GatewayError::Kind::Transport,
                       "chat completion failed after " + std::to_string(retry_limit_ + 1) +
                           " attempts: " + last_error);
}

// ---------------------------------------------------------------------------
// Gateway
// ---------------------------------------------------------------------------

Gateway::Gateway(std::unique_ptr<Backend> backend, int max_concurrent_requests,
                 std::string record_path)
    : backend_(std::move(backend)), limit_(std::max(1, max_concurrent_requests)),
      record_path_(std::move(record_path)) {}

std::string Gateway::complete(const CompletionRequest& request) {
    {
        std::unique_lock lock(slots_mutex_);
        slots_cv_.wait(lock, [&] { return in_use_ < limit_; });
        ++in_use_;
    }
    std::string response;
    try {
        response = backend_->complete(request);
    } catch (...) {
        {
            std::lock_guard lock(slots_mutex_);
            --in_use_;
        }
        slots_cv_.notify_one();
        throw;
    }
    {
        std::lock_guard lock(slots_mutex_);
        --in_use_;
    }
    slots_cv_.notify_one();

    if (!record_path_.empty()) {
        std::string summary = request.model_id;
        for (auto it = request.messages.rbegin(); it != request.messages.rend(); ++it) {
            if (it->role == "user") {
                summary += " | " + it->content.substr(0, 80);
                break;
            }
        }
        ordered_json line;
        line["fingerprint"] = request.fingerprint();
        line["request_summary"] = summary;
        line["response_text"] = response;
        std::lock_guard lock(record_mutex_);
        std::ofstream out(record_path_, std::ios::app);
        out << line.dump() << '\n';
    }
    return response;
}

Gateway Gateway::from_config(const ProviderConfig& config) {
    std::unique_ptr<Backend> backend;
    switch (config.backend) {
    case BackendKind::Http:
        backend = std::make_unique<HttpBackend>(config.endpoint_url, config.api_key_env_var,
                                                config.retry_limit, config.timeout_seconds);
        break;
    case BackendKind::Replay:
        backend = std::make_unique<ReplayBackend>(config.fixture_path);
        break;
    case BackendKind::Scripted: {
        std::vector<std::string> responses;
        if (!config.script_path.empty()) {
            std::ifstream in(config.script_path);
            if (!in)
                throw GatewayError(GatewayError::Kind::Config,
                                   "cannot open script file " + config.script_path);
            json doc = json::parse(in, nullptr, false);
            if (doc.is_discarded() || !doc.is_array())
                throw GatewayError(GatewayError::Kind::Config,
                                   config.script_path + ": scripted responses must be a JSON "
                                                        "array of strings");
            for (const auto& item : doc)
                responses.push_back(item.get<std::string>());
        }
        backend = std::make_unique<ScriptedBackend>(std::move(responses));
        break;
    }
    }
    return Gateway(std::move(backend), config.max_concurrent_requests, config.record_path);
}

Gateway Gateway::scripted(std::vector<std::string> responses, int max_concurrent,
                          std::string record_path) {
    return Gateway(std::make_unique<ScriptedBackend>(std::move(responses)), max_concurrent,
                   std::move(record_path));
}

std::string strip_code_fences(const std::string& text) {
    std::size_t begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos)
        return text;
    if (text.compare(begin, 3, "```") != 0)
        return text;
    std::size_t body = text.find('\n', begin);
    if (body == std::string::npos)
        return text;
    ++body;
    std::size_t close = text.rfind("```");
    if (close == std::string::npos || close <= body)
        return text;
    std::size_t tail = text.find_first_not_of(" \t\r\n", close + 3);
    if (tail != std::string::npos)
        return text; // fences somewhere inside, not a plain wrapper
    std::string inner = text.substr(body, close - body);
    while (!inner.empty() && (inner.back() == '\n' || inner.back() == '\r'))
        inner.pop_back();
    return inner;
}

} // namespace svagen::llm
