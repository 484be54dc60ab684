#include "tpbench/http_backend.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <thread>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <json.hpp>

#include "tpbench/errors.hpp"

namespace tpbench {

namespace {

std::string body_excerpt(const std::string& body) {
    constexpr size_t kLimit = 200;
    if (body.size() <= kLimit) return body;
    return body.substr(0, kLimit) + "...";
}

bool retryable_status(int status) { return status == 429 || (status >= 500 && status < 600); }

}  // namespace

HttpBackend::HttpBackend(HttpBackendConfig config)
    : config_(std::move(config)), jitter_rng_(std::chrono::steady_clock::now().time_since_epoch().count()) {
    if (!config_.api_key_env.empty()) {
        const char* key = std::getenv(config_.api_key_env.c_str());
        if (key == nullptr || *key == '\0')
            throw BackendError("environment variable " + config_.api_key_env +
                               " is not set; credentials are read from the environment only");
        api_key_ = key;
    }
}

void HttpBackend::acquire_slot() {
    std::unique_lock lock(slot_mutex_);
    slot_free_.wait(lock, [&] { return in_flight_ < config_.max_concurrency; });
    ++in_flight_;
}

void HttpBackend::release_slot() {
    {
        std::lock_guard lock(slot_mutex_);
        --in_flight_;
    }
    slot_free_.notify_one();
}

ChatResponse HttpBackend::complete(const ChatRequest& request) {
    nlohmann::json payload{
        {"model", request.model_id.empty() ? config_.model_id : request.model_id},
        {"messages", nlohmann::json::array({{{"role", "user"}, {"content", request.prompt}}})},
        {"temperature", request.temperature},
        {"max_tokens", request.max_tokens},
    };
    const std::string body = payload.dump();

    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

    acquire_slot();
    struct SlotGuard {
        HttpBackend* backend;
        ~SlotGuard() { backend->release_slot(); }
    } guard{this};

    std::string last_failure = "no attempt made";
    for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
        if (attempt > 0) {
            double jitter;
            {
                std::lock_guard lock(rng_mutex_);
                jitter = jitter_rng_.uniform_real01();
            }
            double delay =
                config_.base_delay_s * std::pow(config_.backoff_factor, attempt - 1) * jitter;
            std::this_thread::sleep_for(std::chrono::duration<double>(delay));
        }

        httplib::Client client(config_.base_url);
        client.set_connection_timeout(config_.timeout_s);
        client.set_read_timeout(config_.timeout_s);
        client.set_write_timeout(config_.timeout_s);

        auto started = std::chrono::steady_clock::now();
        httplib::Result result = client.Post(config_.path, headers, body, "application/json");
        auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - started)
                           .count();

        if (!result) {
            last_failure = "transport error: " + httplib::to_string(result.error());
            continue;
        }
        if (retryable_status(result->status)) {
            last_failure = "status " + std::to_string(result->status) + ": " +
                           body_excerpt(result->body);
            continue;
        }
        if (result->status < 200 || result->status >= 300)
            throw BackendRejected("status " + std::to_string(result->status) + ": " +
                                  body_excerpt(result->body));

        nlohmann::json reply = nlohmann::json::parse(result->body, nullptr, false);
        if (reply.is_discarded() || !reply.contains("choices") || reply["choices"].empty())
            throw BackendRejected("malformed completion response: " + body_excerpt(result->body));

        ChatResponse response;
        response.text = reply["choices"][0].value("message", nlohmann::json::object())
                            .value("content", std::string{});
        if (reply.contains("usage")) {
            response.prompt_tokens = reply["usage"].value("prompt_tokens", 0LL);
            response.completion_tokens = reply["usage"].value("completion_tokens", 0LL);
        } else {
            response.prompt_tokens = count_words(request.prompt);
            response.completion_tokens = count_words(response.text);
        }
        response.latency_ms = elapsed;
        return response;
    }
    throw BackendUnavailable("retries exhausted for " + request.request_tag + "; last failure: " +
                             last_failure);
}

}  // namespace tpbench
