#pragma once

#include <condition_variable>
#include <memory>
#include <mutex>
#include <string>

#include "tpbench/backend.hpp"
#include "tpbench/rng.hpp"

namespace tpbench {

// Credentials come exclusively from the named environment variable; the
// config never carries the key itself.
struct HttpBackendConfig {
    std::string base_url = "https://api.openai.com";  // scheme://host[:port]
    std::string path = "/v1/chat/completions";
    std::string model_id = "gpt-3.5-turbo";  // used when the request leaves model_id empty
    std::string api_key_env = "OPENAI_API_KEY";  // name of the variable; "" -> no auth header
    int max_retries = 5;                         // transient failures tolerated per request
    double base_delay_s = 1.0;                   // exponential backoff with full jitter
    double backoff_factor = 2.0;
    int max_concurrency = 4;
    int timeout_s = 120;
};

// Chat-completion client for any endpoint speaking the common JSON shape
// {model, messages:[{role,user}], temperature, max_tokens} ->
// {choices:[{message:{content}}], usage:{prompt_tokens, completion_tokens}}.
//
// 429 and 5xx statuses and transport failures are retried with backoff;
// other failures raise BackendRejected with the status and a body excerpt.
// Exhausted retries raise BackendUnavailable. In-flight requests are capped
// at max_concurrency.
class HttpBackend : public Backend {
public:
    explicit HttpBackend(HttpBackendConfig config);

    ChatResponse complete(const ChatRequest& request) override;

private:
    void acquire_slot();
    void release_slot();

    HttpBackendConfig config_;
    std::string api_key_;

    std::mutex slot_mutex_;
    std::condition_variable slot_free_;
    int in_flight_ = 0;

    std::mutex rng_mutex_;
    Rng jitter_rng_;
};

}  // namespace tpbench
