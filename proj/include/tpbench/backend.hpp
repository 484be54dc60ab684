#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace tpbench {

struct ChatRequest {
    std::string model_id;
    std::string prompt;
    double temperature = 0.0;
    int max_tokens = 1024;
    std::string request_tag;  // instance/method/s<shots>/<encoding>/L<layers>/<step...>
};

struct ChatResponse {
    std::string text;
    long long prompt_tokens = 0;
    long long completion_tokens = 0;
    long long latency_ms = 0;
};

class Backend {
public:
    virtual ~Backend() = default;
    virtual ChatResponse complete(const ChatRequest& request) = 0;
};

// Whitespace-delimited word count; the usage accounting for backends that
// have no tokenizer of their own.
long long count_words(const std::string& text);

struct TranscriptEntry {
    std::string request_tag;
    std::string prompt;
    std::string text;
    long long prompt_tokens = 0;
    long long completion_tokens = 0;
    long long latency_ms = 0;
};

// Append-only JSONL sink, safe for concurrent writers. Each successful call
// is logged exactly once; failed calls never reach the log.
class TranscriptWriter {
public:
    explicit TranscriptWriter(const std::string& path);
    void append(const TranscriptEntry& entry);
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::mutex mutex_;
};

// Decorator that logs every successful completion of the wrapped backend.
class LoggingBackend : public Backend {
public:
    LoggingBackend(Backend& inner, TranscriptWriter& writer) : inner_(inner), writer_(writer) {}
    ChatResponse complete(const ChatRequest& request) override;

private:
    Backend& inner_;
    TranscriptWriter& writer_;
};

struct TranscriptFile {
    std::vector<TranscriptEntry> entries;
    int skipped_lines = 0;  // corrupt lines are skipped with a warning count
};

TranscriptFile read_transcript(const std::string& path);

struct TokenTotals {
    long long prompt_tokens = 0;
    long long completion_tokens = 0;
    long long calls = 0;
};

// (method, shots, layers) extracted from each request tag.
using UsageKey = std::tuple<std::string, int, int>;

struct UsageTotals {
    std::map<UsageKey, TokenTotals> groups;
    int skipped = 0;  // entries whose tag does not follow the tag grammar
};

UsageTotals usage_totals(const TranscriptFile& transcript);

std::string make_request_tag(const std::string& instance_id, const std::string& method,
                             int shots, const std::string& encoding, int layers,
                             const std::string& step);

}  // namespace tpbench
