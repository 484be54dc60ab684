#include "tpbench/backend.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tpbench/errors.hpp"

namespace tpbench {

using ordered_json = nlohmann::ordered_json;

long long count_words(const std::string& text) {
    long long words = 0;
    bool in_word = false;
    for (unsigned char c : text) {
        bool space = std::isspace(c);
        if (!space && !in_word) ++words;
        in_word = !space;
    }
    return words;
}

TranscriptWriter::TranscriptWriter(const std::string& path) : path_(path) {
    std::ofstream out(path_, std::ios::app);
    if (!out) throw IoError("cannot open transcript for writing: " + path_);
}

void TranscriptWriter::append(const TranscriptEntry& entry) {
    ordered_json line;
    line["request_tag"] = entry.request_tag;
    line["prompt"] = entry.prompt;
    line["text"] = entry.text;
    line["prompt_tokens"] = entry.prompt_tokens;
    line["completion_tokens"] = entry.completion_tokens;
    line["latency_ms"] = entry.latency_ms;
    std::lock_guard lock(mutex_);
    std::ofstream out(path_, std::ios::app);
    if (!out) throw IoError("cannot append to transcript: " + path_);
    out << line.dump() << '\n';
}

ChatResponse LoggingBackend::complete(const ChatRequest& request) {
    ChatResponse response = inner_.complete(request);
    writer_.append({request.request_tag, request.prompt, response.text, response.prompt_tokens,
                    response.completion_tokens, response.latency_ms});
    return response;
}

TranscriptFile read_transcript(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open transcript: " + path);
    TranscriptFile file;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            auto j = nlohmann::json::parse(line);
            TranscriptEntry entry;
            entry.request_tag = j.at("request_tag").get<std::string>();
            entry.prompt = j.at("prompt").get<std::string>();
            entry.text = j.at("text").get<std::string>();
            entry.prompt_tokens = j.at("prompt_tokens").get<long long>();
            entry.completion_tokens = j.at("completion_tokens").get<long long>();
            entry.latency_ms = j.at("latency_ms").get<long long>();
            file.entries.push_back(std::move(entry));
        } catch (const nlohmann::json::exception&) {
            ++file.skipped_lines;
        }
    }
    return file;
}

std::string make_request_tag(const std::string& instance_id, const std::string& method,
                             int shots, const std::string& encoding, int layers,
                             const std::string& step) {
    std::ostringstream out;
    out << instance_id << '/' << method << "/s" << shots << '/' << encoding << "/L" << layers
        << '/' << step;
    return out.str();
}

namespace {

std::optional<UsageKey> parse_tag(const std::string& tag) {
    std::vector<std::string> parts;
    std::string piece;
    std::istringstream in(tag);
    while (std::getline(in, piece, '/')) parts.push_back(piece);
    if (parts.size() < 6) return std::nullopt;
    if (parts[2].size() < 2 || parts[2][0] != 's') return std::nullopt;
    if (parts[4].size() < 2 || parts[4][0] != 'L') return std::nullopt;
    try {
        int shots = std::stoi(parts[2].substr(1));
        int layers = std::stoi(parts[4].substr(1));
        return UsageKey{parts[1], shots, layers};
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace

UsageTotals usage_totals(const TranscriptFile& transcript) {
    UsageTotals totals;
    for (const auto& entry : transcript.entries) {
        auto key = parse_tag(entry.request_tag);
        if (!key) {
            ++totals.skipped;
            continue;
        }
        auto& group = totals.groups[*key];
        group.prompt_tokens += entry.prompt_tokens;
        group.completion_tokens += entry.completion_tokens;
        group.calls += 1;
    }
    return totals;
}

}  // namespace tpbench
