#include "tpbench/scripted.hpp"

#include "tpbench/errors.hpp"
#include "tpbench/rng.hpp"

namespace tpbench {

ScriptedBackend ScriptedBackend::from_transcript(const std::string& path) {
    ScriptedBackend backend;
    TranscriptFile transcript = read_transcript(path);
    for (const TranscriptEntry& entry : transcript.entries)
        backend.add(entry.prompt, entry.text, entry.prompt_tokens, entry.completion_tokens);
    return backend;
}

void ScriptedBackend::add(const std::string& prompt, const std::string& text) {
    add(prompt, text, count_words(prompt), count_words(text));
}

void ScriptedBackend::add(const std::string& prompt, const std::string& text,
                          long long prompt_tokens, long long completion_tokens) {
    uint64_t key = fnv1a64(prompt);
    auto it = replies_.find(key);
    if (it != replies_.end() && it->second.prompt != prompt)
        throw BackendError("scripted backend: prompt hash collision");
    replies_[key] = Reply{prompt, text, prompt_tokens, completion_tokens};
}

ChatResponse ScriptedBackend::complete(const ChatRequest& request) {
    auto it = replies_.find(fnv1a64(request.prompt));
    if (it == replies_.end() || it->second.prompt != request.prompt)
        throw BackendRejected("scripted backend has no reply for request " + request.request_tag);
    return ChatResponse{it->second.text, it->second.prompt_tokens, it->second.completion_tokens,
                        0};
}

}  // namespace tpbench
