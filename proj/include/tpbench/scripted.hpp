#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "tpbench/backend.hpp"

namespace tpbench {

// Replays canned responses keyed by prompt text. Used for byte-determinism
// tests and for re-running experiments from a recorded transcript without
// touching any real model.
class ScriptedBackend : public Backend {
public:
    ScriptedBackend() = default;

    // Loads every entry of a recorded transcript as a scripted reply.
    static ScriptedBackend from_transcript(const std::string& path);

    // Registers a reply; usage is word-counted unless given explicitly.
    void add(const std::string& prompt, const std::string& text);
    void add(const std::string& prompt, const std::string& text, long long prompt_tokens,
             long long completion_tokens);

    size_t size() const { return replies_.size(); }

    // Unknown prompt throws BackendRejected: a scripted run must never
    // improvise.
    ChatResponse complete(const ChatRequest& request) override;

private:
    struct Reply {
        std::string prompt;  // kept to reject hash collisions
        std::string text;
        long long prompt_tokens = 0;
        long long completion_tokens = 0;
    };
    std::map<uint64_t, Reply> replies_;
};

}  // namespace tpbench
