#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "tpbench/backend.hpp"
#include "tpbench/graph.hpp"
#include "tpbench/rng.hpp"

namespace tpbench {

enum class SuboptimalStrategy { GreedyNearest, SecondShortest };

std::string suboptimal_strategy_name(SuboptimalStrategy strategy);
SuboptimalStrategy suboptimal_strategy_from_name(const std::string& name);

// Error injection applies to direct-solve replies only; proposal,
// aggregation and evaluation replies are always computed exactly.
struct OracleErrorModel {
    double p_suboptimal = 0.0;
    double p_invalid = 0.0;
    SuboptimalStrategy strategy = SuboptimalStrategy::GreedyNearest;
};

struct RegisteredProblem {
    std::string instance_id;
    int source = 0;
    int target = 0;
};

// Known problems, keyed by canonical graph text. A populated registry makes
// the oracle reject prompts about unknown graphs, which flags test bugs; an
// empty registry answers any well-formed harness prompt. Registration also
// tells the oracle each graph's endpoints, which prompts that carry no
// source line (node evaluation) need for an exact answer.
class GraphRegistry {
public:
    void add(const ShortestPathProblem& problem);
    bool empty() const { return by_signature_.empty(); }
    bool knows(const WeightedGraph& graph) const { return find(graph) != nullptr; }
    const RegisteredProblem* find(const WeightedGraph& graph) const;

private:
    std::map<std::string, RegisteredProblem> by_signature_;
};

// Classifies a harness prompt, recovers the embedded problem and answers in
// the canonical reply format, with error injection drawn from `rng`.
// Throws OracleParseError for prompts this harness could not have produced.
std::string simulate_oracle_reply(const std::string& prompt, const GraphRegistry& registry,
                                  const OracleErrorModel& model, Rng& rng);

// Deterministic simulated model. Error draws are seeded per request from
// (seed, request_tag), so replies do not depend on call interleaving.
class OracleBackend : public Backend {
public:
    explicit OracleBackend(OracleErrorModel model = {}, uint64_t seed = 0)
        : model_(model), seed_(seed) {}

    GraphRegistry& registry() { return registry_; }

    ChatResponse complete(const ChatRequest& request) override;

private:
    OracleErrorModel model_;
    uint64_t seed_ = 0;
    GraphRegistry registry_;
};

}  // namespace tpbench
