#pragma once

#include <string>
#include <vector>

#include "tpbench/graph.hpp"

namespace tpbench {

enum class PromptKind {
    Solve,
    ProposeNeighbors,
    AggregateHints,
    EvaluateCandidates,
    TotEvaluate,
};

struct ParsedHint {
    int intermediate = -1;
    std::vector<long long> path;
    long long claimed_distance = 0;
};

struct ParsedSolution {
    std::vector<long long> path;
    long long claimed_distance = 0;
};

// Structured view of a prompt assembled by this harness, recovered from the
// final Input: section. Also reused by tests to round-trip encodings.
struct ParsedPrompt {
    PromptKind kind = PromptKind::Solve;
    WeightedGraph graph;
    int source = -1;
    int target = -1;
    int input_node = -1;              // ProposeNeighbors
    std::vector<int> input_nodes;     // TotEvaluate
    std::vector<ParsedHint> hints;    // AggregateHints
    std::vector<ParsedSolution> solutions;  // EvaluateCandidates
};

// Throws OracleParseError when the prompt does not carry a recognizable
// harness header or the embedded problem cannot be reconstructed.
ParsedPrompt read_harness_prompt(const std::string& prompt);

// Graph reconstruction from a single encoded body in any scheme; exposed for
// encoder round-trip tests. Throws OracleParseError on malformed input.
WeightedGraph read_graph_body(const std::string& body);

}  // namespace tpbench
