#include "tpbench/oracle.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "tpbench/encoding.hpp"
#include "tpbench/errors.hpp"
#include "tpbench/prompt_reader.hpp"
#include "tpbench/prompts.hpp"

namespace tpbench {

std::string suboptimal_strategy_name(SuboptimalStrategy strategy) {
    switch (strategy) {
        case SuboptimalStrategy::GreedyNearest: return "greedy-nearest";
        case SuboptimalStrategy::SecondShortest: return "second-shortest";
    }
    throw std::invalid_argument("unknown suboptimal strategy");
}

SuboptimalStrategy suboptimal_strategy_from_name(const std::string& name) {
    if (name == "greedy-nearest") return SuboptimalStrategy::GreedyNearest;
    if (name == "second-shortest") return SuboptimalStrategy::SecondShortest;
    throw std::invalid_argument("unknown suboptimal strategy: " + name);
}

void GraphRegistry::add(const ShortestPathProblem& problem) {
    // Neighborhood-proposal inputs omit the distance line, so the lookup
    // must succeed on topology alone as well.
    RegisteredProblem entry{problem.instance_id, problem.source, problem.target};
    by_signature_[encode_graph_body(problem.graph, EncodingScheme::Adjacency, true)] = entry;
    by_signature_[encode_graph_body(problem.graph, EncodingScheme::Adjacency, false)] = entry;
}

const RegisteredProblem* GraphRegistry::find(const WeightedGraph& graph) const {
    auto it = by_signature_.find(encode_graph_body(graph, EncodingScheme::Adjacency, true));
    if (it == by_signature_.end())
        it = by_signature_.find(encode_graph_body(graph, EncodingScheme::Adjacency, false));
    return it == by_signature_.end() ? nullptr : &it->second;
}

namespace {

// A wrong-but-plausible reply: a path that names at least one non-edge (or a
// nonexistent node when the graph is complete), with the true distance as
// the claimed length.
std::string invalid_path_reply(const ParsedPrompt& prompt) {
    const WeightedGraph& graph = prompt.graph;
    long long claimed = dijkstra(graph, prompt.source).dist[prompt.target];
    for (int node = 0; node < graph.node_count; ++node) {
        if (node == prompt.source || node == prompt.target) continue;
        if (!graph.edge_distance(prompt.source, node) || !graph.edge_distance(node, prompt.target))
            return render_path_answer({prompt.source, node, prompt.target}, claimed);
    }
    return render_path_answer({prompt.source, graph.node_count, prompt.target}, claimed);
}

// Walks to the unvisited neighbor with the smallest edge distance (ties to
// the smaller index) until the target is reached or no move remains; a stuck
// walk is reported as-is and fails downstream validation.
std::string greedy_nearest_reply(const ParsedPrompt& prompt) {
    const WeightedGraph& graph = prompt.graph;
    std::vector<bool> visited(graph.node_count, false);
    std::vector<int> path{prompt.source};
    visited[prompt.source] = true;
    long long total = 0;
    int current = prompt.source;
    while (current != prompt.target) {
        int best = -1;
        int best_weight = 0;
        for (int node : neighbors(graph, current)) {
            if (visited[node]) continue;
            int weight = *graph.edge_distance(current, node);
            if (best == -1 || weight < best_weight) {
                best = node;
                best_weight = weight;
            }
        }
        if (best == -1) break;
        visited[best] = true;
        path.push_back(best);
        total += best_weight;
        current = best;
    }
    return render_path_answer(path, total);
}

// Cheapest simple path strictly longer than the optimum; falls back to the
// exact answer when every source-target path is optimal.
std::string second_shortest_reply(const ParsedPrompt& prompt) {
    const WeightedGraph& graph = prompt.graph;
    long long optimal = dijkstra(graph, prompt.source).dist[prompt.target];
    std::optional<std::pair<std::vector<int>, long long>> best;
    for_each_simple_path(graph, prompt.source, prompt.target,
                         [&](const std::vector<int>& path, long long length) {
                             if (length <= optimal) return;
                             if (!best || length < best->second) best = {path, length};
                         });
    if (best) return render_path_answer(best->first, best->second);
    auto result = dijkstra(graph, prompt.source);
    return render_path_answer(witness_path(result, prompt.source, prompt.target), optimal);
}

std::string solve_reply(const ParsedPrompt& prompt, const OracleErrorModel& model, Rng& rng) {
    double draw = rng.uniform_real01();
    if (draw < model.p_invalid) return invalid_path_reply(prompt);
    if (draw < model.p_invalid + model.p_suboptimal) {
        if (model.strategy == SuboptimalStrategy::GreedyNearest)
            return greedy_nearest_reply(prompt);
        return second_shortest_reply(prompt);
    }
    auto result = dijkstra(prompt.graph, prompt.source);
    return render_path_answer(witness_path(result, prompt.source, prompt.target),
                              result.dist[prompt.target]);
}

std::string propose_reply(const ParsedPrompt& prompt) {
    if (prompt.input_node < 0 || prompt.input_node >= prompt.graph.node_count)
        throw OracleParseError("neighborhood request for a node outside the graph");
    return render_neighbor_answer(neighbors(prompt.graph, prompt.input_node));
}

std::string aggregate_reply(const ParsedPrompt& prompt) {
    std::vector<Hint> hints;
    for (const ParsedHint& parsed : prompt.hints) {
        Hint hint;
        hint.intermediate = parsed.intermediate;
        hint.length = parsed.claimed_distance;
        bool in_range = true;
        for (long long node : parsed.path) {
            if (node < 0 || node >= prompt.graph.node_count) in_range = false;
        }
        if (!in_range) continue;  // cannot be part of a valid construction
        for (long long node : parsed.path) hint.path.push_back(static_cast<int>(node));
        hints.push_back(std::move(hint));
    }
    auto best = best_hint_extension(prompt.graph, hints, prompt.source, prompt.target);
    if (!best) {
        std::ostringstream out;
        out << "The hints do not lead to a valid path from the source node " << prompt.source
            << " to the target node " << prompt.target << '.';
        return out.str();
    }
    return render_aggregate_answer(prompt.source, prompt.target, best->first, best->second);
}

std::string evaluate_reply(const ParsedPrompt& prompt) {
    if (prompt.solutions.size() != 2)
        throw OracleParseError("candidate-evaluation prompt must list two solutions");
    ShortestPathProblem probe;
    probe.graph = prompt.graph;
    probe.source = prompt.source;
    probe.target = prompt.target;

    struct Judged {
        bool valid = false;
        long long length = 0;
    };
    std::vector<Judged> judged;
    std::ostringstream out;
    for (size_t i = 0; i < prompt.solutions.size(); ++i) {
        PathEvaluation eval = validate_path(probe, prompt.solutions[i].path);
        judged.push_back({eval.feasible, eval.feasible ? *eval.length : 0});
        out << "Solution " << i + 1;
        if (eval.feasible)
            out << " is valid because it can reach the target node and all the edges in Solution "
                << i + 1 << " are real edges in the Edge set. ";
        else
            out << " is invalid because it does not form a path from the source node to the "
                   "target node along real edges in the Edge set. ";
    }

    size_t chosen = 0;
    for (size_t i = 1; i < judged.size(); ++i) {
        if (judged[i].valid && (!judged[chosen].valid || judged[i].length < judged[chosen].length))
            chosen = i;
    }
    size_t other = chosen == 0 ? 1 : 0;
    out << "Solution " << chosen + 1 << " is better than Solution " << other + 1;
    if (!judged[chosen].valid)
        out << " because neither solution is valid.";
    else if (!judged[other].valid)
        out << " because Solution " << other + 1 << " is not valid.";
    else if (judged[chosen].length < judged[other].length)
        out << " because the path in Solution " << chosen + 1 << " is shorter than that in Solution "
            << other + 1 << '.';
    else
        out << " because the path in Solution " << chosen + 1 << " is not longer than that in "
               "Solution " << other + 1 << '.';
    if (judged[chosen].valid) {
        std::vector<int> path;
        for (long long node : prompt.solutions[chosen].path) path.push_back(static_cast<int>(node));
        out << " So the shortest path from the source node " << prompt.source
            << " to the target node " << prompt.target << " is " << render_int_list(path)
            << ". The shortest distance is " << judged[chosen].length << '.';
    }
    return out.str();
}

// The node-evaluation prompt carries no source line, so the exact verdict
// needs the registry: with the problem's source known, the chooser names the
// candidate continuing the optimal path; for unregistered graphs it falls
// back to the smallest remaining distance.
std::string tot_evaluate_reply(const ParsedPrompt& prompt, const GraphRegistry& registry) {
    if (prompt.input_nodes.empty())
        throw OracleParseError("node-evaluation prompt lists no candidates");
    for (int candidate : prompt.input_nodes)
        if (candidate < 0 || candidate >= prompt.graph.node_count)
            throw OracleParseError("node-evaluation candidate outside the graph");
    const RegisteredProblem* known = registry.find(prompt.graph);
    TotChoice choice = choose_promising_node(prompt.graph, prompt.input_nodes,
                                             known ? known->source : -1, prompt.target);
    return render_tot_choice_answer(choice.node, choice.path, choice.distance);
}

}  // namespace

std::string simulate_oracle_reply(const std::string& prompt, const GraphRegistry& registry,
                                  const OracleErrorModel& model, Rng& rng) {
    ParsedPrompt parsed = read_harness_prompt(prompt);
    if (!registry.empty() && !registry.knows(parsed.graph))
        throw OracleParseError("prompt references a graph outside the registry");
    switch (parsed.kind) {
        case PromptKind::Solve: return solve_reply(parsed, model, rng);
        case PromptKind::ProposeNeighbors: return propose_reply(parsed);
        case PromptKind::AggregateHints: return aggregate_reply(parsed);
        case PromptKind::EvaluateCandidates: return evaluate_reply(parsed);
        case PromptKind::TotEvaluate: return tot_evaluate_reply(parsed, registry);
    }
    throw OracleParseError("unrecognized prompt kind");
}

ChatResponse OracleBackend::complete(const ChatRequest& request) {
    // Seeding from the tag keeps replies independent of call interleaving,
    // so threaded runs replay byte-identically.
    Rng rng(seed_ ^ fnv1a64(request.request_tag));
    ChatResponse response;
    response.text = simulate_oracle_reply(request.prompt, registry_, model_, rng);
    response.prompt_tokens = count_words(request.prompt);
    response.completion_tokens = count_words(response.text);
    response.latency_ms = 0;
    return response;
}

}  // namespace tpbench
