#include "tpbench/prompt_reader.hpp"

#include <algorithm>
#include <numeric>
#include <regex>
#include <sstream>

#include "tpbench/errors.hpp"
#include "tpbench/parse.hpp"

namespace tpbench {

namespace {

bool contains(const std::string& text, std::string_view needle) {
    return text.find(needle) != std::string::npos;
}

std::vector<long long> int_list_after(const std::string& text, const std::string& label) {
    auto at = text.find(label);
    if (at == std::string::npos)
        throw OracleParseError("prompt is missing expected field: " + label);
    auto open = text.find('[', at);
    auto close = text.find(']', open);
    if (open == std::string::npos || close == std::string::npos)
        throw OracleParseError("malformed list after: " + label);
    auto lists = extract_flat_int_lists(text.substr(open, close - open + 1));
    if (lists.size() != 1) throw OracleParseError("malformed list after: " + label);
    return lists[0];
}

int int_after(const std::string& text, const std::string& label) {
    auto at = text.find(label);
    if (at == std::string::npos)
        throw OracleParseError("prompt is missing expected field: " + label);
    int value = 0;
    std::istringstream in(text.substr(at + label.size()));
    if (!(in >> value)) throw OracleParseError("malformed integer after: " + label);
    return value;
}

struct RawEdge {
    int u, v, w;
};

WeightedGraph build_graph(int node_count, std::vector<RawEdge> raw) {
    for (auto& e : raw)
        if (e.u > e.v) std::swap(e.u, e.v);
    std::sort(raw.begin(), raw.end(), [](const RawEdge& a, const RawEdge& b) {
        return std::pair(a.u, a.v) < std::pair(b.u, b.v);
    });
    WeightedGraph graph;
    graph.node_count = node_count;
    for (const auto& e : raw) {
        graph.edges.emplace_back(e.u, e.v);
        graph.distances.push_back(e.w);
    }
    try {
        graph.check();
    } catch (const std::invalid_argument& broken) {
        throw OracleParseError(std::string("encoded graph is malformed: ") + broken.what());
    }
    return graph;
}

WeightedGraph read_adjacency(const std::string& body) {
    auto nodes = int_list_after(body, "Node set:");
    auto edge_line_start = body.find("Edge set:");
    if (edge_line_start == std::string::npos)
        throw OracleParseError("adjacency body is missing its edge set");
    auto edge_line_end = body.find('\n', edge_line_start);
    std::string edge_line = body.substr(edge_line_start,
                                        edge_line_end == std::string::npos
                                            ? std::string::npos
                                            : edge_line_end - edge_line_start);
    static const std::regex pair_pattern(R"(\[(\d+),\s*(\d+)\])");
    std::vector<RawEdge> raw;
    for (auto it = std::sregex_iterator(edge_line.begin(), edge_line.end(), pair_pattern);
         it != std::sregex_iterator(); ++it)
        raw.push_back({std::stoi((*it)[1]), std::stoi((*it)[2]), 1});

    if (contains(body, "Edge distance set:")) {
        auto distances = int_list_after(body, "Edge distance set:");
        if (distances.size() != raw.size())
            throw OracleParseError("edge and distance lists differ in length");
        for (size_t i = 0; i < raw.size(); ++i) raw[i].w = static_cast<int>(distances[i]);
    }
    return build_graph(static_cast<int>(nodes.size()), std::move(raw));
}

WeightedGraph read_edge_description(const std::string& body) {
    int max_index = int_after(body, "numbered from 0 to");
    static const std::regex edge_pattern(
        R"(an edge between node (\d+) and node (\d+) with distance (\d+))");
    std::vector<RawEdge> raw;
    for (auto it = std::sregex_iterator(body.begin(), body.end(), edge_pattern);
         it != std::sregex_iterator(); ++it)
        raw.push_back({std::stoi((*it)[1]), std::stoi((*it)[2]), std::stoi((*it)[3])});
    return build_graph(max_index + 1, std::move(raw));
}

WeightedGraph read_gml(const std::string& body) {
    static const std::regex node_pattern(R"(node \[id (\d+)\])");
    int max_index = -1;
    for (auto it = std::sregex_iterator(body.begin(), body.end(), node_pattern);
         it != std::sregex_iterator(); ++it)
        max_index = std::max(max_index, std::stoi((*it)[1]));
    if (max_index < 0) throw OracleParseError("gml body lists no nodes");
    static const std::regex edge_pattern(
        R"(Edge between node (\d+) and node (\d+) with distance (\d+))");
    std::vector<RawEdge> raw;
    for (auto it = std::sregex_iterator(body.begin(), body.end(), edge_pattern);
         it != std::sregex_iterator(); ++it)
        raw.push_back({std::stoi((*it)[1]), std::stoi((*it)[2]), std::stoi((*it)[3])});
    return build_graph(max_index + 1, std::move(raw));
}

std::vector<ParsedHint> read_hints(const std::string& block) {
    static const std::regex hint_pattern(
        R"(The shortest path from the source node \d+ to the intermediate node (\d+) is \[([^\]]*)\]\. The shortest distance is (-?\d+)\.)");
    std::vector<ParsedHint> hints;
    for (auto it = std::sregex_iterator(block.begin(), block.end(), hint_pattern);
         it != std::sregex_iterator(); ++it) {
        ParsedHint hint;
        hint.intermediate = std::stoi((*it)[1]);
        auto lists = extract_flat_int_lists("[" + (*it)[2].str() + "]");
        if (lists.size() == 1) hint.path = lists[0];
        hint.claimed_distance = std::stoll((*it)[3]);
        hints.push_back(std::move(hint));
    }
    return hints;
}

std::vector<ParsedSolution> read_solutions(const std::string& block) {
    static const std::regex solution_pattern(
        R"(Solution \d+: The shortest path from the source node \d+ to the target node \d+ is \[([^\]]*)\]\. The shortest distance is (-?\d+)\.)");
    std::vector<ParsedSolution> solutions;
    for (auto it = std::sregex_iterator(block.begin(), block.end(), solution_pattern);
         it != std::sregex_iterator(); ++it) {
        ParsedSolution solution;
        auto lists = extract_flat_int_lists("[" + (*it)[1].str() + "]");
        if (lists.size() == 1) solution.path = lists[0];
        solution.claimed_distance = std::stoll((*it)[2]);
        solutions.push_back(std::move(solution));
    }
    return solutions;
}

}  // namespace

WeightedGraph read_graph_body(const std::string& body) {
    if (contains(body, "Node set:")) return read_adjacency(body);
    if (contains(body, "In an undirected graph, the nodes are numbered"))
        return read_edge_description(body);
    if (contains(body, "graph[comment")) return read_gml(body);
    throw OracleParseError("unrecognized graph encoding in prompt input");
}

ParsedPrompt read_harness_prompt(const std::string& prompt) {
    ParsedPrompt parsed;
    if (contains(prompt, "find its neighborhood nodes and save them in a list"))
        parsed.kind = PromptKind::ProposeNeighbors;
    else if (contains(prompt, "We have hints of one or several intermediate paths"))
        parsed.kind = PromptKind::AggregateHints;
    else if (contains(prompt, "We have two solution candidates"))
        parsed.kind = PromptKind::EvaluateCandidates;
    else if (contains(prompt, "find the most promising one that forms the shortest path"))
        parsed.kind = PromptKind::TotEvaluate;
    else if (contains(prompt,
                      "Find the shortest path from a source node to a target node in an "
                      "undirected graph"))
        parsed.kind = PromptKind::Solve;
    else
        throw OracleParseError("prompt carries no recognizable harness header");

    auto at = prompt.rfind("Input:");
    if (at == std::string::npos) throw OracleParseError("prompt has no Input: section");
    std::string block = prompt.substr(at + std::string_view("Input:").size());
    while (!block.empty() && (block.front() == '\n' || block.front() == ' ')) block.erase(0, 1);
    // 0-shot step-by-step prompts append a cue after the live input.
    auto cue = block.rfind("Let's think step by step");
    if (cue != std::string::npos) block.erase(cue);
    while (!block.empty() && (block.back() == '\n' || block.back() == ' ')) block.pop_back();

    parsed.graph = read_graph_body(block);

    switch (parsed.kind) {
        case PromptKind::Solve:
            parsed.source = int_after(block, "Source Node:");
            parsed.target = int_after(block, "Target Node:");
            break;
        case PromptKind::ProposeNeighbors:
            parsed.input_node = int_after(block, "Input Node:");
            break;
        case PromptKind::TotEvaluate: {
            parsed.target = int_after(block, "Target Node:");
            for (long long node : int_list_after(block, "Input Nodes:"))
                parsed.input_nodes.push_back(static_cast<int>(node));
            break;
        }
        case PromptKind::AggregateHints:
            parsed.source = int_after(block, "Use the above hint to find the shortest path from the source node");
            parsed.target = int_after(block, " to the target node");
            parsed.hints = read_hints(block);
            break;
        case PromptKind::EvaluateCandidates:
            parsed.source = int_after(block, "Source Node:");
            parsed.target = int_after(block, "Target Node:");
            parsed.solutions = read_solutions(block);
            break;
    }
    return parsed;
}

}  // namespace tpbench
