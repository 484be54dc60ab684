#include "tpbench/prompts.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace tpbench {

namespace {

//---------------------------------------------------------------- fixed text

constexpr const char* kSolveHeaderAdjacency =
    "Find the shortest path from a source node to a target node in an undirected graph. "
    "The undirected graph is represented as a node set, an edge set, and an edge distance set.";
constexpr const char* kSolveHeaderBare =
    "Find the shortest path from a source node to a target node in an undirected graph.";
constexpr const char* kBagConstructSentence =
    "Let's construct a graph with the nodes and edges first.";
constexpr const char* kStepByStepCue = "Let's think step by step";
constexpr const char* kFormatIntro = "The format of the input and answer are below:";

constexpr const char* kProposeHeaderAdjacency =
    "The undirected graph is represented as a node set, an edge set. "
    "Given an input node, find its neighborhood nodes and save them in a list.";
constexpr const char* kProposeHeaderBare =
    "Given an input node, find its neighborhood nodes and save them in a list.";

// "the the" is carried over verbatim from the prompt this template reproduces.
constexpr const char* kAggregateHeaderAdjacency =
    "The undirected graph is represented as a node set, an edge set and an edge distance set. "
    "The edges in the edge set are reversible. We have hints of one or several intermediate "
    "paths from the source node to some intermediate nodes. Please use these hints to find the "
    "shortest path from the source node the the target node.";
constexpr const char* kAggregateHeaderBare =
    "We have hints of one or several intermediate paths from the source node to some "
    "intermediate nodes. Please use these hints to find the shortest path from the source node "
    "the the target node.";

constexpr const char* kEvaluateHeaderAdjacency =
    "The undirected graph is represented as a node set, an edge set and an edge distance set. "
    "The edges in the edge set are reversible. We have two solution candidates for the shortest "
    "path from the source node to the target node. Please verify these two solution candidates "
    "and output the better one. If two solutions are the same and both valid, output the first "
    "solution. Notice that the shortest distance provided in the hints may be wrong. Check it "
    "before using it.";
constexpr const char* kEvaluateHeaderBare =
    "We have two solution candidates for the shortest path from the source node to the target "
    "node. Please verify these two solution candidates and output the better one. If two "
    "solutions are the same and both valid, output the first solution. Notice that the shortest "
    "distance provided in the hints may be wrong. Check it before using it.";

constexpr const char* kTotEvaluateHeader =
    "Given several input nodes, evaluate these input nodes and find the most promising one that "
    "forms the shortest path to the target node.";

constexpr const char* kSolveFormatAnswer =
    "The shortest path from the source node to the target node is "
    "[source node index, ..., target node index]. The shortest distance is BLANK.";
constexpr const char* kTotFormatAnswer =
    "The most promising one that forms the shortest path to the target node in the input nodes "
    "is BLANK. The shortest path is [BLANK, ..., target node index]. The shortest distance is "
    "BLANK.";

// Frozen exemplar reply for the solution-evaluation template.
constexpr const char* kEvaluateExemplarAnswer =
    "Solution 1 is valid because it can reach the target node and all the edges in Solution 1 "
    "are real edges in the Edge set. Solution 2 is valid because it can reach the target node "
    "and all the edges in Solution 2 are real edges in the Edge set. Solution 1 is better than "
    "Solution 2 because the path in Solution 1 is shorter than that in Solution 2. So the "
    "shortest path from the source node 0 to the target node 5 is [0, 2, 5]. The shortest "
    "distance is 5.";

std::string graph_format_sketch(EncodingScheme scheme) {
    switch (scheme) {
        case EncodingScheme::Adjacency:
            return "Node set: []\nEdge set: []\nEdge distance set: []";
        case EncodingScheme::EdgeDescription:
            return "In an undirected graph, the nodes are numbered from 0 to N, and the edges "
                   "are represented as: an edge between node i and node j with distance "
                   "LENGTH, ...";
        case EncodingScheme::Gml:
            return "graph[comment \"This is an undirected graph.\" node [id 0] ... node [id N] "
                   "edge [label \"Edge between node i and node j with distance LENGTH\"] ...]";
    }
    throw std::invalid_argument("unknown encoding scheme");
}

std::string solve_format_block(EncodingScheme scheme) {
    return graph_format_sketch(scheme) +
           "\nSource Node: source node index\nTarget Node: target node index";
}

std::string tot_format_block(EncodingScheme scheme) {
    return graph_format_sketch(scheme) +
           "\nInput Nodes: [input nodes]\nTarget Node: target node index";
}

std::string join_sections(const std::vector<std::string>& sections) {
    std::string out;
    for (size_t i = 0; i < sections.size(); ++i) {
        if (i) out += "\n\n";
        out += sections[i];
    }
    return out;
}

std::string render_wide_list(const std::vector<long long>& values) {
    std::ostringstream out;
    out << '[';
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) out << ", ";
        out << values[i];
    }
    out << ']';
    return out.str();
}

//---------------------------------------------------------------- exemplars

WeightedGraph make_graph(int node_count, std::vector<std::tuple<int, int, int>> weighted_edges) {
    std::sort(weighted_edges.begin(), weighted_edges.end());
    WeightedGraph graph;
    graph.node_count = node_count;
    for (auto [u, v, w] : weighted_edges) {
        graph.edges.emplace_back(u, v);
        graph.distances.push_back(w);
    }
    graph.check();
    return graph;
}

ShortestPathProblem make_problem(std::string id, WeightedGraph graph, int source, int target) {
    ShortestPathProblem problem;
    problem.instance_id = std::move(id);
    problem.graph = std::move(graph);
    problem.source = source;
    problem.target = target;
    auto sp = dijkstra(problem.graph, source);
    problem.optimal_length = static_cast<int>(sp.dist[target]);
    problem.optimal_path = witness_path(sp, source, target);
    return problem;
}

std::vector<ShortestPathProblem> build_exemplars() {
    std::vector<ShortestPathProblem> out;
    out.push_back(make_problem(
        "x0", make_graph(5, {{0, 3, 2}, {1, 4, 3}, {2, 4, 5}, {3, 4, 3}}), 0, 4));
    out.push_back(make_problem(
        "x1",
        make_graph(6, {{0, 3, 2}, {0, 2, 2}, {1, 3, 5}, {1, 5, 4}, {2, 3, 2}, {2, 5, 3},
                       {3, 4, 3}, {4, 5, 4}}),
        0, 5));
    out.push_back(make_problem(
        "x2",
        make_graph(7, {{0, 1, 2}, {0, 3, 2}, {0, 4, 2}, {1, 4, 3}, {2, 4, 3}, {3, 4, 5},
                       {2, 5, 4}, {2, 6, 1}}),
        0, 6));
    out.push_back(make_problem(
        "x3",
        make_graph(6, {{0, 1, 1}, {0, 3, 2}, {1, 2, 2}, {1, 4, 5}, {2, 5, 3}, {3, 4, 4},
                       {4, 5, 1}}),
        0, 5));
    out.push_back(make_problem(
        "x4",
        make_graph(8, {{0, 1, 2}, {0, 2, 1}, {1, 3, 3}, {1, 4, 1}, {2, 3, 1}, {2, 6, 5},
                       {3, 7, 4}, {4, 5, 2}, {5, 7, 3}, {6, 7, 2}}),
        0, 7));
    return out;
}

std::string solve_header(Method method, EncodingScheme scheme) {
    std::string header = scheme == EncodingScheme::Adjacency ? kSolveHeaderAdjacency
                                                             : kSolveHeaderBare;
    if (method == Method::Bag) header += std::string(" ") + kBagConstructSentence;
    return header;
}

std::string solve_exemplar_answer(Method method, const ShortestPathProblem& exemplar) {
    if (method == Method::Io)
        return render_path_answer(exemplar.optimal_path, exemplar.optimal_length);
    return render_cot_answer(exemplar.graph, exemplar.optimal_path, exemplar.optimal_length);
}

void check_shots(int shots) {
    if (shots != 0 && shots != 1 && shots != 5)
        throw std::invalid_argument("shots must be 0, 1 or 5");
}

}  // namespace

std::string PromptTemplate::render(
    const std::vector<std::pair<std::string, std::string>>& slots) const {
    std::string out = text;
    for (const auto& [name, value] : slots) {
        std::string key = "{" + name + "}";
        size_t pos = 0;
        while ((pos = out.find(key, pos)) != std::string::npos) {
            out.replace(pos, key.size(), value);
            pos += value.size();
        }
    }
    return out;
}

const std::vector<ShortestPathProblem>& exemplar_problems() {
    static const std::vector<ShortestPathProblem> exemplars = build_exemplars();
    return exemplars;
}

std::optional<std::pair<std::vector<int>, long long>> best_hint_extension(
    const WeightedGraph& graph, const std::vector<Hint>& hints, int source, int target) {
    std::optional<std::pair<std::vector<int>, long long>> best;
    for (const Hint& hint : hints) {
        const auto& path = hint.path;
        if (path.size() < 2 || path.front() != source || path.back() != hint.intermediate)
            continue;
        auto closing = graph.edge_distance(hint.intermediate, target);
        if (!closing) continue;
        std::vector<bool> seen(graph.node_count, false);
        bool valid = true;
        long long length = 0;
        for (size_t i = 0; i < path.size() && valid; ++i) {
            int node = path[i];
            if (node < 0 || node >= graph.node_count || seen[node] || node == target) {
                valid = false;
                break;
            }
            seen[node] = true;
            if (i + 1 < path.size()) {
                auto w = graph.edge_distance(node, path[i + 1]);
                if (!w) valid = false;
                else length += *w;
            }
        }
        if (!valid) continue;
        length += *closing;
        if (!best || length < best->second) {
            std::vector<int> full = path;
            full.push_back(target);
            best = {std::move(full), length};
        }
    }
    return best;
}

PromptTemplate solve_template(Method method, int shots, EncodingScheme scheme) {
    check_shots(shots);
    if (method == Method::CotSc) method = Method::Cot;
    if (method != Method::Io && method != Method::Cot && method != Method::Bag)
        throw std::invalid_argument("solve_template expects a direct-solve method");

    std::vector<std::string> sections{solve_header(method, scheme)};
    if (shots == 0) {
        sections.push_back(kFormatIntro);
        sections.push_back("Input:");
        sections.push_back(solve_format_block(scheme));
        sections.push_back("Answer:");
        sections.push_back(kSolveFormatAnswer);
    } else {
        const auto& exemplars = exemplar_problems();
        for (int i = 0; i < shots; ++i) {
            sections.push_back("Input:");
            sections.push_back(encode_problem(exemplars[i], scheme));
            sections.push_back("Answer:");
            sections.push_back(solve_exemplar_answer(method, exemplars[i]));
        }
    }
    sections.push_back("Input:");
    sections.push_back("{input}");
    if (shots == 0 && (method == Method::Cot || method == Method::Bag))
        sections.push_back(kStepByStepCue);
    return {join_sections(sections), shots};
}

PromptTemplate propose_template(EncodingScheme scheme) {
    const auto& exemplars = exemplar_problems();
    // (exemplar index, queried node) pairs; the first mirrors the documented
    // example of finding the target's neighborhood.
    static constexpr std::pair<int, int> kQueries[] = {{0, 4}, {1, 3}, {2, 2}, {3, 1}, {4, 7}};
    std::vector<std::string> sections{scheme == EncodingScheme::Adjacency
                                          ? kProposeHeaderAdjacency
                                          : kProposeHeaderBare};
    for (auto [index, node] : kQueries) {
        const auto& exemplar = exemplars[index];
        sections.push_back("Input:");
        sections.push_back(propose_input(exemplar.graph, node, scheme));
        sections.push_back("Answer:");
        sections.push_back(render_neighbor_answer(neighbors(exemplar.graph, node)));
    }
    sections.push_back("Input:");
    sections.push_back("{input}");
    return {join_sections(sections), 5};
}

PromptTemplate aggregate_template(EncodingScheme scheme) {
    const auto& exemplar = exemplar_problems()[0];
    std::vector<Hint> hints;
    auto sp = dijkstra(exemplar.graph, exemplar.source);
    for (int node : neighbors(exemplar.graph, exemplar.target)) {
        if (node == exemplar.source) continue;
        hints.push_back({node, witness_path(sp, exemplar.source, node), sp.dist[node]});
    }
    auto best = best_hint_extension(exemplar.graph, hints, exemplar.source, exemplar.target);
    std::vector<std::string> sections{scheme == EncodingScheme::Adjacency
                                          ? kAggregateHeaderAdjacency
                                          : kAggregateHeaderBare};
    sections.push_back("Input:");
    sections.push_back(
        aggregate_input(exemplar.graph, hints, exemplar.source, exemplar.target, scheme));
    sections.push_back("Answer:");
    sections.push_back(render_aggregate_answer(exemplar.source, exemplar.target, best->first,
                                               best->second));
    sections.push_back("Input:");
    sections.push_back("{input}");
    return {join_sections(sections), 1};
}

PromptTemplate evaluate_template(EncodingScheme scheme) {
    const auto& exemplar = exemplar_problems()[1];
    SolutionLine first{{0, 2, 5}, 5};
    SolutionLine second{{0, 3, 4, 5}, 9};
    std::vector<std::string> sections{scheme == EncodingScheme::Adjacency
                                          ? kEvaluateHeaderAdjacency
                                          : kEvaluateHeaderBare};
    sections.push_back("Input:");
    sections.push_back(evaluate_input(exemplar.graph, exemplar.source, exemplar.target, first,
                                      second, scheme));
    sections.push_back("Answer:");
    sections.push_back(kEvaluateExemplarAnswer);
    sections.push_back("Input:");
    sections.push_back("{input}");
    return {join_sections(sections), 1};
}

PromptTemplate tot_evaluate_template(int shots, EncodingScheme scheme) {
    check_shots(shots);
    // (exemplar index, candidate nodes, target); the five-shot setting
    // carries four examples.
    struct ExemplarChoice {
        int index;
        std::vector<int> candidates;
        int target;
    };
    static const std::vector<ExemplarChoice> kChoices{
        {2, {3, 4}, 6}, {0, {2, 3}, 4}, {1, {2, 3}, 5}, {4, {1, 2}, 7}};
    int count = shots == 0 ? 0 : shots == 1 ? 1 : 4;

    std::vector<std::string> sections{kTotEvaluateHeader};
    if (count == 0) {
        sections.push_back(kFormatIntro);
        sections.push_back("Input:");
        sections.push_back(tot_format_block(scheme));
        sections.push_back("Answer:");
        sections.push_back(kTotFormatAnswer);
    } else {
        const auto& exemplars = exemplar_problems();
        for (int i = 0; i < count; ++i) {
            const ExemplarChoice& entry = kChoices[i];
            const ShortestPathProblem& exemplar = exemplars[entry.index];
            TotChoice choice = choose_promising_node(exemplar.graph, entry.candidates,
                                                     exemplar.source, entry.target);
            sections.push_back("Input:");
            sections.push_back(
                tot_evaluate_input(exemplar.graph, entry.candidates, entry.target, scheme));
            sections.push_back("Answer:");
            sections.push_back(
                render_tot_choice_answer(choice.node, choice.path, choice.distance));
        }
    }
    sections.push_back("Input:");
    sections.push_back("{input}");
    return {join_sections(sections), shots};
}

std::string propose_input(const WeightedGraph& graph, int input_node, EncodingScheme scheme) {
    std::ostringstream out;
    out << encode_graph_body(graph, scheme, /*include_distances=*/false) << '\n'
        << "Input Node: " << input_node;
    return out.str();
}

std::string tot_evaluate_input(const WeightedGraph& graph, const std::vector<int>& candidates,
                               int target, EncodingScheme scheme) {
    std::ostringstream out;
    out << encode_graph_body(graph, scheme) << '\n'
        << "Input Nodes: " << render_int_list(candidates) << '\n'
        << "Target Node: " << target;
    return out.str();
}

std::string aggregate_input(const WeightedGraph& graph, const std::vector<Hint>& hints,
                            int source, int target, EncodingScheme scheme) {
    std::ostringstream out;
    out << encode_graph_body(graph, scheme) << '\n' << "The hints are:";
    for (const Hint& hint : hints)
        out << '\n' << render_hint_line(source, hint.intermediate, hint.path, hint.length);
    out << '\n'
        << "Use the above hint to find the shortest path from the source node " << source
        << " to the target node " << target << '.';
    return out.str();
}

std::string evaluate_input(const WeightedGraph& graph, int source, int target,
                           const SolutionLine& first, const SolutionLine& second,
                           EncodingScheme scheme) {
    std::ostringstream out;
    out << encode_graph_body(graph, scheme) << '\n'
        << "Source Node: " << source << '\n'
        << "Target Node: " << target << '\n'
        << render_solution_line(1, source, target, first.path, first.distance) << '\n'
        << render_solution_line(2, source, target, second.path, second.distance);
    return out.str();
}

std::string render_path_answer(const std::vector<int>& path, long long distance) {
    std::ostringstream out;
    out << "The shortest path from the source node to the target node is "
        << render_int_list(path) << ". The shortest distance is " << distance << '.';
    return out.str();
}

std::string render_cot_answer(const WeightedGraph& graph, const std::vector<int>& path,
                              long long distance) {
    std::ostringstream out;
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        out << "Starting from node " << path[i] << ", we arrive at node " << path[i + 1]
            << ". The distance between these two nodes is "
            << graph.edge_distance(path[i], path[i + 1]).value_or(0) << ".\n";
    }
    out << "Thus, the shortest path from the source node to the target node is "
        << render_int_list(path) << ". The shortest distance is " << distance << '.';
    return out.str();
}

std::string render_neighbor_answer(const std::vector<int>& neighbor_nodes) {
    return "The neighborhood node list of the input node is " + render_int_list(neighbor_nodes) +
           ".";
}

std::string render_hint_line(int source, int intermediate, const std::vector<int>& path,
                             long long distance) {
    std::ostringstream out;
    out << "The shortest path from the source node " << source << " to the intermediate node "
        << intermediate << " is " << render_int_list(path) << ". The shortest distance is "
        << distance << '.';
    return out.str();
}

std::string render_aggregate_answer(int source, int target, const std::vector<int>& path,
                                    long long distance) {
    std::ostringstream out;
    out << "Using the above hints, the shortest path from the source node " << source
        << " to the target node " << target << " is " << render_int_list(path)
        << ". The shortest distance is " << distance << '.';
    return out.str();
}

std::string render_solution_line(int index, int source, int target,
                                 const std::vector<long long>& path, long long distance) {
    std::ostringstream out;
    out << "Solution " << index << ": The shortest path from the source node " << source
        << " to the target node " << target << " is " << render_wide_list(path)
        << ". The shortest distance is " << distance << '.';
    return out.str();
}

std::string render_tot_choice_answer(long long node, const std::vector<int>& path,
                                     long long distance) {
    std::ostringstream out;
    out << "The most promising one that forms the shortest path to the target node in the input "
           "nodes is "
        << node << ". The shortest path is " << render_int_list(path)
        << ". The shortest distance is " << distance << '.';
    return out.str();
}

TotChoice choose_promising_node(const WeightedGraph& graph, const std::vector<int>& candidates,
                                int source, int target) {
    if (candidates.empty()) throw std::invalid_argument("no candidate nodes to evaluate");
    if (source >= 0) {
        std::vector<int> optimal = witness_path(dijkstra(graph, source), source, target);
        for (size_t i = 1; i < optimal.size(); ++i) {
            if (std::find(candidates.begin(), candidates.end(), optimal[i]) == candidates.end())
                continue;
            TotChoice choice;
            choice.node = optimal[i];
            choice.path.assign(optimal.begin() + static_cast<long>(i), optimal.end());
            for (size_t k = 1; k < choice.path.size(); ++k)
                choice.distance += *graph.edge_distance(choice.path[k - 1], choice.path[k]);
            return choice;
        }
    }
    TotChoice best;
    for (int candidate : candidates) {
        DijkstraResult from_candidate = dijkstra(graph, candidate);
        long long remaining = from_candidate.dist[target];
        if (best.node == -1 || remaining < best.distance) {
            best.node = candidate;
            best.distance = remaining;
            best.path = witness_path(from_candidate, candidate, target);
        }
    }
    return best;
}

}  // namespace tpbench
