#include "tpbench/encoding.hpp"

#include <sstream>
#include <stdexcept>

namespace tpbench {

std::string encoding_name(EncodingScheme scheme) {
    switch (scheme) {
        case EncodingScheme::Adjacency: return "adjacency";
        case EncodingScheme::EdgeDescription: return "edge-description";
        case EncodingScheme::Gml: return "gml";
    }
    throw std::invalid_argument("unknown encoding scheme");
}

EncodingScheme encoding_from_name(const std::string& name) {
    if (name == "adjacency") return EncodingScheme::Adjacency;
    if (name == "edge-description") return EncodingScheme::EdgeDescription;
    if (name == "gml") return EncodingScheme::Gml;
    throw std::invalid_argument("unknown encoding scheme: " + name);
}

std::string render_int_list(const std::vector<int>& values) {
    std::ostringstream out;
    out << '[';
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) out << ", ";
        out << values[i];
    }
    out << ']';
    return out.str();
}

std::string render_edge_list(const std::vector<std::pair<int, int>>& edges) {
    std::ostringstream out;
    out << '[';
    for (size_t i = 0; i < edges.size(); ++i) {
        if (i) out << ", ";
        out << '[' << edges[i].first << ", " << edges[i].second << ']';
    }
    out << ']';
    return out.str();
}

namespace {

std::string adjacency_body(const WeightedGraph& graph, bool include_distances) {
    std::vector<int> nodes(graph.node_count);
    for (int i = 0; i < graph.node_count; ++i) nodes[i] = i;
    std::ostringstream out;
    out << "Node set: " << render_int_list(nodes) << '\n';
    out << "Edge set: " << render_edge_list(graph.edges);
    if (include_distances) out << "\nEdge distance set: " << render_int_list(graph.distances);
    return out.str();
}

std::string edge_description_body(const WeightedGraph& graph) {
    std::ostringstream out;
    out << "In an undirected graph, the nodes are numbered from 0 to " << graph.node_count - 1
        << ", and the edges are represented as:";
    for (size_t i = 0; i < graph.edges.size(); ++i) {
        out << (i ? "," : "") << " an edge between node " << graph.edges[i].first
            << " and node " << graph.edges[i].second << " with distance " << graph.distances[i];
    }
    out << '.';
    return out.str();
}

std::string gml_body(const WeightedGraph& graph) {
    std::ostringstream out;
    out << "graph[comment \"This is an undirected graph.\"";
    for (int i = 0; i < graph.node_count; ++i) out << " node [id " << i << ']';
    for (size_t i = 0; i < graph.edges.size(); ++i) {
        out << " edge [label \"Edge between node " << graph.edges[i].first << " and node "
            << graph.edges[i].second << " with distance " << graph.distances[i] << "\"]";
    }
    out << ']';
    return out.str();
}

}  // namespace

std::string encode_graph_body(const WeightedGraph& graph, EncodingScheme scheme,
                              bool include_distances) {
    switch (scheme) {
        case EncodingScheme::Adjacency: return adjacency_body(graph, include_distances);
        case EncodingScheme::EdgeDescription: return edge_description_body(graph);
        case EncodingScheme::Gml: return gml_body(graph);
    }
    throw std::invalid_argument("unknown encoding scheme");
}

std::string encode_problem(const ShortestPathProblem& problem, EncodingScheme scheme) {
    return encode_subproblem(problem, problem.target, scheme);
}

std::string encode_subproblem(const ShortestPathProblem& problem, int intermediate_target,
                              EncodingScheme scheme) {
    std::ostringstream out;
    out << encode_graph_body(problem.graph, scheme) << '\n'
        << "Source Node: " << problem.source << '\n'
        << "Target Node: " << intermediate_target;
    return out.str();
}

}  // namespace tpbench
