#pragma once

#include <string>

#include "tpbench/graph.hpp"

namespace tpbench {

enum class EncodingScheme { Adjacency, EdgeDescription, Gml };

// Canonical names used in CLI flags, config files and record keys.
std::string encoding_name(EncodingScheme scheme);
EncodingScheme encoding_from_name(const std::string& name);

// Graph body without the source/target trailer. Adjacency renders the
// node/edge/distance set lines; EdgeDescription one prose sentence; Gml a
// single graph[...] line. set include_distances=false for prompts that ask
// about topology only (Adjacency drops its distance line; the other schemes
// embed distances inside edge clauses and keep them).
std::string encode_graph_body(const WeightedGraph& graph, EncodingScheme scheme,
                              bool include_distances = true);

// Body plus "Source Node: s" / "Target Node: t" trailer lines. The trailer
// is shared across schemes.
std::string encode_problem(const ShortestPathProblem& problem, EncodingScheme scheme);

// Same graph and source, target swapped for an intermediate node.
std::string encode_subproblem(const ShortestPathProblem& problem, int intermediate_target,
                              EncodingScheme scheme);

// Rendering helpers shared by encoders, prompt assembly and the simulated
// backend ("[0, 3, 4]" and "[[0, 3], [1, 4]]").
std::string render_int_list(const std::vector<int>& values);
std::string render_edge_list(const std::vector<std::pair<int, int>>& edges);

}  // namespace tpbench
