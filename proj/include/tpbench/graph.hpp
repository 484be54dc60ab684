#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tpbench/rng.hpp"

namespace tpbench {

// Undirected weighted graph. Edges are stored canonically: each pair has
// u < v and the list is lexicographically sorted with no duplicates.
// distances[i] belongs to edges[i].
struct WeightedGraph {
    int node_count = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> distances;

    // Throws std::invalid_argument if any structural invariant is broken.
    void check() const;

    std::optional<int> edge_distance(int u, int v) const;
    std::vector<std::vector<std::pair<int, int>>> adjacency() const;  // node -> (neighbor, weight)
};

struct ShortestPathProblem {
    std::string instance_id;
    WeightedGraph graph;
    int source = 0;
    int target = 0;
    int optimal_length = 0;
    std::vector<int> optimal_path;
};

struct PathEvaluation {
    bool feasible = false;
    std::optional<int> length;  // present iff feasible
    bool optimal = false;
};

inline constexpr long long kInfiniteDistance = std::numeric_limits<long long>::max();

struct DijkstraResult {
    std::vector<long long> dist;  // unreachable -> kInfiniteDistance
    std::vector<int> pred;        // -1 for source/unreachable
};

// Single-source shortest distances plus a deterministic witness tree:
// pred[v] is the smallest u with dist[u] + w(u,v) == dist[v].
DijkstraResult dijkstra(const WeightedGraph& graph, int source);

// Witness path source -> target from a dijkstra result; empty if unreachable.
std::vector<int> witness_path(const DijkstraResult& result, int source, int target);

// Exhaustive simple-path minimum, for cross-checking dijkstra.
// Throws std::invalid_argument when node_count > 12.
std::optional<long long> brute_force_shortest(const WeightedGraph& graph, int source, int target);

// Visits every simple path source -> target. Exponential; callers are
// responsible for keeping graphs small.
void for_each_simple_path(const WeightedGraph& graph, int source, int target,
                          const std::function<void(const std::vector<int>&, long long)>& visit);

// Sorted list of nodes sharing an edge with `node`.
std::vector<int> neighbors(const WeightedGraph& graph, int node);

// Total over arbitrary integer sequences: out-of-range nodes, repeats and
// non-edges all yield infeasible, never an error.
PathEvaluation validate_path(const ShortestPathProblem& problem, std::span<const long long> path);
PathEvaluation validate_path(const ShortestPathProblem& problem, const std::vector<int>& path);

// Connected graph on n nodes: every candidate pair group (by lower endpoint)
// contributes one forced uniformly random edge, then each candidate joins
// independently with probability p; distances are drawn uniformly from [1,5]
// in sorted-edge order once the topology is fixed.
WeightedGraph generate_connected_graph(int node_count, double edge_probability, Rng& rng);

struct DatasetParams {
    int count = 100;
    int n_min = 5;
    int n_max = 10;
    double edge_probability = 0.2;
    uint64_t seed = 42;
};

// Problems g0000, g0001, ... with node counts uniform in [n_min, n_max],
// source 0, target n-1. Instances whose optimal path has fewer than two
// edges are rejected and resampled from the same stream; 1000 consecutive
// rejections raise GenerationError.
std::vector<ShortestPathProblem> generate_dataset(const DatasetParams& params);

}  // namespace tpbench
