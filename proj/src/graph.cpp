#include "tpbench/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <queue>
#include <set>
#include <stdexcept>

#include "tpbench/errors.hpp"

namespace tpbench {

void WeightedGraph::check() const {
    if (node_count < 1) throw std::invalid_argument("graph needs at least one node");
    if (edges.size() != distances.size())
        throw std::invalid_argument("edge and distance lists differ in length");
    for (size_t i = 0; i < edges.size(); ++i) {
        auto [u, v] = edges[i];
        if (u < 0 || v >= node_count || u >= v)
            throw std::invalid_argument("edge endpoints must satisfy 0 <= u < v < node_count");
        if (i > 0 && !(edges[i - 1] < edges[i]))
            throw std::invalid_argument("edges must be sorted and unique");
        if (distances[i] < 1) throw std::invalid_argument("edge distances must be positive");
    }
}

std::optional<int> WeightedGraph::edge_distance(int u, int v) const {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(u, v));
    if (it == edges.end() || *it != std::make_pair(u, v)) return std::nullopt;
    return distances[it - edges.begin()];
}

std::vector<std::vector<std::pair<int, int>>> WeightedGraph::adjacency() const {
    std::vector<std::vector<std::pair<int, int>>> adj(node_count);
    for (size_t i = 0; i < edges.size(); ++i) {
        auto [u, v] = edges[i];
        adj[u].emplace_back(v, distances[i]);
        adj[v].emplace_back(u, distances[i]);
    }
    return adj;
}

DijkstraResult dijkstra(const WeightedGraph& graph, int source) {
    if (source < 0 || source >= graph.node_count)
        throw std::invalid_argument("dijkstra: source out of range");
    DijkstraResult res;
    res.dist.assign(graph.node_count, kInfiniteDistance);
    res.pred.assign(graph.node_count, -1);
    res.dist[source] = 0;

    auto adj = graph.adjacency();
    using Entry = std::pair<long long, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    heap.emplace(0, source);
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d != res.dist[u]) continue;
        for (auto [v, w] : adj[u]) {
            long long nd = d + w;
            if (res.dist[v] == kInfiniteDistance || nd < res.dist[v]) {
                res.dist[v] = nd;
                heap.emplace(nd, v);
            }
        }
    }

    // Witness predecessors chosen after the fact: smallest u attaining the
    // distance, so the tree does not depend on heap processing order.
    for (size_t i = 0; i < graph.edges.size(); ++i) {
        auto [u, v] = graph.edges[i];
        int w = graph.distances[i];
        auto relax = [&](int from, int to) {
            if (res.dist[from] == kInfiniteDistance || to == source) return;
            if (res.dist[from] + w == res.dist[to] &&
                (res.pred[to] == -1 || from < res.pred[to]))
                res.pred[to] = from;
        };
        relax(u, v);
        relax(v, u);
    }
    return res;
}

std::vector<int> witness_path(const DijkstraResult& result, int source, int target) {
    if (result.dist[target] == kInfiniteDistance) return {};
    std::vector<int> path{target};
    int cur = target;
    while (cur != source) {
        cur = result.pred[cur];
        path.push_back(cur);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

namespace {

void enumerate_paths(const std::vector<std::vector<std::pair<int, int>>>& adj,
                     int cur, int target, long long length, std::vector<bool>& used,
                     std::vector<int>& path,
                     const std::function<void(const std::vector<int>&, long long)>& visit) {
    if (cur == target) {
        visit(path, length);
        return;
    }
    for (auto [next, w] : adj[cur]) {
        if (used[next]) continue;
        used[next] = true;
        path.push_back(next);
        enumerate_paths(adj, next, target, length + w, used, path, visit);
        path.pop_back();
        used[next] = false;
    }
}

}  // namespace

void for_each_simple_path(const WeightedGraph& graph, int source, int target,
                          const std::function<void(const std::vector<int>&, long long)>& visit) {
    auto adj = graph.adjacency();
    std::vector<bool> used(graph.node_count, false);
    std::vector<int> path{source};
    used[source] = true;
    enumerate_paths(adj, source, target, 0, used, path, visit);
}

std::optional<long long> brute_force_shortest(const WeightedGraph& graph, int source, int target) {
    if (graph.node_count > 12)
        throw std::invalid_argument("brute_force_shortest: refusing graphs larger than 12 nodes");
    std::optional<long long> best;
    for_each_simple_path(graph, source, target, [&](const std::vector<int>&, long long len) {
        if (!best || len < *best) best = len;
    });
    return best;
}

std::vector<int> neighbors(const WeightedGraph& graph, int node) {
    std::vector<int> out;
    for (auto [u, v] : graph.edges) {
        if (u == node) out.push_back(v);
        if (v == node) out.push_back(u);
    }
    std::sort(out.begin(), out.end());
    return out;
}

PathEvaluation validate_path(const ShortestPathProblem& problem, std::span<const long long> path) {
    PathEvaluation eval;
    if (path.size() < 2) return eval;
    const auto& graph = problem.graph;
    std::set<long long> seen;
    for (long long node : path) {
        if (node < 0 || node >= graph.node_count) return eval;
        if (!seen.insert(node).second) return eval;
    }
    if (path.front() != problem.source || path.back() != problem.target) return eval;
    long long total = 0;
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        auto w = graph.edge_distance(static_cast<int>(path[i]), static_cast<int>(path[i + 1]));
        if (!w) return eval;
        total += *w;
    }
    eval.feasible = true;
    eval.length = static_cast<int>(total);
    eval.optimal = total == problem.optimal_length;
    return eval;
}

PathEvaluation validate_path(const ShortestPathProblem& problem, const std::vector<int>& path) {
    std::vector<long long> wide(path.begin(), path.end());
    return validate_path(problem, std::span<const long long>(wide));
}

WeightedGraph generate_connected_graph(int node_count, double edge_probability, Rng& rng) {
    if (node_count < 2)
        throw std::invalid_argument("generate_connected_graph: need at least two nodes");
    std::set<std::pair<int, int>> include;
    for (int u = 0; u + 1 < node_count; ++u) {
        int group_size = node_count - 1 - u;  // candidates (u, u+1) .. (u, n-1)
        int forced = u + 1 + rng.uniform_int(0, group_size - 1);
        include.emplace(u, forced);
        for (int v = u + 1; v < node_count; ++v) {
            if (rng.uniform_real01() < edge_probability) include.emplace(u, v);
        }
    }
    WeightedGraph graph;
    graph.node_count = node_count;
    graph.edges.assign(include.begin(), include.end());
    graph.distances.reserve(graph.edges.size());
    for (size_t i = 0; i < graph.edges.size(); ++i)
        graph.distances.push_back(rng.uniform_int(1, 5));
    graph.check();
    return graph;
}

std::vector<ShortestPathProblem> generate_dataset(const DatasetParams& params) {
    if (params.count < 0) throw std::invalid_argument("generate_dataset: negative count");
    if (params.n_min < 2 || params.n_min > params.n_max)
        throw std::invalid_argument("generate_dataset: bad node count range");
    Rng rng(params.seed);
    std::vector<ShortestPathProblem> problems;
    problems.reserve(params.count);
    for (int i = 0; i < params.count; ++i) {
        bool accepted = false;
        for (int attempt = 0; attempt < 1000 && !accepted; ++attempt) {
            int n = rng.uniform_int(params.n_min, params.n_max);
            WeightedGraph graph = generate_connected_graph(n, params.edge_probability, rng);
            auto sp = dijkstra(graph, 0);
            auto path = witness_path(sp, 0, n - 1);
            if (path.size() < 3) continue;  // single-edge optimum: trivial, resample
            ShortestPathProblem problem;
            char id[16];
            std::snprintf(id, sizeof id, "g%04d", i);
            problem.instance_id = id;
            problem.graph = std::move(graph);
            problem.source = 0;
            problem.target = n - 1;
            problem.optimal_length = static_cast<int>(sp.dist[n - 1]);
            problem.optimal_path = std::move(path);
            problems.push_back(std::move(problem));
            accepted = true;
        }
        if (!accepted)
            throw GenerationError("generate_dataset: 1000 consecutive rejections for instance " +
                                  std::to_string(i));
    }
    return problems;
}

}  // namespace tpbench
