#pragma once

// Four tiny problems with optima 5, 6, 7 and 4, plus result records scoring
// optimal, feasible-but-long, infeasible and optimal on them. Expected
// metrics for the one cell: OR = 0.5, FR = 0.75, OLR = (0 + 1/6 + 0)/3.

#include <optional>
#include <string>
#include <vector>

#include "tpbench/harness.hpp"

namespace tpbench::test {

inline std::vector<ShortestPathProblem> metric_fixture_problems() {
    auto problem = [](std::string id, int nodes, std::vector<std::pair<int, int>> edges,
                      std::vector<int> distances, int optimal_length,
                      std::vector<int> optimal_path) {
        ShortestPathProblem p;
        p.instance_id = std::move(id);
        p.graph.node_count = nodes;
        p.graph.edges = std::move(edges);
        p.graph.distances = std::move(distances);
        p.source = 0;
        p.target = nodes - 1;
        p.optimal_length = optimal_length;
        p.optimal_path = std::move(optimal_path);
        p.graph.check();
        return p;
    };
    return {
        problem("m1", 3, {{0, 1}, {1, 2}}, {2, 3}, 5, {0, 1, 2}),
        problem("m2", 3, {{0, 1}, {0, 2}, {1, 2}}, {2, 7, 4}, 6, {0, 1, 2}),
        problem("m3", 2, {{0, 1}}, {7}, 7, {0, 1}),
        problem("m4", 2, {{0, 1}}, {4}, 4, {0, 1}),
    };
}

inline RunRecord metric_fixture_record(const std::string& instance_id,
                                       std::optional<std::vector<long long>> path,
                                       std::optional<long long> length, bool optimal) {
    RunRecord record;
    record.instance_id = instance_id;
    record.method = "io";
    record.shots = 0;
    record.encoding = "adjacency";
    record.layers = 0;
    record.final_path = std::move(path);
    record.feasible = length.has_value();
    record.length = length;
    record.optimal = optimal;
    record.prompt_tokens = 10;
    record.completion_tokens = 5;
    record.wall_ms = 1;
    return record;
}

// Outputs [5, 7, infeasible, 4] against optima [5, 6, 7, 4].
inline std::vector<RunRecord> metric_fixture_records() {
    return {
        metric_fixture_record("m1", std::vector<long long>{0, 1, 2}, 5, true),
        metric_fixture_record("m2", std::vector<long long>{0, 2}, 7, false),
        metric_fixture_record("m3", std::nullopt, std::nullopt, false),
        metric_fixture_record("m4", std::vector<long long>{0, 1}, 4, true),
    };
}

}  // namespace tpbench::test
