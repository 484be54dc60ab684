#include <doctest.h>

#include <algorithm>
#include <set>

#include "test_support.hpp"
#include "tpbench/errors.hpp"
#include "tpbench/graph.hpp"
#include "tpbench/rng.hpp"

using namespace tpbench;

TEST_CASE("structural invariants are enforced") {
    WeightedGraph graph = test::five_node_problem().graph;
    CHECK_NOTHROW(graph.check());

    WeightedGraph reversed = graph;
    reversed.edges[0] = {3, 0};
    CHECK_THROWS_AS(reversed.check(), std::invalid_argument);

    WeightedGraph unsorted = graph;
    std::swap(unsorted.edges[0], unsorted.edges[1]);
    CHECK_THROWS_AS(unsorted.check(), std::invalid_argument);

    WeightedGraph duplicated = graph;
    duplicated.edges.push_back(duplicated.edges.back());
    duplicated.distances.push_back(1);
    CHECK_THROWS_AS(duplicated.check(), std::invalid_argument);

    WeightedGraph out_of_range = graph;
    out_of_range.edges.back() = {3, 5};
    CHECK_THROWS_AS(out_of_range.check(), std::invalid_argument);

    WeightedGraph zero_weight = graph;
    zero_weight.distances[2] = 0;
    CHECK_THROWS_AS(zero_weight.check(), std::invalid_argument);

    WeightedGraph mismatched = graph;
    mismatched.distances.pop_back();
    CHECK_THROWS_AS(mismatched.check(), std::invalid_argument);
}

TEST_CASE("edge_distance accepts either endpoint order") {
    WeightedGraph graph = test::five_node_problem().graph;
    CHECK(graph.edge_distance(0, 3) == 2);
    CHECK(graph.edge_distance(3, 0) == 2);
    CHECK(graph.edge_distance(4, 1) == 3);
    CHECK_FALSE(graph.edge_distance(0, 1).has_value());
}

TEST_CASE("dijkstra distances and witness on the five-node fixture") {
    ShortestPathProblem problem = test::five_node_problem();
    DijkstraResult result = dijkstra(problem.graph, 0);
    CHECK(result.dist[0] == 0);
    CHECK(result.dist[3] == 2);
    CHECK(result.dist[4] == 5);
    CHECK(result.dist[1] == 8);   // 0-3-4-1
    CHECK(result.dist[2] == 10);  // 0-3-4-2
    CHECK(witness_path(result, 0, 4) == std::vector<int>{0, 3, 4});
    CHECK(witness_path(result, 0, 2) == std::vector<int>{0, 3, 4, 2});
}

TEST_CASE("witness ties break toward the smaller predecessor") {
    WeightedGraph graph;
    graph.node_count = 4;
    graph.edges = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
    graph.distances = {1, 1, 1, 1};
    DijkstraResult result = dijkstra(graph, 0);
    CHECK(result.dist[3] == 2);  // both [0,1,3] and [0,2,3] attain it
    CHECK(witness_path(result, 0, 3) == std::vector<int>{0, 1, 3});
}

TEST_CASE("unreachable targets yield infinite distance and an empty witness") {
    WeightedGraph graph;
    graph.node_count = 4;
    graph.edges = {{0, 1}, {2, 3}};
    graph.distances = {1, 1};
    DijkstraResult result = dijkstra(graph, 0);
    CHECK(result.dist[2] == kInfiniteDistance);
    CHECK(witness_path(result, 0, 2).empty());
}

TEST_CASE("dijkstra agrees with exhaustive enumeration on random graphs") {
    Rng rng(99);
    for (int round = 0; round < 40; ++round) {
        int n = 2 + rng.uniform_int(0, 5);  // up to 7 nodes
        WeightedGraph graph = generate_connected_graph(n, 0.4, rng);
        DijkstraResult from_zero = dijkstra(graph, 0);
        for (int target = 0; target < n; ++target) {
            auto brute = brute_force_shortest(graph, 0, target);
            REQUIRE(brute.has_value());  // generated graphs are connected
            CHECK(from_zero.dist[target] == *brute);
        }
    }
}

TEST_CASE("simple-path enumeration visits exactly the simple paths") {
    ShortestPathProblem diamond = test::diamond_problem();
    std::set<std::pair<std::vector<int>, long long>> seen;
    for_each_simple_path(diamond.graph, 0, 3, [&](const std::vector<int>& path, long long length) {
        CHECK(seen.emplace(path, length).second);  // no duplicates
    });
    std::set<std::pair<std::vector<int>, long long>> expected{
        {{0, 3}, 9}, {{0, 1, 3}, 3}, {{0, 2, 3}, 4}};
    CHECK(seen == expected);
}

TEST_CASE("validate_path never throws and classifies correctly") {
    ShortestPathProblem problem = test::five_node_problem();

    auto optimal = validate_path(problem, std::vector<int>{0, 3, 4});
    CHECK(optimal.feasible);
    CHECK(optimal.length == 5);
    CHECK(optimal.optimal);

    auto longer = validate_path(problem, std::vector<int>{0, 3, 4, 1});
    CHECK_FALSE(longer.feasible);  // ends at 1, not the target

    ShortestPathProblem to_two = problem;
    to_two.target = 2;
    to_two.optimal_length = 10;
    auto feasible_suboptimal = validate_path(to_two, std::vector<int>{0, 3, 4, 2});
    CHECK(feasible_suboptimal.feasible);
    CHECK(feasible_suboptimal.optimal);

    CHECK_FALSE(validate_path(problem, std::vector<int>{}).feasible);
    CHECK_FALSE(validate_path(problem, std::vector<int>{4}).feasible);
    CHECK_FALSE(validate_path(problem, std::vector<int>{0, 1, 4}).feasible);     // 0-1 not an edge
    CHECK_FALSE(validate_path(problem, std::vector<int>{0, 3, 0, 3, 4}).feasible);  // repeat
    CHECK_FALSE(validate_path(problem, std::vector<int>{1, 4}).feasible);        // wrong source

    std::vector<long long> wild{0, 3'000'000'000LL, 4};
    CHECK_FALSE(validate_path(problem, std::span<const long long>(wild)).feasible);
    std::vector<long long> negative{0, -3, 4};
    CHECK_FALSE(validate_path(problem, std::span<const long long>(negative)).feasible);
}

TEST_CASE("generated graphs are connected with weights in range") {
    Rng rng(7);
    for (double p : {0.0, 0.2, 1.0}) {
        for (int round = 0; round < 30; ++round) {
            int n = 5 + rng.uniform_int(0, 5);
            WeightedGraph graph = generate_connected_graph(n, p, rng);
            CHECK_NOTHROW(graph.check());
            for (int w : graph.distances) {
                CHECK(w >= 1);
                CHECK(w <= 5);
            }
            DijkstraResult result = dijkstra(graph, 0);
            for (int v = 0; v < n; ++v) CHECK(result.dist[v] != kInfiniteDistance);
        }
    }
}

TEST_CASE("generator edge-probability extremes") {
    Rng rng(3);
    WeightedGraph two = generate_connected_graph(2, 0.0, rng);
    CHECK(two.edges == std::vector<std::pair<int, int>>{{0, 1}});

    WeightedGraph complete = generate_connected_graph(5, 1.0, rng);
    CHECK(complete.edges.size() == 10);  // C(5,2)
}

TEST_CASE("datasets are deterministic, labeled and nontrivial") {
    DatasetParams params;
    params.count = 20;
    params.n_min = 5;
    params.n_max = 8;
    params.seed = 42;
    auto problems = generate_dataset(params);
    REQUIRE(problems.size() == 20);
    CHECK(problems.front().instance_id == "g0000");
    CHECK(problems.back().instance_id == "g0019");
    for (const ShortestPathProblem& problem : problems) {
        CHECK(problem.source == 0);
        CHECK(problem.target == problem.graph.node_count - 1);
        CHECK(problem.optimal_path.size() >= 3);  // no single-edge optima
        auto eval = validate_path(problem, problem.optimal_path);
        CHECK(eval.feasible);
        CHECK(eval.optimal);
    }

    auto again = generate_dataset(params);
    REQUIRE(again.size() == problems.size());
    for (size_t i = 0; i < problems.size(); ++i) {
        CHECK(again[i].graph.edges == problems[i].graph.edges);
        CHECK(again[i].graph.distances == problems[i].graph.distances);
        CHECK(again[i].optimal_path == problems[i].optimal_path);
    }
}

TEST_CASE("two-node datasets hit the rejection cap") {
    DatasetParams params;
    params.count = 1;
    params.n_min = 2;
    params.n_max = 2;
    params.edge_probability = 0.0;
    params.seed = 1;
    CHECK_THROWS_AS(generate_dataset(params), GenerationError);
}

TEST_CASE("neighbors are sorted and complete") {
    WeightedGraph graph = test::five_node_problem().graph;
    CHECK(neighbors(graph, 4) == std::vector<int>{1, 2, 3});
    CHECK(neighbors(graph, 0) == std::vector<int>{3});
    CHECK(neighbors(graph, 1) == std::vector<int>{4});
}
