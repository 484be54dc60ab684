#include <doctest.h>

#include "test_support.hpp"
#include "tpbench/encoding.hpp"
#include "tpbench/errors.hpp"
#include "tpbench/prompt_reader.hpp"

using namespace tpbench;

TEST_CASE("encoding names round-trip") {
    for (auto scheme :
         {EncodingScheme::Adjacency, EncodingScheme::EdgeDescription, EncodingScheme::Gml})
        CHECK(encoding_from_name(encoding_name(scheme)) == scheme);
    CHECK_THROWS_AS(encoding_from_name("matrix"), std::invalid_argument);
}

TEST_CASE("adjacency encoding of the five-node fixture") {
    ShortestPathProblem problem = test::five_node_problem();
    CHECK(encode_problem(problem, EncodingScheme::Adjacency) ==
          "Node set: [0, 1, 2, 3, 4]\n"
          "Edge set: [[0, 3], [1, 4], [2, 4], [3, 4]]\n"
          "Edge distance set: [2, 3, 5, 3]\n"
          "Source Node: 0\n"
          "Target Node: 4");
    CHECK(encode_graph_body(problem.graph, EncodingScheme::Adjacency, false) ==
          "Node set: [0, 1, 2, 3, 4]\n"
          "Edge set: [[0, 3], [1, 4], [2, 4], [3, 4]]");
}

TEST_CASE("edge-description encoding is one prose sentence") {
    ShortestPathProblem problem = test::diamond_problem();
    CHECK(encode_graph_body(problem.graph, EncodingScheme::EdgeDescription) ==
          "In an undirected graph, the nodes are numbered from 0 to 3, and the edges are "
          "represented as: an edge between node 0 and node 1 with distance 1, an edge between "
          "node 0 and node 2 with distance 2, an edge between node 0 and node 3 with distance 9, "
          "an edge between node 1 and node 3 with distance 2, an edge between node 2 and node 3 "
          "with distance 2.");
}

TEST_CASE("gml encoding carries nodes then labeled edges") {
    WeightedGraph graph;
    graph.node_count = 2;
    graph.edges = {{0, 1}};
    graph.distances = {4};
    CHECK(encode_graph_body(graph, EncodingScheme::Gml) ==
          "graph[comment \"This is an undirected graph.\" node [id 0] node [id 1] "
          "edge [label \"Edge between node 0 and node 1 with distance 4\"]]");
}

TEST_CASE("every encoding reconstructs to the same graph") {
    ShortestPathProblem problem = test::five_node_problem();
    for (auto scheme :
         {EncodingScheme::Adjacency, EncodingScheme::EdgeDescription, EncodingScheme::Gml}) {
        WeightedGraph parsed = read_graph_body(encode_graph_body(problem.graph, scheme));
        CHECK(parsed.node_count == problem.graph.node_count);
        CHECK(parsed.edges == problem.graph.edges);
        CHECK(parsed.distances == problem.graph.distances);
    }
}

TEST_CASE("subproblem encoding swaps only the target line") {
    ShortestPathProblem problem = test::five_node_problem();
    std::string base = encode_problem(problem, EncodingScheme::Adjacency);
    std::string sub = encode_subproblem(problem, 3, EncodingScheme::Adjacency);
    CHECK(sub ==
          base.substr(0, base.rfind("Target Node: 4")) + "Target Node: 3");
}

TEST_CASE("malformed bodies are rejected") {
    CHECK_THROWS_AS(read_graph_body("complete nonsense"), OracleParseError);
    CHECK_THROWS_AS(read_graph_body("Node set: [0, 1]\nEdge set: [[0, 5]]\n"
                                    "Edge distance set: [1]"),
                    OracleParseError);
}
