#include <doctest.h>

#include <sstream>

#include "tpbench/parse.hpp"
#include "tpbench/prompts.hpp"
#include "tpbench/rng.hpp"

using namespace tpbench;

TEST_CASE("canonical answer sentences parse to their stated content") {
    auto direct = parse_path_answer(
        "The shortest path from the source node to the target node is [0, 3, 4]. "
        "The shortest distance is 5.");
    REQUIRE(direct.has_value());
    CHECK(direct->path == std::vector<long long>{0, 3, 4});
    CHECK(direct->claimed_distance == 5);

    auto verdict = parse_solution_choice(
        "Solution 1 is valid because it can reach the target node and all the edges in Solution "
        "1 are real edges in the Edge set. Solution 2 is valid because it can reach the target "
        "node and all the edges in Solution 2 are real edges in the Edge set. Solution 1 is "
        "better than Solution 2 because the path in Solution 1 is shorter than that in Solution "
        "2. So the shortest path from the source node 0 to the target node 5 is [0, 2, 5]. The "
        "shortest distance is 5.",
        2);
    CHECK(verdict == 1);

    std::string promising =
        "The most promising one that forms the shortest path to the target node in the input "
        "nodes is 4. The shortest path is [4, 2, 6]. The shortest distance is 4.";
    CHECK(parse_promising_node(promising) == 4);
    auto continuation = parse_path_answer(promising);
    REQUIRE(continuation.has_value());
    CHECK(continuation->path == std::vector<long long>{4, 2, 6});
    CHECK(continuation->claimed_distance == 4);
}

TEST_CASE("the last flat list wins when the reply restates the graph") {
    auto parsed = parse_path_answer(
        "The nodes are [0, 1, 2, 3, 4] and the edge set is [[0, 3], [1, 4], [2, 4], [3, 4]]. "
        "After checking each candidate the answer is: the shortest path from the source node to "
        "the target node is [0, 3, 4]. The shortest distance is 5.");
    REQUIRE(parsed.has_value());
    CHECK(parsed->path == std::vector<long long>{0, 3, 4});
}

TEST_CASE("nested lists are not flat lists") {
    auto lists = extract_flat_int_lists("edges [[0, 3], [1, 4]] then [5, 6] and [[7, 8]]");
    REQUIRE(lists.size() == 1);
    CHECK(lists[0] == std::vector<long long>{5, 6});
}

TEST_CASE("parsing is total over arbitrary text") {
    CHECK_FALSE(parse_path_answer("").has_value());
    CHECK_FALSE(parse_path_answer("I cannot find any path.").has_value());
    CHECK_FALSE(parse_path_answer("brackets [ but no close").has_value());
    CHECK_FALSE(parse_path_answer("empty list [] only").has_value());
    CHECK_FALSE(parse_solution_choice("Solution 3 is better", 2).has_value());
    CHECK_FALSE(parse_solution_choice("Solution 99999999999999999999 is better", 2).has_value());
    CHECK_FALSE(parse_promising_node("nothing to see").has_value());

    // Overflow-scale digit runs must not crash the parser.
    auto huge = parse_path_answer("is [99999999999999999999999, 1]. The shortest distance is 3.");
    if (huge) CHECK(huge->path.size() == 2);
}

TEST_CASE("neighbor lists may be empty and take the last list") {
    auto empty = parse_neighbor_list("The neighborhood node list of the input node is [].");
    REQUIRE(empty.has_value());
    CHECK(empty->empty());

    auto last = parse_neighbor_list("[1, 2] revised: [2, 3, 4]");
    REQUIRE(last.has_value());
    CHECK(*last == std::vector<long long>{2, 3, 4});
}

TEST_CASE("solution choice takes the final assertion and respects bounds") {
    CHECK(parse_solution_choice("Solution 1 is better. On reflection, Solution 2 is better "
                                "because it is shorter.",
                                2) == 2);
    CHECK(parse_solution_choice("solution 2 is better", 2) == 2);  // case-insensitive
    CHECK_FALSE(parse_solution_choice("Solution 0 is better", 2).has_value());
}

TEST_CASE("formatted answers round-trip through the parser") {
    Rng rng(2024);
    for (int round = 0; round < 1000; ++round) {
        int length = rng.uniform_int(2, 8);
        std::vector<int> path;
        for (int i = 0; i < length; ++i) path.push_back(rng.uniform_int(0, 9));
        long long distance = rng.uniform_int(1, 500);
        auto parsed = parse_path_answer(render_path_answer(path, distance));
        REQUIRE(parsed.has_value());
        CHECK(parsed->claimed_distance == distance);
        REQUIRE(parsed->path.size() == path.size());
        for (size_t i = 0; i < path.size(); ++i) CHECK(parsed->path[i] == path[i]);
    }
}
