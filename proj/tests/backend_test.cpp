#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "test_support.hpp"
#include "tpbench/backend.hpp"
#include "tpbench/encoding.hpp"
#include "tpbench/errors.hpp"
#include "tpbench/http_backend.hpp"
#include "tpbench/oracle.hpp"
#include "tpbench/parse.hpp"
#include "tpbench/prompts.hpp"
#include "tpbench/rng.hpp"
#include "tpbench/scripted.hpp"

using namespace tpbench;
using tpbench::test::TempDir;
using tpbench::test::diamond_problem;
using tpbench::test::five_node_problem;

namespace {

// Greedy walking fails here: from 0 the cheap edge to 1 leads into a detour
// of total length 3, while the direct edge (0, 3) costs only 2.
ShortestPathProblem detour_problem() {
    ShortestPathProblem problem;
    problem.instance_id = "detour";
    problem.graph.node_count = 4;
    problem.graph.edges = {{0, 1}, {0, 3}, {1, 2}, {2, 3}};
    problem.graph.distances = {1, 2, 1, 1};
    problem.source = 0;
    problem.target = 3;
    problem.optimal_length = 2;
    problem.optimal_path = {0, 3};
    problem.graph.check();
    return problem;
}

std::string solve_prompt_for(const ShortestPathProblem& problem) {
    return solve_template(Method::Io, 0, EncodingScheme::Adjacency)
        .render({{"input", encode_problem(problem, EncodingScheme::Adjacency)}});
}

ChatRequest request_for(const std::string& prompt, const std::string& tag) {
    ChatRequest request;
    request.prompt = prompt;
    request.request_tag = tag;
    return request;
}

}  // namespace

TEST_CASE("a clean simulated model answers solve prompts exactly") {
    auto problem = detour_problem();
    OracleBackend backend;
    auto response = backend.complete(request_for(solve_prompt_for(problem), "t/io/s0/adjacency/L0/solve"));
    CHECK(response.text == render_path_answer({0, 3}, 2));
    CHECK(response.prompt_tokens == count_words(solve_prompt_for(problem)));
    CHECK(response.completion_tokens == count_words(response.text));
}

TEST_CASE("forced degradation picks the configured wrong answer") {
    auto detour = detour_problem();

    OracleBackend greedy({/*p_suboptimal=*/1.0, 0.0, SuboptimalStrategy::GreedyNearest});
    CHECK(greedy.complete(request_for(solve_prompt_for(detour), "t/io/s0/adjacency/L0/solve")).text ==
          render_path_answer({0, 1, 2, 3}, 3));

    auto diamond = diamond_problem();
    OracleBackend second({1.0, 0.0, SuboptimalStrategy::SecondShortest});
    CHECK(second.complete(request_for(solve_prompt_for(diamond), "t/io/s0/adjacency/L0/solve")).text ==
          render_path_answer({0, 2, 3}, 4));

    // The invalid reply names a non-edge (or nonexistent node) but keeps the
    // true distance, so it reads plausibly and fails validation.
    OracleBackend invalid({0.0, /*p_invalid=*/1.0});
    auto reply = invalid.complete(request_for(solve_prompt_for(detour), "t/io/s0/adjacency/L0/solve")).text;
    CHECK(reply == render_path_answer({0, 1, 3}, 2));
    auto parsed = parse_path_answer(reply);
    REQUIRE(parsed.has_value());
    CHECK_FALSE(validate_path(detour, parsed->path).feasible);
}

TEST_CASE("error draws partition one uniform sample per request tag") {
    auto problem = detour_problem();
    const std::string prompt = solve_prompt_for(problem);
    const std::string exact = render_path_answer({0, 3}, 2);
    const std::string suboptimal = render_path_answer({0, 1, 2, 3}, 3);
    const std::string invalid = render_path_answer({0, 1, 3}, 2);

    OracleBackend backend({0.4, 0.3, SuboptimalStrategy::GreedyNearest}, /*seed=*/7);
    int exact_n = 0, suboptimal_n = 0, invalid_n = 0;
    for (int i = 0; i < 300; ++i) {
        auto text = backend.complete(request_for(prompt, "t" + std::to_string(i))).text;
        if (text == exact) ++exact_n;
        else if (text == suboptimal) ++suboptimal_n;
        else if (text == invalid) ++invalid_n;
        else FAIL("unclassifiable reply: " << text);
    }
    CHECK(exact_n + suboptimal_n + invalid_n == 300);
    CHECK(invalid_n > 50);      // p = 0.3
    CHECK(invalid_n < 130);
    CHECK(suboptimal_n > 80);   // p = 0.4
    CHECK(suboptimal_n < 160);
    CHECK(exact_n > 50);        // p = 0.3
    CHECK(exact_n < 130);

    // Same seed and tag always reproduce the same reply, independent of how
    // many calls came before.
    OracleBackend replay({0.4, 0.3, SuboptimalStrategy::GreedyNearest}, 7);
    CHECK(replay.complete(request_for(prompt, "t123")).text ==
          backend.complete(request_for(prompt, "t123")).text);
}

TEST_CASE("degradation never touches non-solve replies") {
    auto problem = five_node_problem();
    std::string propose = propose_template(EncodingScheme::Adjacency)
                              .render({{"input", propose_input(problem.graph, 4,
                                                               EncodingScheme::Adjacency)}});
    OracleBackend clean;
    OracleBackend broken({0.0, 1.0});
    CHECK(clean.complete(request_for(propose, "a")).text ==
          broken.complete(request_for(propose, "a")).text);
}

TEST_CASE("a populated registry rejects prompts about unknown graphs") {
    OracleBackend backend;
    backend.registry().add(diamond_problem());
    CHECK_NOTHROW(backend.complete(request_for(solve_prompt_for(diamond_problem()), "a")));
    CHECK_THROWS_AS(backend.complete(request_for(solve_prompt_for(detour_problem()), "b")),
                    OracleParseError);

    OracleBackend open;  // empty registry answers any well-formed prompt
    CHECK_NOTHROW(open.complete(request_for(solve_prompt_for(detour_problem()), "c")));
}

TEST_CASE("neighborhood prompts get the sorted true neighbor list") {
    auto problem = five_node_problem();
    std::string prompt = propose_template(EncodingScheme::Adjacency)
                             .render({{"input", propose_input(problem.graph, 4,
                                                              EncodingScheme::Adjacency)}});
    OracleBackend backend;
    CHECK(backend.complete(request_for(prompt, "a")).text ==
          render_neighbor_answer({1, 2, 3}));
}

TEST_CASE("hint aggregation extends the best hint by its closing edge") {
    auto problem = five_node_problem();
    OracleBackend backend;

    std::vector<Hint> good{{3, {0, 3}, 2}};
    std::string prompt = aggregate_template(EncodingScheme::Adjacency)
                             .render({{"input", aggregate_input(problem.graph, good, 0, 4,
                                                                EncodingScheme::Adjacency)}});
    CHECK(backend.complete(request_for(prompt, "a")).text ==
          render_aggregate_answer(0, 4, {0, 3, 4}, 5));

    // (0, 1) is not an edge, so the only hint is unusable.
    std::vector<Hint> bad{{1, {0, 1}, 1}};
    std::string hopeless = aggregate_template(EncodingScheme::Adjacency)
                               .render({{"input", aggregate_input(problem.graph, bad, 0, 4,
                                                                  EncodingScheme::Adjacency)}});
    CHECK(backend.complete(request_for(hopeless, "b")).text ==
          "The hints do not lead to a valid path from the source node 0 to the target node 4.");
}

TEST_CASE("candidate evaluation judges validity and prefers the shorter path") {
    auto problem = diamond_problem();
    OracleBackend backend;
    auto ask = [&](const SolutionLine& first, const SolutionLine& second) {
        std::string prompt = evaluate_template(EncodingScheme::Adjacency)
                                 .render({{"input", evaluate_input(problem.graph, 0, 3, first,
                                                                   second,
                                                                   EncodingScheme::Adjacency)}});
        return backend.complete(request_for(prompt, "a")).text;
    };

    std::string both_valid = ask({{0, 1, 3}, 3}, {{0, 3}, 9});
    CHECK(both_valid.find("Solution 1 is better than Solution 2") != std::string::npos);
    CHECK(both_valid.find("is [0, 1, 3]. The shortest distance is 3.") != std::string::npos);
    CHECK(parse_solution_choice(both_valid, 2) == 1);

    std::string second_wins = ask({{0, 3}, 9}, {{0, 1, 3}, 3});
    CHECK(parse_solution_choice(second_wins, 2) == 2);

    std::string one_invalid = ask({{0, 1, 3}, 3}, {{0, 2}, 2});
    CHECK(one_invalid.find("Solution 2 is not valid") != std::string::npos);
    CHECK(parse_solution_choice(one_invalid, 2) == 1);
}

TEST_CASE("node evaluation follows the problem's own optimal path when known") {
    auto problem = diamond_problem();
    std::string prompt = tot_evaluate_template(0, EncodingScheme::Adjacency)
                             .render({{"input", tot_evaluate_input(problem.graph, {2, 1}, 3,
                                                                   EncodingScheme::Adjacency)}});

    // Registered: the source is known, so the winner is the candidate on the
    // optimal 0 -> 3 path, even though both candidates are equally far from
    // the target.
    OracleBackend registered;
    registered.registry().add(problem);
    CHECK(registered.complete(request_for(prompt, "a")).text ==
          render_tot_choice_answer(1, {1, 3}, 2));

    // Unregistered: remaining distance ties 2 vs 2, first listed wins.
    OracleBackend anonymous;
    CHECK(anonymous.complete(request_for(prompt, "b")).text ==
          render_tot_choice_answer(2, {2, 3}, 2));
}

TEST_CASE("malformed oracle prompts raise parse errors") {
    OracleBackend backend;
    CHECK_THROWS_AS(backend.complete(request_for("free-form chatter", "a")), OracleParseError);

    auto problem = diamond_problem();
    std::string no_candidates =
        tot_evaluate_template(0, EncodingScheme::Adjacency)
            .render({{"input", tot_evaluate_input(problem.graph, {}, 3,
                                                  EncodingScheme::Adjacency)}});
    CHECK_THROWS_AS(backend.complete(request_for(no_candidates, "b")), OracleParseError);
}

TEST_CASE("degradation strategy names round-trip") {
    for (auto strategy : {SuboptimalStrategy::GreedyNearest, SuboptimalStrategy::SecondShortest})
        CHECK(suboptimal_strategy_from_name(suboptimal_strategy_name(strategy)) == strategy);
    CHECK_THROWS_AS(suboptimal_strategy_from_name("random"), std::invalid_argument);
}

TEST_CASE("word counting ignores repeated and surrounding whitespace") {
    CHECK(count_words("") == 0);
    CHECK(count_words("   \n\t ") == 0);
    CHECK(count_words("one") == 1);
    CHECK(count_words("  a  b\nc\t d ") == 4);
}

TEST_CASE("scripted replies are exact and unknown prompts are rejected") {
    ScriptedBackend backend;
    backend.add("ping", "pong");
    backend.add("counted", "a b c", 11, 3);
    CHECK(backend.size() == 2);

    auto echo = backend.complete(request_for("ping", "a"));
    CHECK(echo.text == "pong");
    CHECK(echo.prompt_tokens == count_words("ping"));
    CHECK(echo.completion_tokens == count_words("pong"));

    auto counted = backend.complete(request_for("counted", "b"));
    CHECK(counted.prompt_tokens == 11);
    CHECK(counted.completion_tokens == 3);

    CHECK_THROWS_AS(backend.complete(request_for("never scripted", "c")), BackendRejected);
}

TEST_CASE("a recorded transcript replays through a scripted backend") {
    TempDir dir;
    {
        TranscriptWriter writer(dir.file("log.jsonl"));
        writer.append({"tag1", "prompt one", "reply one", 4, 2, 1});
        writer.append({"tag2", "prompt two", "reply two", 5, 3, 1});
    }
    auto backend = ScriptedBackend::from_transcript(dir.file("log.jsonl"));
    CHECK(backend.size() == 2);
    auto response = backend.complete(request_for("prompt two", "x"));
    CHECK(response.text == "reply two");
    CHECK(response.prompt_tokens == 5);
    CHECK(response.completion_tokens == 3);
}

TEST_CASE("transcript files round-trip and corrupt lines are counted, not fatal") {
    TempDir dir;
    {
        TranscriptWriter writer(dir.file("log.jsonl"));
        writer.append({"g0/io/s0/adjacency/L0/solve", "p1", "r1", 10, 5, 2});
        writer.append({"g0/tp/s5/adjacency/L2/sub1/solve", "p2", "r2 with spaces", 20, 7, 3});
    }
    {
        std::ofstream out(dir.file("log.jsonl"), std::ios::app);
        out << "{not json\n";
    }
    auto transcript = read_transcript(dir.file("log.jsonl"));
    CHECK(transcript.skipped_lines == 1);
    REQUIRE(transcript.entries.size() == 2);
    CHECK(transcript.entries[0].request_tag == "g0/io/s0/adjacency/L0/solve");
    CHECK(transcript.entries[0].prompt == "p1");
    CHECK(transcript.entries[0].text == "r1");
    CHECK(transcript.entries[0].prompt_tokens == 10);
    CHECK(transcript.entries[0].completion_tokens == 5);
    CHECK(transcript.entries[1].latency_ms == 3);
}

TEST_CASE("the logging decorator records successes and skips failures") {
    TempDir dir;
    ScriptedBackend inner;
    inner.add("known", "fine");
    {
        TranscriptWriter writer(dir.file("log.jsonl"));
        LoggingBackend logged(inner, writer);
        CHECK(logged.complete(request_for("known", "tag-a")).text == "fine");
        CHECK_THROWS_AS(logged.complete(request_for("unknown", "tag-b")), BackendRejected);
    }
    auto transcript = read_transcript(dir.file("log.jsonl"));
    REQUIRE(transcript.entries.size() == 1);
    CHECK(transcript.entries[0].request_tag == "tag-a");
    CHECK(transcript.entries[0].text == "fine");
}

TEST_CASE("usage totals group by method, shots and layer count") {
    TranscriptFile transcript;
    transcript.entries = {
        {"g0/io/s0/adjacency/L0/solve", "", "", 10, 5, 0},
        {"g1/io/s0/gml/L0/solve", "", "", 7, 2, 0},
        {"g0/tp/s5/adjacency/L2/solve", "", "", 100, 9, 0},
        {"g0/tp/s5/adjacency/L2/sub1/sub0/solve", "", "", 50, 4, 0},
        {"not-a-tag", "", "", 999, 999, 0},
    };
    auto totals = usage_totals(transcript);
    CHECK(totals.skipped == 1);
    REQUIRE(totals.groups.size() == 2);

    const auto& io = totals.groups.at({"io", 0, 0});
    CHECK(io.prompt_tokens == 17);
    CHECK(io.completion_tokens == 7);
    CHECK(io.calls == 2);

    const auto& tp = totals.groups.at({"tp", 5, 2});
    CHECK(tp.prompt_tokens == 150);
    CHECK(tp.completion_tokens == 13);
    CHECK(tp.calls == 2);
}

TEST_CASE("request tags follow the fixed grammar") {
    CHECK(make_request_tag("g0001", "tp", 5, "adjacency", 2, "sub3/solve") ==
          "g0001/tp/s5/adjacency/L2/sub3/solve");
    CHECK(make_request_tag("x", "io", 0, "gml", 0, "solve") == "x/io/s0/gml/L0/solve");
}

TEST_CASE("http credentials come from the environment alone") {
    HttpBackendConfig config;
    config.api_key_env = "TPBENCH_TEST_KEY_THAT_IS_NEVER_SET";
    unsetenv(config.api_key_env.c_str());
    CHECK_THROWS_AS(HttpBackend{config}, BackendError);

    setenv(config.api_key_env.c_str(), "dummy-value", 1);
    CHECK_NOTHROW(HttpBackend{config});
    unsetenv(config.api_key_env.c_str());

    HttpBackendConfig anonymous;
    anonymous.api_key_env = "";  // endpoints without auth need no variable
    CHECK_NOTHROW(HttpBackend{anonymous});
}
