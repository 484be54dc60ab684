#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tpbench/encoding.hpp"
#include "tpbench/graph.hpp"
#include "tpbench/method.hpp"

namespace tpbench {

// Prompt text with {slot} placeholders; solvers fill {input} with the
// encoded live problem.
struct PromptTemplate {
    std::string text;
    int shots = 0;

    std::string render(
        const std::vector<std::pair<std::string, std::string>>& slots) const;
};

// A solved analogous subproblem offered to the aggregation prompt.
struct Hint {
    int intermediate = 0;
    std::vector<int> path;
    long long length = 0;
};

// One candidate line in the solution-evaluation prompt.
struct SolutionLine {
    std::vector<long long> path;
    long long distance = 0;
};

// Direct-solve template for Io, Cot or Bag (CotSc shares Cot's). shots must
// be 0, 1 or 5; 0-shot carries format instructions instead of exemplars and
// Cot/Bag 0-shot end with the step-by-step cue after {input}.
PromptTemplate solve_template(Method method, int shots, EncodingScheme scheme);

// Neighborhood proposal; always carries the five fixed exemplars.
PromptTemplate propose_template(EncodingScheme scheme);

// Hint aggregation and solution evaluation; one fixed exemplar each.
PromptTemplate aggregate_template(EncodingScheme scheme);
PromptTemplate evaluate_template(EncodingScheme scheme);

// Node evaluation for the stepwise tree search; 0/1/5-shot settings carry
// 0, 1 and 4 exemplars.
PromptTemplate tot_evaluate_template(int shots, EncodingScheme scheme);

// Live {input} blocks.
std::string propose_input(const WeightedGraph& graph, int input_node, EncodingScheme scheme);
std::string tot_evaluate_input(const WeightedGraph& graph, const std::vector<int>& candidates,
                               int target, EncodingScheme scheme);
std::string aggregate_input(const WeightedGraph& graph, const std::vector<Hint>& hints,
                            int source, int target, EncodingScheme scheme);
std::string evaluate_input(const WeightedGraph& graph, int source, int target,
                           const SolutionLine& first, const SolutionLine& second,
                           EncodingScheme scheme);

// Canonical answer sentences; shared by exemplar assembly, the simulated
// backend and round-trip tests.
std::string render_path_answer(const std::vector<int>& path, long long distance);
std::string render_cot_answer(const WeightedGraph& graph, const std::vector<int>& path,
                              long long distance);
std::string render_neighbor_answer(const std::vector<int>& neighbor_nodes);
std::string render_hint_line(int source, int intermediate, const std::vector<int>& path,
                             long long distance);
std::string render_aggregate_answer(int source, int target, const std::vector<int>& path,
                                    long long distance);
std::string render_solution_line(int index, int source, int target,
                                 const std::vector<long long>& path, long long distance);
std::string render_tot_choice_answer(long long node, const std::vector<int>& path,
                                     long long distance);

// Exact aggregation arithmetic: the cheapest valid construction "hint path
// plus closing edge (intermediate, target)". Hint paths are revalidated
// against the graph (claimed lengths ignored); constructions that repeat a
// node or lack the closing edge are skipped. Ties go to the earlier hint.
// nullopt when no hint yields a valid path.
std::optional<std::pair<std::vector<int>, long long>> best_hint_extension(
    const WeightedGraph& graph, const std::vector<Hint>& hints, int source, int target);

struct TotChoice {
    int node = -1;
    std::vector<int> path;  // the optimal continuation the chosen node forms
    long long distance = 0;
};

// The ideal node-evaluation verdict, shared by exemplar assembly and the
// simulated backend. With a known source, the winner is the candidate lying
// earliest on one fixed optimal source-to-target path, so a walker that
// follows successive verdicts replays that path. Without a source (< 0), or
// when no candidate is on the path, the smallest true remaining distance
// wins, ties to the first listed. `candidates` must be nonempty.
TotChoice choose_promising_node(const WeightedGraph& graph, const std::vector<int>& candidates,
                                int source, int target);

// Fixed small problems embedded in few-shot templates; ids x0..x4, disjoint
// from every generated dataset by construction.
const std::vector<ShortestPathProblem>& exemplar_problems();

}  // namespace tpbench
