#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tpbench/backend.hpp"
#include "tpbench/encoding.hpp"
#include "tpbench/graph.hpp"
#include "tpbench/method.hpp"
#include "tpbench/prompts.hpp"
#include "tpbench/strategies.hpp"

namespace tpbench {

enum class ProposeMode { Llm, Symbolic };
enum class SelectMode { Llm, Symbolic };

std::string propose_mode_name(ProposeMode mode);
ProposeMode propose_mode_from_name(const std::string& name);
std::string select_mode_name(SelectMode mode);
SelectMode select_mode_from_name(const std::string& name);

// A smaller shortest-path problem analogous to its parent: same graph and
// source, aiming at a neighbor of the parent's target.
struct AnalogousProblem {
    std::string parent_instance_id;
    int intermediate_target = -1;
    std::string encoded;  // input block as it appears in prompts
    int depth = 1;
};

// Everything the refinement did on one instance, for inspection and tests.
struct TpTrace {
    Attempt initial;  // the plain base-method attempt on the input problem
    std::vector<std::pair<AnalogousProblem, Attempt>> analogous;
    std::optional<std::vector<long long>> aggregated;  // candidate built from hints
    std::optional<std::vector<long long>> selected;    // one of {initial, aggregated}
    std::string rationale;
    std::vector<std::string> warnings;  // e.g. proposal parse fallback
};

struct TpOptions {
    int layers = 1;            // refinement depth K; 0 means the base method verbatim
    Method base = Method::Io;  // io or cot
    int shots = 5;
    EncodingScheme encoding = EncodingScheme::Adjacency;
    ProposeMode propose_mode = ProposeMode::Llm;
    SelectMode select_mode = SelectMode::Llm;
};

struct TpResult {
    Attempt attempt;  // transcript and tokens cover every nested call
    TpTrace trace;
};

// Refines the base method's answer through K stacked layers of analogous
// subproblems. K=0 returns the base solver's attempt untouched (same
// prompts, same tags). Subproblem failures degrade to missing hints; the
// attempt only fails outright when every signal is lost.
TpResult solve_with_tp(const ShortestPathProblem& problem, const TpOptions& options,
                       Backend& backend);

// The three refinement steps, exposed standalone for tests. Each issues at
// most one backend call (propose/aggregate/evaluate prompts respectively).
std::vector<AnalogousProblem> propose_analogous(const ShortestPathProblem& problem,
                                                EncodingScheme encoding, Backend& backend,
                                                ProposeMode mode);

std::optional<std::vector<long long>> aggregate_hints(const ShortestPathProblem& problem,
                                                      const std::vector<Hint>& hints,
                                                      EncodingScheme encoding, Backend& backend);

std::optional<std::vector<long long>> select_better(const ShortestPathProblem& problem,
                                                    const std::optional<std::vector<long long>>& initial,
                                                    const std::optional<std::vector<long long>>& candidate,
                                                    EncodingScheme encoding, Backend& backend,
                                                    SelectMode mode);

}  // namespace tpbench
