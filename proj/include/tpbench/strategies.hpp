#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tpbench/backend.hpp"
#include "tpbench/encoding.hpp"
#include "tpbench/graph.hpp"
#include "tpbench/method.hpp"

namespace tpbench {

// Full interaction record of one method on one instance.
struct Attempt {
    std::string instance_id;
    Method method = Method::Io;
    int shots = 0;
    EncodingScheme encoding = EncodingScheme::Adjacency;
    int layers = 0;  // refinement depth; 0 for the base methods
    std::vector<TranscriptEntry> transcript;  // calls in issue order
    std::optional<std::vector<long long>> final_path;
    PathEvaluation evaluation;  // recomputed from final_path; absent path -> infeasible
    long long prompt_tokens = 0;
    long long completion_tokens = 0;
    std::string error;  // first backend failure, when any call failed
};

struct CotScParams {
    int samples = 5;
    double temperature = 0.7;
};

struct TotParams {
    int max_steps = 0;  // 0 -> twice the node count
};

// Single-call prompting: one request, parse, validate.
Attempt solve_io(const ShortestPathProblem& problem, int shots, EncodingScheme encoding,
                 Backend& backend);
Attempt solve_cot(const ShortestPathProblem& problem, int shots, EncodingScheme encoding,
                  Backend& backend);
Attempt solve_bag(const ShortestPathProblem& problem, int shots, EncodingScheme encoding,
                  Backend& backend);

// Self-consistency: m sampled chain-of-thought completions; the most frequent
// feasible path wins, ties to the smaller validated length, then to the
// earlier sample.
Attempt solve_cot_sc(const ShortestPathProblem& problem, int shots, EncodingScheme encoding,
                     Backend& backend, const CotScParams& params = {});

// Stepwise search: from the current node, propose neighbors, drop visited
// ones, and ask the backend which remaining candidate is most promising. The
// named node is accepted verbatim (a backend that keeps naming visited nodes
// loops until the step cap, mirroring the failure mode this method has in
// practice). Evaluate-parse failure falls back to the smallest candidate.
Attempt solve_tot(const ShortestPathProblem& problem, int shots, EncodingScheme encoding,
                  Backend& backend, const TotParams& params = {});

// Issues one request with the given tag, appends it to the attempt's
// transcript and usage totals. Backend failure stores the error on the
// attempt and yields nullopt. Shared by all strategies.
std::optional<std::string> record_call(Attempt& attempt, Backend& backend,
                                       const std::string& prompt, const std::string& tag,
                                       double temperature = 0.0);

// Recomputes attempt.evaluation from final_path.
void finalize_attempt(Attempt& attempt, const ShortestPathProblem& problem);

}  // namespace tpbench
