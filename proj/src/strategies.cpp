#include "tpbench/strategies.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "tpbench/errors.hpp"
#include "tpbench/parse.hpp"
#include "tpbench/prompts.hpp"

namespace tpbench {

std::string method_name(Method method) {
    switch (method) {
        case Method::Io: return "io";
        case Method::Cot: return "cot";
        case Method::CotSc: return "cot-sc";
        case Method::Bag: return "bag";
        case Method::Tot: return "tot";
        case Method::Tp: return "tp";
    }
    throw std::invalid_argument("unknown method");
}

Method method_from_name(const std::string& name) {
    if (name == "io") return Method::Io;
    if (name == "cot") return Method::Cot;
    if (name == "cot-sc") return Method::CotSc;
    if (name == "bag") return Method::Bag;
    if (name == "tot") return Method::Tot;
    if (name == "tp") return Method::Tp;
    throw std::invalid_argument("unknown method: " + name);
}

std::optional<std::string> record_call(Attempt& attempt, Backend& backend,
                                       const std::string& prompt, const std::string& tag,
                                       double temperature) {
    ChatRequest request;
    request.prompt = prompt;
    request.temperature = temperature;
    request.request_tag = tag;
    try {
        ChatResponse response = backend.complete(request);
        attempt.transcript.push_back({tag, prompt, response.text, response.prompt_tokens,
                                      response.completion_tokens, response.latency_ms});
        attempt.prompt_tokens += response.prompt_tokens;
        attempt.completion_tokens += response.completion_tokens;
        return response.text;
    } catch (const BackendError& error) {
        attempt.error = error.what();
        return std::nullopt;
    }
}

void finalize_attempt(Attempt& attempt, const ShortestPathProblem& problem) {
    if (attempt.final_path)
        attempt.evaluation = validate_path(problem, *attempt.final_path);
    else
        attempt.evaluation = PathEvaluation{};
}

namespace {

Attempt make_attempt(const ShortestPathProblem& problem, Method method, int shots,
                     EncodingScheme encoding) {
    Attempt attempt;
    attempt.instance_id = problem.instance_id;
    attempt.method = method;
    attempt.shots = shots;
    attempt.encoding = encoding;
    return attempt;
}

std::string solve_tag(const Attempt& attempt, const std::string& step) {
    return make_request_tag(attempt.instance_id, method_name(attempt.method), attempt.shots,
                            encoding_name(attempt.encoding), attempt.layers, step);
}

Attempt single_solve(Method method, const ShortestPathProblem& problem, int shots,
                     EncodingScheme encoding, Backend& backend) {
    Attempt attempt = make_attempt(problem, method, shots, encoding);
    PromptTemplate tmpl = solve_template(method, shots, encoding);
    std::string prompt = tmpl.render({{"input", encode_problem(problem, encoding)}});
    if (auto reply = record_call(attempt, backend, prompt, solve_tag(attempt, "solve"))) {
        if (auto parsed = parse_path_answer(*reply)) attempt.final_path = parsed->path;
    }
    finalize_attempt(attempt, problem);
    return attempt;
}

}  // namespace

Attempt solve_io(const ShortestPathProblem& problem, int shots, EncodingScheme encoding,
                 Backend& backend) {
    return single_solve(Method::Io, problem, shots, encoding, backend);
}

Attempt solve_cot(const ShortestPathProblem& problem, int shots, EncodingScheme encoding,
                  Backend& backend) {
    return single_solve(Method::Cot, problem, shots, encoding, backend);
}

Attempt solve_bag(const ShortestPathProblem& problem, int shots, EncodingScheme encoding,
                  Backend& backend) {
    return single_solve(Method::Bag, problem, shots, encoding, backend);
}

Attempt solve_cot_sc(const ShortestPathProblem& problem, int shots, EncodingScheme encoding,
                     Backend& backend, const CotScParams& params) {
    if (params.samples < 1) throw std::invalid_argument("cot-sc needs at least one sample");
    Attempt attempt = make_attempt(problem, Method::CotSc, shots, encoding);
    PromptTemplate tmpl = solve_template(Method::Cot, shots, encoding);
    std::string prompt = tmpl.render({{"input", encode_problem(problem, encoding)}});

    struct Votes {
        int count = 0;
        long long length = 0;
        int first_sample = 0;
    };
    std::map<std::vector<long long>, Votes> ballots;
    for (int sample = 1; sample <= params.samples; ++sample) {
        auto reply = record_call(attempt, backend, prompt,
                                 solve_tag(attempt, "sample" + std::to_string(sample)),
                                 params.temperature);
        if (!reply) break;  // backend failure: the attempt is already marked
        auto parsed = parse_path_answer(*reply);
        if (!parsed) continue;
        PathEvaluation eval = validate_path(problem, parsed->path);
        if (!eval.feasible) continue;  // only valid paths get a vote
        auto [it, inserted] = ballots.try_emplace(parsed->path, Votes{0, *eval.length, sample});
        ++it->second.count;
    }

    if (attempt.error.empty()) {
        const std::vector<long long>* winner = nullptr;
        Votes best{};
        for (const auto& [path, votes] : ballots) {
            bool better = winner == nullptr || votes.count > best.count ||
                          (votes.count == best.count &&
                           (votes.length < best.length ||
                            (votes.length == best.length && votes.first_sample < best.first_sample)));
            if (better) {
                winner = &path;
                best = votes;
            }
        }
        if (winner) attempt.final_path = *winner;
    }
    finalize_attempt(attempt, problem);
    return attempt;
}

Attempt solve_tot(const ShortestPathProblem& problem, int shots, EncodingScheme encoding,
                  Backend& backend, const TotParams& params) {
    Attempt attempt = make_attempt(problem, Method::Tot, shots, encoding);
    int max_steps = params.max_steps > 0 ? params.max_steps : 2 * problem.graph.node_count;
    PromptTemplate propose = propose_template(encoding);
    PromptTemplate evaluate = tot_evaluate_template(shots, encoding);

    std::vector<long long> path{problem.source};
    std::set<long long> visited{problem.source};
    long long current = problem.source;
    for (int step = 1; step <= max_steps && current != problem.target; ++step) {
        std::string label = "step" + std::to_string(step);
        std::string propose_prompt = propose.render(
            {{"input", propose_input(problem.graph, static_cast<int>(current), encoding)}});
        auto proposal = record_call(attempt, backend, propose_prompt,
                                    solve_tag(attempt, label + "/propose"));
        if (!proposal) break;
        auto proposed = parse_neighbor_list(*proposal);
        if (!proposed) break;  // unusable proposal: the walk ends here

        std::vector<int> candidates;
        for (long long node : *proposed) {
            if (visited.count(node)) continue;
            if (node < 0 || node > 1'000'000) continue;  // hallucinated ids carry no signal
            int value = static_cast<int>(node);
            if (std::find(candidates.begin(), candidates.end(), value) == candidates.end())
                candidates.push_back(value);
        }
        if (candidates.empty()) break;

        std::string evaluate_prompt = evaluate.render(
            {{"input",
              tot_evaluate_input(problem.graph, candidates, problem.target, encoding)}});
        auto verdict = record_call(attempt, backend, evaluate_prompt,
                                   solve_tag(attempt, label + "/evaluate"));
        if (!verdict) break;
        auto chosen = parse_promising_node(*verdict);
        // The named node is taken verbatim, visited or not; only magnitudes
        // that could not be node ids fall back, like a parse failure does.
        long long next = chosen && *chosen >= 0 && *chosen <= 1'000'000
                             ? *chosen
                             : *std::min_element(candidates.begin(), candidates.end());
        path.push_back(next);
        visited.insert(next);
        current = next;
    }
    attempt.final_path = path;  // the walked sequence, feasible or not
    finalize_attempt(attempt, problem);
    return attempt;
}

}  // namespace tpbench
