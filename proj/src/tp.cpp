#include "tpbench/tp.hpp"

#include <algorithm>
#include <stdexcept>

#include "tpbench/parse.hpp"

namespace tpbench {

std::string propose_mode_name(ProposeMode mode) {
    return mode == ProposeMode::Llm ? "llm" : "symbolic";
}

ProposeMode propose_mode_from_name(const std::string& name) {
    if (name == "llm") return ProposeMode::Llm;
    if (name == "symbolic") return ProposeMode::Symbolic;
    throw std::invalid_argument("unknown propose mode: " + name);
}

std::string select_mode_name(SelectMode mode) {
    return mode == SelectMode::Llm ? "llm" : "symbolic";
}

SelectMode select_mode_from_name(const std::string& name) {
    if (name == "llm") return SelectMode::Llm;
    if (name == "symbolic") return SelectMode::Symbolic;
    throw std::invalid_argument("unknown select mode: " + name);
}

namespace {

// Beyond the first layer each subproblem refines through at most this many
// of its own subproblems (smallest node indices first); unbounded fan-out
// would grow exponentially with the layer count.
constexpr size_t kDeepFanOutCap = 4;

struct Context {
    const ShortestPathProblem& root;
    const TpOptions& options;
    Backend& backend;
};

std::string tp_tag(const Context& ctx, const std::string& step) {
    return make_request_tag(ctx.root.instance_id, method_name(Method::Tp), ctx.options.shots,
                            encoding_name(ctx.options.encoding), ctx.options.layers, step);
}

// Same graph and source, target moved to the intermediate node. The optimal
// fields stay unset; refinement never consults them.
ShortestPathProblem subproblem_for(const ShortestPathProblem& parent, int intermediate) {
    ShortestPathProblem sub;
    sub.instance_id = parent.instance_id;
    sub.graph = parent.graph;
    sub.source = parent.source;
    sub.target = intermediate;
    sub.optimal_length = -1;
    return sub;
}

void merge(Attempt& into, const Attempt& from) {
    into.transcript.insert(into.transcript.end(), from.transcript.begin(), from.transcript.end());
    into.prompt_tokens += from.prompt_tokens;
    into.completion_tokens += from.completion_tokens;
    if (into.error.empty()) into.error = from.error;
}

// One plain base-method call on `prob`, as its own attempt.
Attempt base_solve(const Context& ctx, const ShortestPathProblem& prob,
                   const std::string& prefix) {
    Attempt attempt;
    attempt.instance_id = prob.instance_id;
    attempt.method = ctx.options.base;
    attempt.shots = ctx.options.shots;
    attempt.encoding = ctx.options.encoding;
    PromptTemplate tmpl =
        solve_template(ctx.options.base, ctx.options.shots, ctx.options.encoding);
    std::string prompt = tmpl.render(
        {{"input", encode_subproblem(prob, prob.target, ctx.options.encoding)}});
    if (auto reply = record_call(attempt, ctx.backend, prompt, tp_tag(ctx, prefix + "solve"))) {
        if (auto parsed = parse_path_answer(*reply)) attempt.final_path = parsed->path;
    }
    finalize_attempt(attempt, prob);
    return attempt;
}

// Intermediate targets for `prob`: its target's neighbors except the source,
// ascending. Llm mode asks the backend and keeps the claimed nodes that are
// real neighbors; an unusable reply falls back to the graph with a warning.
std::vector<int> propose_intermediates(const Context& ctx, const ShortestPathProblem& prob,
                                       int depth, const std::string& prefix, Attempt& sink,
                                       std::vector<std::string>* warnings) {
    std::vector<int> true_neighbors = neighbors(prob.graph, prob.target);
    std::vector<int> result;
    if (ctx.options.propose_mode == ProposeMode::Llm) {
        PromptTemplate tmpl = propose_template(ctx.options.encoding);
        std::string prompt = tmpl.render(
            {{"input", propose_input(prob.graph, prob.target, ctx.options.encoding)}});
        auto reply = record_call(sink, ctx.backend, prompt, tp_tag(ctx, prefix + "propose"));
        std::optional<std::vector<long long>> parsed;
        if (reply) parsed = parse_neighbor_list(*reply);
        if (parsed) {
            for (long long node : *parsed) {
                if (node < 0 || node >= prob.graph.node_count) continue;
                int value = static_cast<int>(node);
                if (std::binary_search(true_neighbors.begin(), true_neighbors.end(), value))
                    result.push_back(value);
            }
            std::sort(result.begin(), result.end());
            result.erase(std::unique(result.begin(), result.end()), result.end());
        } else {
            result = true_neighbors;
            if (warnings)
                warnings->push_back("unusable neighborhood reply at " +
                                    (prefix.empty() ? std::string("top") : prefix) +
                                    "; neighborhood taken from the graph");
        }
    } else {
        result = true_neighbors;
    }
    std::erase_if(result, [&](int node) { return node == prob.source || node == prob.target; });
    if (depth >= 1 && result.size() > kDeepFanOutCap) result.resize(kDeepFanOutCap);
    return result;
}

struct Judgment {
    bool valid = false;
    long long length = 0;
};

Judgment judge(const ShortestPathProblem& prob,
               const std::optional<std::vector<long long>>& path) {
    if (!path) return {};
    PathEvaluation eval = validate_path(prob, *path);
    if (!eval.feasible) return {};
    return {true, *eval.length};
}

std::optional<std::vector<long long>> symbolic_select(
    const ShortestPathProblem& prob, const std::optional<std::vector<long long>>& initial,
    const std::optional<std::vector<long long>>& candidate, std::string* rationale) {
    Judgment ji = judge(prob, initial);
    Judgment jc = judge(prob, candidate);
    if (ji.valid && jc.valid) {
        if (jc.length < ji.length) {
            if (rationale) *rationale = "aggregated candidate is shorter than the initial answer";
            return candidate;
        }
        if (rationale) *rationale = "initial answer is at least as short as the candidate";
        return initial;
    }
    if (ji.valid) {
        if (rationale) *rationale = "only the initial answer is a valid path";
        return initial;
    }
    if (jc.valid) {
        if (rationale) *rationale = "only the aggregated candidate is a valid path";
        return candidate;
    }
    if (rationale) *rationale = "neither answer is a valid path; keeping the initial one";
    return initial;
}

std::optional<std::vector<long long>> select_step(
    const Context& ctx, const ShortestPathProblem& prob,
    const std::optional<std::vector<long long>>& initial,
    const std::optional<std::vector<long long>>& candidate, const std::string& prefix,
    Attempt& sink, std::string* rationale) {
    if (ctx.options.select_mode == SelectMode::Symbolic || !initial || !candidate)
        return symbolic_select(prob, initial, candidate, rationale);

    SolutionLine first{*initial, judge(prob, initial).length};
    SolutionLine second{*candidate, judge(prob, candidate).length};
    PromptTemplate tmpl = evaluate_template(ctx.options.encoding);
    std::string prompt = tmpl.render(
        {{"input", evaluate_input(prob.graph, prob.source, prob.target, first, second,
                                    ctx.options.encoding)}});
    auto reply = record_call(sink, ctx.backend, prompt, tp_tag(ctx, prefix + "evaluate"));
    if (!reply) return symbolic_select(prob, initial, candidate, rationale);

    std::optional<int> choice = parse_solution_choice(*reply, 2);
    if (!choice) {
        // Some replies only restate the winning path; match it.
        if (auto restated = parse_path_answer(*reply)) {
            if (restated->path == *initial) choice = 1;
            else if (restated->path == *candidate) choice = 2;
        }
    }
    if (!choice) return symbolic_select(prob, initial, candidate, rationale);
    if (rationale)
        *rationale = "judged answer named solution " + std::to_string(*choice) + " as better";
    return *choice == 1 ? initial : candidate;
}

Attempt refine(const Context& ctx, const ShortestPathProblem& prob, int remaining, int depth,
               const std::string& prefix, TpTrace* trace, std::vector<std::string>* warnings) {
    Attempt self;
    self.instance_id = prob.instance_id;
    self.method = Method::Tp;
    self.shots = ctx.options.shots;
    self.encoding = ctx.options.encoding;
    self.layers = remaining;

    Attempt init = base_solve(ctx, prob, prefix);
    merge(self, init);
    std::optional<std::vector<long long>> initial_path = init.final_path;
    if (trace) trace->initial = init;

    if (remaining == 0) {
        self.final_path = initial_path;
        finalize_attempt(self, prob);
        if (trace) {
            trace->selected = initial_path;
            trace->rationale = "no refinement layers; the base answer stands";
        }
        return self;
    }

    std::vector<int> intermediates =
        propose_intermediates(ctx, prob, depth, prefix, self, warnings);

    std::vector<Hint> hints;
    for (int mid : intermediates) {
        ShortestPathProblem sub = subproblem_for(prob, mid);
        Attempt sub_attempt = refine(ctx, sub, remaining - 1, depth + 1,
                                     prefix + "sub" + std::to_string(mid) + "/", nullptr,
                                     warnings);
        merge(self, sub_attempt);
        if (sub_attempt.final_path) {
            PathEvaluation eval = validate_path(sub, *sub_attempt.final_path);
            if (eval.feasible) {
                Hint hint;
                hint.intermediate = mid;
                for (long long node : *sub_attempt.final_path)
                    hint.path.push_back(static_cast<int>(node));
                hint.length = *eval.length;
                hints.push_back(std::move(hint));
            }
        }
        if (trace)
            trace->analogous.push_back(
                {AnalogousProblem{prob.instance_id, mid,
                                  encode_subproblem(prob, mid, ctx.options.encoding), depth + 1},
                 std::move(sub_attempt)});
    }

    std::optional<std::vector<long long>> candidate;
    if (!hints.empty()) {
        PromptTemplate tmpl = aggregate_template(ctx.options.encoding);
        std::string prompt = tmpl.render(
            {{"input", aggregate_input(prob.graph, hints, prob.source, prob.target,
                                         ctx.options.encoding)}});
        if (auto reply = record_call(self, ctx.backend, prompt, tp_tag(ctx, prefix + "aggregate"))) {
            if (auto parsed = parse_path_answer(*reply)) candidate = parsed->path;
        }
    }
    if (trace) trace->aggregated = candidate;

    std::string rationale;
    std::optional<std::vector<long long>> selected =
        select_step(ctx, prob, initial_path, candidate, prefix, self, &rationale);
    self.final_path = selected;
    finalize_attempt(self, prob);
    if (trace) {
        trace->selected = selected;
        trace->rationale = rationale;
    }
    return self;
}

}  // namespace

TpResult solve_with_tp(const ShortestPathProblem& problem, const TpOptions& options,
                       Backend& backend) {
    if (options.layers < 0 || options.layers > 2)
        throw std::invalid_argument("layer count must be 0, 1 or 2");
    if (options.base != Method::Io && options.base != Method::Cot)
        throw std::invalid_argument("refinement base must be io or cot");

    TpResult result;
    if (options.layers == 0) {
        // Verbatim base method: same prompts, same tags, same transcript.
        result.attempt = options.base == Method::Io
                             ? solve_io(problem, options.shots, options.encoding, backend)
                             : solve_cot(problem, options.shots, options.encoding, backend);
        result.trace.initial = result.attempt;
        result.trace.selected = result.attempt.final_path;
        result.trace.rationale = "no refinement layers; the base answer stands";
        return result;
    }

    Context ctx{problem, options, backend};
    result.attempt =
        refine(ctx, problem, options.layers, 0, "", &result.trace, &result.trace.warnings);
    return result;
}

std::vector<AnalogousProblem> propose_analogous(const ShortestPathProblem& problem,
                                                EncodingScheme encoding, Backend& backend,
                                                ProposeMode mode) {
    TpOptions options;
    options.encoding = encoding;
    options.propose_mode = mode;
    options.shots = 0;
    options.layers = 1;
    Context ctx{problem, options, backend};
    Attempt scratch;
    scratch.instance_id = problem.instance_id;
    std::vector<std::string> warnings;
    std::vector<AnalogousProblem> result;
    for (int mid : propose_intermediates(ctx, problem, 0, "", scratch, &warnings))
        result.push_back(AnalogousProblem{problem.instance_id, mid,
                                          encode_subproblem(problem, mid, encoding), 1});
    return result;
}

std::optional<std::vector<long long>> aggregate_hints(const ShortestPathProblem& problem,
                                                      const std::vector<Hint>& hints,
                                                      EncodingScheme encoding, Backend& backend) {
    std::vector<Hint> valid;
    for (const Hint& hint : hints) {
        ShortestPathProblem sub = subproblem_for(problem, hint.intermediate);
        if (validate_path(sub, hint.path).feasible) valid.push_back(hint);
    }
    if (valid.empty()) return std::nullopt;

    TpOptions options;
    options.encoding = encoding;
    options.shots = 0;
    options.layers = 1;
    Context ctx{problem, options, backend};
    Attempt scratch;
    scratch.instance_id = problem.instance_id;
    PromptTemplate tmpl = aggregate_template(encoding);
    std::string prompt = tmpl.render(
        {{"input", aggregate_input(problem.graph, valid, problem.source, problem.target,
                                     encoding)}});
    auto reply = record_call(scratch, backend, prompt, tp_tag(ctx, "aggregate"));
    if (!reply) return std::nullopt;
    if (auto parsed = parse_path_answer(*reply)) return parsed->path;
    return std::nullopt;
}

std::optional<std::vector<long long>> select_better(
    const ShortestPathProblem& problem, const std::optional<std::vector<long long>>& initial,
    const std::optional<std::vector<long long>>& candidate, EncodingScheme encoding,
    Backend& backend, SelectMode mode) {
    TpOptions options;
    options.encoding = encoding;
    options.select_mode = mode;
    options.shots = 0;
    options.layers = 1;
    Context ctx{problem, options, backend};
    Attempt scratch;
    scratch.instance_id = problem.instance_id;
    return select_step(ctx, problem, initial, candidate, "", scratch, nullptr);
}

}  // namespace tpbench
