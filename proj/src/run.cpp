#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "tpbench/errors.hpp"
#include "tpbench/harness.hpp"
#include "tpbench/scripted.hpp"

namespace tpbench {

std::string backend_kind_name(BackendKind kind) {
    switch (kind) {
        case BackendKind::Oracle: return "oracle";
        case BackendKind::Scripted: return "scripted";
        case BackendKind::Http: return "http";
    }
    throw std::invalid_argument("unknown backend kind");
}

BackendKind backend_kind_from_name(const std::string& name) {
    if (name == "oracle") return BackendKind::Oracle;
    if (name == "scripted") return BackendKind::Scripted;
    if (name == "http") return BackendKind::Http;
    throw std::invalid_argument("unknown backend kind: " + name);
}

RunConfig run_config_from_json_text(const std::string& text) {
    nlohmann::json object = nlohmann::json::parse(text);
    RunConfig config;
    config.dataset_path = object.at("dataset").get<std::string>();
    config.out_dir = object.at("out_dir").get<std::string>();

    config.methods.clear();
    for (const auto& name : object.at("methods"))
        config.methods.push_back(method_from_name(name.get<std::string>()));
    config.shots = object.at("shots").get<std::vector<int>>();
    config.encodings.clear();
    for (const auto& name : object.at("encodings"))
        config.encodings.push_back(encoding_from_name(name.get<std::string>()));
    if (config.methods.empty() || config.shots.empty() || config.encodings.empty())
        throw std::invalid_argument("methods, shots and encodings must be nonempty");

    if (object.contains("layers")) config.layers = object.at("layers").get<std::vector<int>>();
    if (object.contains("tp_base"))
        config.tp_base = method_from_name(object.at("tp_base").get<std::string>());
    if (object.contains("propose_mode"))
        config.propose_mode = propose_mode_from_name(object.at("propose_mode").get<std::string>());
    if (object.contains("select_mode"))
        config.select_mode = select_mode_from_name(object.at("select_mode").get<std::string>());
    if (object.contains("cot_sc")) {
        config.cot_sc.samples = object.at("cot_sc").value("samples", config.cot_sc.samples);
        config.cot_sc.temperature =
            object.at("cot_sc").value("temperature", config.cot_sc.temperature);
    }
    if (object.contains("tot"))
        config.tot.max_steps = object.at("tot").value("max_steps", config.tot.max_steps);
    if (object.contains("concurrency")) config.concurrency = object.at("concurrency").get<int>();
    if (config.concurrency < 1) throw std::invalid_argument("concurrency must be positive");

    if (object.contains("backend")) {
        const auto& backend = object.at("backend");
        config.backend.kind = backend_kind_from_name(backend.value("kind", "oracle"));
        config.backend.error_model.p_suboptimal = backend.value("p_suboptimal", 0.0);
        config.backend.error_model.p_invalid = backend.value("p_invalid", 0.0);
        if (backend.contains("strategy"))
            config.backend.error_model.strategy =
                suboptimal_strategy_from_name(backend.at("strategy").get<std::string>());
        config.backend.oracle_seed = backend.value("seed", 0ULL);
        config.backend.script_path = backend.value("script", "");
        config.backend.http.base_url = backend.value("base_url", config.backend.http.base_url);
        config.backend.http.path = backend.value("path", config.backend.http.path);
        config.backend.http.model_id = backend.value("model_id", config.backend.http.model_id);
        config.backend.http.api_key_env =
            backend.value("api_key_env", config.backend.http.api_key_env);
        config.backend.http.max_retries =
            backend.value("max_retries", config.backend.http.max_retries);
        config.backend.http.max_concurrency =
            backend.value("max_concurrency", config.backend.http.max_concurrency);
        config.backend.http.timeout_s = backend.value("timeout_s", config.backend.http.timeout_s);
        double sum = config.backend.error_model.p_suboptimal + config.backend.error_model.p_invalid;
        if (config.backend.error_model.p_suboptimal < 0 ||
            config.backend.error_model.p_invalid < 0 || sum > 1.0)
            throw std::invalid_argument("error probabilities must be nonnegative and sum to <= 1");
    }
    return config;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return run_config_from_json_text(buffer.str());
}

std::string run_config_to_json_text(const RunConfig& config) {
    nlohmann::ordered_json methods = nlohmann::ordered_json::array();
    for (Method method : config.methods) methods.push_back(method_name(method));
    nlohmann::ordered_json encodings = nlohmann::ordered_json::array();
    for (EncodingScheme scheme : config.encodings) encodings.push_back(encoding_name(scheme));

    nlohmann::ordered_json backend{{"kind", backend_kind_name(config.backend.kind)}};
    switch (config.backend.kind) {
        case BackendKind::Oracle:
            backend["p_suboptimal"] = config.backend.error_model.p_suboptimal;
            backend["p_invalid"] = config.backend.error_model.p_invalid;
            backend["strategy"] = suboptimal_strategy_name(config.backend.error_model.strategy);
            backend["seed"] = config.backend.oracle_seed;
            break;
        case BackendKind::Scripted:
            backend["script"] = config.backend.script_path;
            break;
        case BackendKind::Http:
            backend["base_url"] = config.backend.http.base_url;
            backend["path"] = config.backend.http.path;
            backend["model_id"] = config.backend.http.model_id;
            backend["api_key_env"] = config.backend.http.api_key_env;  // the name, never the key
            backend["max_retries"] = config.backend.http.max_retries;
            backend["max_concurrency"] = config.backend.http.max_concurrency;
            backend["timeout_s"] = config.backend.http.timeout_s;
            break;
    }

    nlohmann::ordered_json object{
        {"dataset", config.dataset_path},
        {"out_dir", config.out_dir},
        {"methods", methods},
        {"shots", config.shots},
        {"encodings", encodings},
        {"layers", config.layers},
        {"tp_base", method_name(config.tp_base)},
        {"propose_mode", propose_mode_name(config.propose_mode)},
        {"select_mode", select_mode_name(config.select_mode)},
        {"cot_sc",
         nlohmann::ordered_json{{"samples", config.cot_sc.samples},
                                {"temperature", config.cot_sc.temperature}}},
        {"tot", nlohmann::ordered_json{{"max_steps", config.tot.max_steps}}},
        {"concurrency", config.concurrency},
        {"backend", backend},
    };
    return object.dump(2);
}

namespace {

std::unique_ptr<Backend> make_backend(const BackendConfig& config,
                                      const std::vector<ShortestPathProblem>& dataset) {
    switch (config.kind) {
        case BackendKind::Oracle: {
            auto backend = std::make_unique<OracleBackend>(config.error_model, config.oracle_seed);
            for (const ShortestPathProblem& problem : dataset) backend->registry().add(problem);
            return backend;
        }
        case BackendKind::Scripted: {
            if (config.script_path.empty())
                throw std::invalid_argument("scripted backend needs a script path");
            return std::make_unique<ScriptedBackend>(
                ScriptedBackend::from_transcript(config.script_path));
        }
        case BackendKind::Http: return std::make_unique<HttpBackend>(config.http);
    }
    throw std::invalid_argument("unknown backend kind");
}

struct Job {
    const ShortestPathProblem* problem = nullptr;
    Method method = Method::Io;
    int shots = 0;
    EncodingScheme encoding = EncodingScheme::Adjacency;
    int layers = 0;
};

Attempt run_job(const Job& job, const RunConfig& config, Backend& backend) {
    switch (job.method) {
        case Method::Io: return solve_io(*job.problem, job.shots, job.encoding, backend);
        case Method::Cot: return solve_cot(*job.problem, job.shots, job.encoding, backend);
        case Method::Bag: return solve_bag(*job.problem, job.shots, job.encoding, backend);
        case Method::CotSc:
            return solve_cot_sc(*job.problem, job.shots, job.encoding, backend, config.cot_sc);
        case Method::Tot:
            return solve_tot(*job.problem, job.shots, job.encoding, backend, config.tot);
        case Method::Tp: {
            TpOptions options;
            options.layers = job.layers;
            options.base = config.tp_base;
            options.shots = job.shots;
            options.encoding = job.encoding;
            options.propose_mode = config.propose_mode;
            options.select_mode = config.select_mode;
            return solve_with_tp(*job.problem, options, backend).attempt;
        }
    }
    throw std::invalid_argument("unknown method");
}

RunRecord record_from_attempt(const Job& job, const Attempt& attempt, long long wall_ms) {
    RunRecord record;
    record.instance_id = job.problem->instance_id;
    record.method = method_name(job.method);
    record.shots = job.shots;
    record.encoding = encoding_name(job.encoding);
    record.layers = job.layers;
    record.final_path = attempt.final_path;
    record.feasible = attempt.evaluation.feasible;
    if (attempt.evaluation.length) record.length = *attempt.evaluation.length;
    record.optimal = attempt.evaluation.optimal;
    record.prompt_tokens = attempt.prompt_tokens;
    record.completion_tokens = attempt.completion_tokens;
    record.wall_ms = wall_ms;
    record.error = attempt.error;
    return record;
}

}  // namespace

RunSummary run_experiment(const RunConfig& config, const StopAfterRecord& stop_after) {
    std::vector<ShortestPathProblem> dataset = load_dataset(config.dataset_path);
    std::filesystem::create_directories(config.out_dir);
    std::string results_path = config.out_dir + "/results.jsonl";

    // Config snapshot; resumed runs overwrite it with the same content.
    {
        std::ofstream out(config.out_dir + "/config.json", std::ios::trunc);
        if (!out) throw IoError("cannot write config snapshot in " + config.out_dir);
        out << run_config_to_json_text(config) << '\n';
    }

    std::vector<RunRecord> kept;
    std::set<RecordKey> done;
    if (std::filesystem::exists(results_path)) {
        for (RunRecord& record : load_records(results_path)) {
            if (done.insert(record_key(record)).second) kept.push_back(std::move(record));
        }
    }

    std::vector<Job> jobs;
    for (const ShortestPathProblem& problem : dataset) {
        for (Method method : config.methods) {
            for (int shots : config.shots) {
                for (EncodingScheme encoding : config.encodings) {
                    std::vector<int> layer_settings =
                        method == Method::Tp ? config.layers : std::vector<int>{0};
                    for (int layers : layer_settings) {
                        Job job{&problem, method, shots, encoding, layers};
                        RecordKey key{problem.instance_id, method_name(method), shots,
                                      encoding_name(encoding), layers};
                        if (!done.count(key)) jobs.push_back(job);
                    }
                }
            }
        }
    }

    RunSummary summary;
    summary.results_path = results_path;
    summary.skipped = static_cast<int>(kept.size());

    auto backend = make_backend(config.backend, dataset);
    TranscriptWriter transcript(config.out_dir + "/transcript.jsonl");
    LoggingBackend logged(*backend, transcript);

    std::ofstream appender(results_path, std::ios::app);
    if (!appender) throw IoError("cannot append to results file: " + results_path);

    std::vector<RunRecord> produced;
    std::mutex sink_mutex;
    std::atomic<size_t> next_job{0};
    std::atomic<bool> stopped{false};

    auto worker = [&] {
        while (!stopped.load()) {
            size_t index = next_job.fetch_add(1);
            if (index >= jobs.size()) return;
            const Job& job = jobs[index];
            auto started = std::chrono::steady_clock::now();
            Attempt attempt = run_job(job, config, logged);
            auto wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - started)
                               .count();
            RunRecord record = record_from_attempt(job, attempt, wall_ms);

            std::lock_guard lock(sink_mutex);
            if (stopped.load()) return;  // a kill point landed while we computed
            appender << record_to_json_line(record) << '\n';
            appender.flush();
            produced.push_back(record);
            ++summary.executed;
            if (!record.error.empty()) ++summary.failed;
            if (stop_after && stop_after(record)) {
                stopped.store(true);
                return;
            }
        }
    };

    int thread_count = std::min<int>(config.concurrency, std::max<size_t>(jobs.size(), 1));
    std::vector<std::thread> threads;
    threads.reserve(thread_count);
    for (int i = 0; i < thread_count; ++i) threads.emplace_back(worker);
    for (std::thread& thread : threads) thread.join();
    appender.close();

    if (stopped.load()) return summary;  // leave the appended prefix as a kill would

    // Deterministic final order: full rewrite, sorted by record key.
    std::vector<RunRecord> all = std::move(kept);
    all.insert(all.end(), produced.begin(), produced.end());
    std::sort(all.begin(), all.end(), [](const RunRecord& a, const RunRecord& b) {
        return record_key(a) < record_key(b);
    });
    std::string tmp_path = results_path + ".tmp";
    {
        std::ofstream out(tmp_path, std::ios::trunc);
        if (!out) throw IoError("cannot write results file: " + tmp_path);
        for (const RunRecord& record : all) out << record_to_json_line(record) << '\n';
    }
    std::filesystem::rename(tmp_path, results_path);
    return summary;
}

std::string inspect_report(const std::string& out_dir, const std::string& instance_id,
                           const std::string& method) {
    std::vector<RunRecord> records = load_records(out_dir + "/results.jsonl");
    std::vector<const RunRecord*> matching;
    for (const RunRecord& record : records)
        if (record.instance_id == instance_id && record.method == method)
            matching.push_back(&record);
    if (matching.empty())
        throw IoError("no record for instance " + instance_id + " and method " + method + " in " +
                      out_dir);

    std::ostringstream out;
    long long optimum = -1;
    try {
        RunConfig config = load_run_config(out_dir + "/config.json");
        for (const ShortestPathProblem& problem : load_dataset(config.dataset_path))
            if (problem.instance_id == instance_id) optimum = problem.optimal_length;
    } catch (const std::exception&) {
        // The run directory may have moved away from its dataset; the
        // transcript is still worth printing.
    }

    for (const RunRecord* record : matching) {
        out << "=== " << record->instance_id << " " << record->method << " shots="
            << record->shots << " encoding=" << record->encoding << " layers=" << record->layers
            << " ===\n";
        out << "feasible: " << (record->feasible ? "yes" : "no");
        if (record->length) out << "  length: " << *record->length;
        if (optimum >= 0) out << "  optimum: " << optimum;
        out << "  optimal: " << (record->optimal ? "yes" : "no") << "\n";
        if (record->final_path) {
            out << "final path: [";
            for (size_t i = 0; i < record->final_path->size(); ++i)
                out << (i ? ", " : "") << (*record->final_path)[i];
            out << "]\n";
        } else {
            out << "final path: (none)\n";
        }
        if (!record->error.empty()) out << "error: " << record->error << "\n";
    }

    TranscriptFile transcript = read_transcript(out_dir + "/transcript.jsonl");
    std::vector<std::string> prefixes{instance_id + "/" + method + "/"};
    // A zero-layer refinement record delegates wholesale to its base method,
    // so its calls carry the base method's tags for that same cell.
    for (const RunRecord* record : matching)
        if (record->method == "tp" && record->layers == 0)
            for (const char* base : {"io", "cot"})
                prefixes.push_back(instance_id + "/" + std::string(base) + "/s" +
                                   std::to_string(record->shots) + "/" + record->encoding +
                                   "/L0/");
    std::set<std::tuple<std::string, std::string, std::string>> seen;
    int shown = 0;
    for (const TranscriptEntry& entry : transcript.entries) {
        bool matches = false;
        for (const std::string& prefix : prefixes)
            matches = matches || entry.request_tag.rfind(prefix, 0) == 0;
        if (!matches) continue;
        // Resumed runs and delegated calls append byte-identical entries;
        // show each distinct call once.
        if (!seen.insert({entry.request_tag, entry.prompt, entry.text}).second) continue;
        ++shown;
        out << "\n--- call " << shown << ": " << entry.request_tag << " ---\n";
        out << entry.prompt << "\n";
        out << ">>> reply (" << entry.prompt_tokens << " prompt tokens, "
            << entry.completion_tokens << " completion tokens)\n";
        out << entry.text << "\n";
    }
    if (shown == 0) out << "\n(no transcript entries under " << prefixes.front() << ")\n";
    return out.str();
}

}  // namespace tpbench
