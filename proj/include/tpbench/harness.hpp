#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tpbench/graph.hpp"
#include "tpbench/http_backend.hpp"
#include "tpbench/method.hpp"
#include "tpbench/oracle.hpp"
#include "tpbench/strategies.hpp"
#include "tpbench/tp.hpp"

namespace tpbench {

// One JSON object per line, fields in a fixed order:
// {instance_id, node_count, edges, distances, source, target,
//  optimal_length, optimal_path}.
void save_dataset(const std::vector<ShortestPathProblem>& problems, const std::string& path);
std::vector<ShortestPathProblem> load_dataset(const std::string& path);

enum class BackendKind { Oracle, Scripted, Http };

std::string backend_kind_name(BackendKind kind);
BackendKind backend_kind_from_name(const std::string& name);

struct BackendConfig {
    BackendKind kind = BackendKind::Oracle;
    OracleErrorModel error_model;  // oracle only
    uint64_t oracle_seed = 0;
    std::string script_path;  // scripted only
    HttpBackendConfig http;   // http only; credentials stay in the environment
};

struct RunConfig {
    std::string dataset_path;
    std::string out_dir;
    std::vector<Method> methods{Method::Io};
    std::vector<int> shots{5};
    std::vector<EncodingScheme> encodings{EncodingScheme::Adjacency};
    std::vector<int> layers{1};  // refinement depths for tp cells; other methods run at 0
    Method tp_base = Method::Io;
    ProposeMode propose_mode = ProposeMode::Llm;
    SelectMode select_mode = SelectMode::Llm;
    CotScParams cot_sc;
    TotParams tot;
    BackendConfig backend;
    int concurrency = 4;
};

RunConfig run_config_from_json_text(const std::string& text);
RunConfig load_run_config(const std::string& path);
std::string run_config_to_json_text(const RunConfig& config);

// One results line. (feasible, length, optimal) must stay reproducible from
// final_path; compute_metrics re-derives and cross-checks them.
struct RunRecord {
    std::string instance_id;
    std::string method;
    int shots = 0;
    std::string encoding;
    int layers = 0;
    std::optional<std::vector<long long>> final_path;
    bool feasible = false;
    std::optional<long long> length;
    bool optimal = false;
    long long prompt_tokens = 0;
    long long completion_tokens = 0;
    long long wall_ms = 0;
    std::string error;
};

// (instance_id, method, shots, encoding, layers): the axes results are keyed
// and deduplicated on.
using RecordKey = std::tuple<std::string, std::string, int, std::string, int>;
RecordKey record_key(const RunRecord& record);

std::string record_to_json_line(const RunRecord& record);
RunRecord record_from_json_line(const std::string& line);
std::vector<RunRecord> load_records(const std::string& path);

struct RunSummary {
    int executed = 0;  // records produced this invocation
    int skipped = 0;   // records already present and kept
    int failed = 0;    // executed records carrying an error note
    std::string results_path;
};

// Test seam standing in for an abrupt kill: consulted after each appended
// record; returning true abandons the run exactly as a signal would —
// results.jsonl keeps only the appended prefix, unsorted.
using StopAfterRecord = std::function<bool(const RunRecord&)>;

// Runs every (method x shots x encoding [x layers for tp]) cell over every
// dataset instance with bounded concurrency. Records append on completion;
// existing records are skipped (resume); a completed run rewrites the file
// sorted by record key. Backend failures become error-noted infeasible
// records, not run aborts.
RunSummary run_experiment(const RunConfig& config, const StopAfterRecord& stop_after = {});

struct CellKey {
    std::string method;
    int shots = 0;
    std::string encoding;
    int layers = 0;

    auto operator<=>(const CellKey&) const = default;
};

struct CellMetrics {
    double optimal_rate = 0.0;
    double feasible_rate = 0.0;
    double over_length_rate = 0.0;
    int count = 0;
    long long prompt_tokens = 0;
    long long completion_tokens = 0;
};

struct MetricsReport {
    std::map<CellKey, CellMetrics> cells;
};

// optimal_rate = N_optimal/N; feasible_rate = N_feasible/N; over_length_rate
// = mean over feasible records of (L - L*)/L*, zero when none are feasible.
// Every record is revalidated against its dataset instance; disagreement
// with the stored fields raises IntegrityError.
MetricsReport compute_metrics(const std::vector<RunRecord>& records,
                              const std::vector<ShortestPathProblem>& dataset);

// Emits the score grid (markdown + CSV) and the token-cost table
// (method, layers, shots, encoding, total_tokens, optimal_rate).
void write_report(const MetricsReport& report, const std::string& markdown_path,
                  const std::string& grid_csv_path, const std::string& tokens_csv_path);

// Pretty-printed prompt/response chain for one (instance, method) from a run
// directory, with the record row and the instance's true optimum.
std::string inspect_report(const std::string& out_dir, const std::string& instance_id,
                           const std::string& method);

}  // namespace tpbench
