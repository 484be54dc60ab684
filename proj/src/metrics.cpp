#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include <json.hpp>

#include "tpbench/errors.hpp"
#include "tpbench/harness.hpp"

namespace tpbench {

RecordKey record_key(const RunRecord& record) {
    return {record.instance_id, record.method, record.shots, record.encoding, record.layers};
}

std::string record_to_json_line(const RunRecord& record) {
    nlohmann::ordered_json object{{"instance_id", record.instance_id},
                                  {"method", record.method},
                                  {"shots", record.shots},
                                  {"encoding", record.encoding},
                                  {"layers", record.layers}};
    if (record.final_path) object["final_path"] = *record.final_path;
    object["feasible"] = record.feasible;
    if (record.length) object["length"] = *record.length;
    object["optimal"] = record.optimal;
    object["prompt_tokens"] = record.prompt_tokens;
    object["completion_tokens"] = record.completion_tokens;
    object["wall_ms"] = record.wall_ms;
    if (!record.error.empty()) object["error"] = record.error;
    return object.dump();
}

RunRecord record_from_json_line(const std::string& line) {
    nlohmann::json object = nlohmann::json::parse(line);
    RunRecord record;
    record.instance_id = object.at("instance_id").get<std::string>();
    record.method = object.at("method").get<std::string>();
    record.shots = object.at("shots").get<int>();
    record.encoding = object.at("encoding").get<std::string>();
    record.layers = object.at("layers").get<int>();
    if (object.contains("final_path"))
        record.final_path = object.at("final_path").get<std::vector<long long>>();
    record.feasible = object.at("feasible").get<bool>();
    if (object.contains("length")) record.length = object.at("length").get<long long>();
    record.optimal = object.at("optimal").get<bool>();
    record.prompt_tokens = object.at("prompt_tokens").get<long long>();
    record.completion_tokens = object.at("completion_tokens").get<long long>();
    record.wall_ms = object.at("wall_ms").get<long long>();
    if (object.contains("error")) record.error = object.at("error").get<std::string>();
    return record;
}

std::vector<RunRecord> load_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read results file: " + path);
    std::vector<RunRecord> records;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        try {
            records.push_back(record_from_json_line(line));
        } catch (const std::exception& error) {
            throw IoError("corrupt results line " + std::to_string(line_number) + " in " + path +
                          ": " + error.what());
        }
    }
    return records;
}

MetricsReport compute_metrics(const std::vector<RunRecord>& records,
                              const std::vector<ShortestPathProblem>& dataset) {
    std::map<std::string, const ShortestPathProblem*> by_id;
    for (const ShortestPathProblem& problem : dataset) by_id[problem.instance_id] = &problem;

    struct Accumulator {
        int count = 0;
        int optimal = 0;
        int feasible = 0;
        double excess = 0.0;  // sum over feasible of (L - L*) / L*
        long long prompt_tokens = 0;
        long long completion_tokens = 0;
    };
    std::map<CellKey, Accumulator> cells;

    for (const RunRecord& record : records) {
        auto found = by_id.find(record.instance_id);
        if (found == by_id.end())
            throw IntegrityError("record references unknown instance " + record.instance_id);
        const ShortestPathProblem& problem = *found->second;

        // Stored verdicts must agree with a fresh look at the raw path.
        PathEvaluation eval;
        if (record.final_path) eval = validate_path(problem, *record.final_path);
        bool length_matches = eval.feasible
                                  ? (record.length && *record.length == *eval.length)
                                  : !record.length.has_value();
        if (record.feasible != eval.feasible || record.optimal != eval.optimal || !length_matches)
            throw IntegrityError("stored verdicts for " + record.instance_id + "/" +
                                 record.method + " disagree with revalidation");

        Accumulator& cell =
            cells[{record.method, record.shots, record.encoding, record.layers}];
        ++cell.count;
        cell.prompt_tokens += record.prompt_tokens;
        cell.completion_tokens += record.completion_tokens;
        if (eval.feasible) {
            ++cell.feasible;
            cell.excess += static_cast<double>(*eval.length - problem.optimal_length) /
                           static_cast<double>(problem.optimal_length);
        }
        if (eval.optimal) ++cell.optimal;
    }

    MetricsReport report;
    for (const auto& [key, acc] : cells) {
        CellMetrics metrics;
        metrics.count = acc.count;
        metrics.optimal_rate = static_cast<double>(acc.optimal) / acc.count;
        metrics.feasible_rate = static_cast<double>(acc.feasible) / acc.count;
        metrics.over_length_rate = acc.feasible == 0 ? 0.0 : acc.excess / acc.feasible;
        metrics.prompt_tokens = acc.prompt_tokens;
        metrics.completion_tokens = acc.completion_tokens;
        report.cells[key] = metrics;
    }
    return report;
}

namespace {

std::string format_rate(double value) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(4) << value;
    return out.str();
}

// Row label: the method, with the refinement depth for tp cells.
std::string row_label(const std::string& method, int layers) {
    if (method == "tp") return "tp(k=" + std::to_string(layers) + ")";
    return method;
}

}  // namespace

void write_report(const MetricsReport& report, const std::string& markdown_path,
                  const std::string& grid_csv_path, const std::string& tokens_csv_path) {
    if (report.cells.empty()) throw IoError("refusing to write a report with no cells");

    // Axis inventories, in deterministic order.
    std::vector<std::string> encodings;
    std::vector<int> shot_settings;
    std::vector<std::pair<std::string, int>> rows;  // (method, layers)
    for (const auto& [key, metrics] : report.cells) {
        if (std::find(encodings.begin(), encodings.end(), key.encoding) == encodings.end())
            encodings.push_back(key.encoding);
        if (std::find(shot_settings.begin(), shot_settings.end(), key.shots) ==
            shot_settings.end())
            shot_settings.push_back(key.shots);
        std::pair<std::string, int> row{key.method, key.layers};
        if (std::find(rows.begin(), rows.end(), row) == rows.end()) rows.push_back(row);
    }
    std::sort(encodings.begin(), encodings.end());
    std::sort(shot_settings.begin(), shot_settings.end());
    std::sort(rows.begin(), rows.end());

    auto cell_of = [&](const std::string& method, int layers, int shots,
                       const std::string& encoding) -> const CellMetrics* {
        auto it = report.cells.find(CellKey{method, shots, encoding, layers});
        return it == report.cells.end() ? nullptr : &it->second;
    };

    std::ofstream markdown(markdown_path, std::ios::trunc);
    if (!markdown) throw IoError("cannot write report file: " + markdown_path);
    for (const std::string& encoding : encodings) {
        markdown << "## " << encoding << "\n\n";
        markdown << "| method |";
        for (int shots : shot_settings)
            markdown << " " << shots << "-shot OR | " << shots << "-shot FR | " << shots
                     << "-shot OLR |";
        markdown << "\n|---|";
        for (size_t i = 0; i < shot_settings.size() * 3; ++i) markdown << "---|";
        markdown << "\n";
        for (const auto& [method, layers] : rows) {
            bool any = false;
            for (int shots : shot_settings) any = any || cell_of(method, layers, shots, encoding);
            if (!any) continue;
            markdown << "| " << row_label(method, layers) << " |";
            for (int shots : shot_settings) {
                const CellMetrics* cell = cell_of(method, layers, shots, encoding);
                if (cell)
                    markdown << " " << format_rate(cell->optimal_rate) << " | "
                             << format_rate(cell->feasible_rate) << " | "
                             << format_rate(cell->over_length_rate) << " |";
                else
                    markdown << " - | - | - |";
            }
            markdown << "\n";
        }
        markdown << "\n";
    }

    std::ofstream grid(grid_csv_path, std::ios::trunc);
    if (!grid) throw IoError("cannot write report file: " + grid_csv_path);
    grid << "method,layers,shots,encoding,count,or,fr,olr\n";
    for (const auto& [key, metrics] : report.cells)
        grid << key.method << ',' << key.layers << ',' << key.shots << ',' << key.encoding << ','
             << metrics.count << ',' << format_rate(metrics.optimal_rate) << ','
             << format_rate(metrics.feasible_rate) << ','
             << format_rate(metrics.over_length_rate) << "\n";

    std::ofstream tokens(tokens_csv_path, std::ios::trunc);
    if (!tokens) throw IoError("cannot write report file: " + tokens_csv_path);
    tokens << "method,layers,shots,encoding,total_tokens,or\n";
    for (const auto& [key, metrics] : report.cells)
        tokens << key.method << ',' << key.layers << ',' << key.shots << ',' << key.encoding
               << ',' << metrics.prompt_tokens + metrics.completion_tokens << ','
               << format_rate(metrics.optimal_rate) << "\n";
}

}  // namespace tpbench
