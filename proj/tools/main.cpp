// Command-line front end: dataset generation, run-matrix execution, metric
// reports, and transcript inspection over a run directory.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "tpbench/errors.hpp"
#include "tpbench/harness.hpp"

namespace {

using namespace tpbench;

int cmd_gen_dataset(const DatasetParams& params, const std::string& out_path) {
    std::vector<ShortestPathProblem> problems = generate_dataset(params);
    save_dataset(problems, out_path);

    std::map<int, int> histogram;
    long long optimum_sum = 0;
    for (const ShortestPathProblem& problem : problems) {
        ++histogram[problem.graph.node_count];
        optimum_sum += problem.optimal_length;
    }
    std::cout << "wrote " << problems.size() << " instances to " << out_path << "\n";
    std::cout << "node-count histogram:\n";
    for (const auto& [nodes, count] : histogram)
        std::cout << "  n=" << nodes << ": " << count << "\n";
    std::cout << "mean optimum: "
              << static_cast<double>(optimum_sum) / static_cast<double>(problems.size()) << "\n";
    return 0;
}

int cmd_run(const std::string& config_path) {
    RunConfig config = load_run_config(config_path);
    RunSummary summary = run_experiment(config);
    std::cout << "executed " << summary.executed << " records (" << summary.skipped
              << " already present, " << summary.failed << " with backend errors)\n";
    std::cout << "results: " << summary.results_path << "\n";
    return 0;
}

int cmd_report(const std::string& run_dir, std::string dataset_path, std::string markdown_path,
               std::string grid_csv_path, std::string tokens_csv_path) {
    if (dataset_path.empty())
        dataset_path = load_run_config(run_dir + "/config.json").dataset_path;
    if (markdown_path.empty()) markdown_path = run_dir + "/report.md";
    if (grid_csv_path.empty()) grid_csv_path = run_dir + "/grid.csv";
    if (tokens_csv_path.empty()) tokens_csv_path = run_dir + "/tokens.csv";

    std::vector<RunRecord> records = load_records(run_dir + "/results.jsonl");
    std::vector<ShortestPathProblem> dataset = load_dataset(dataset_path);
    MetricsReport report = compute_metrics(records, dataset);
    write_report(report, markdown_path, grid_csv_path, tokens_csv_path);

    std::ifstream markdown(markdown_path);
    std::cout << markdown.rdbuf();
    std::cout << "\nwrote " << markdown_path << ", " << grid_csv_path << ", " << tokens_csv_path
              << "\n";
    return 0;
}

int cmd_inspect(const std::string& run_dir, const std::string& instance_id,
                const std::string& method) {
    std::cout << inspect_report(run_dir, instance_id, method);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Shortest-path prompting benchmark"};
    app.require_subcommand(1);

    DatasetParams params;
    std::string out_path = "dataset.jsonl";
    CLI::App* gen = app.add_subcommand("gen-dataset", "Generate a shortest-path problem set");
    gen->add_option("--count", params.count, "Number of instances")->capture_default_str();
    gen->add_option("--n-min", params.n_min, "Smallest node count")->capture_default_str();
    gen->add_option("--n-max", params.n_max, "Largest node count")->capture_default_str();
    gen->add_option("--p", params.edge_probability, "Extra-edge probability")
        ->capture_default_str();
    gen->add_option("--seed", params.seed, "Generator seed")->capture_default_str();
    gen->add_option("--out", out_path, "Output JSONL path")->capture_default_str();

    std::string config_path;
    CLI::App* run = app.add_subcommand("run", "Execute the configured run matrix");
    run->add_option("--config", config_path, "Run configuration JSON")->required();

    std::string run_dir, dataset_override, markdown_path, grid_csv_path, tokens_csv_path;
    CLI::App* report = app.add_subcommand("report", "Compute metrics and emit report files");
    report->add_option("--run-dir", run_dir, "Run directory holding results.jsonl")->required();
    report->add_option("--dataset", dataset_override,
                       "Dataset path (default: the one named in the run's config.json)");
    report->add_option("--markdown", markdown_path, "Markdown grid output path");
    report->add_option("--grid-csv", grid_csv_path, "Per-cell metrics CSV output path");
    report->add_option("--tokens-csv", tokens_csv_path, "Token-cost CSV output path");

    std::string inspect_dir, instance_id, method;
    CLI::App* inspect = app.add_subcommand("inspect", "Print a record's full prompt chain");
    inspect->add_option("--run-dir", inspect_dir, "Run directory")->required();
    inspect->add_option("--instance", instance_id, "Instance id, e.g. g0007")->required();
    inspect->add_option("--method", method, "Method name, e.g. tp")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help exits clean, usage errors exit 2
    }

    try {
        if (gen->parsed()) return cmd_gen_dataset(params, out_path);
        if (run->parsed()) return cmd_run(config_path);
        if (report->parsed())
            return cmd_report(run_dir, dataset_override, markdown_path, grid_csv_path,
                              tokens_csv_path);
        if (inspect->parsed()) return cmd_inspect(inspect_dir, instance_id, method);
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const BackendError& e) {
        std::cerr << "backend error: " << e.what() << "\n";
        return 4;
    } catch (const IntegrityError& e) {
        std::cerr << "integrity error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
