#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tpbench/errors.hpp"
#include "tpbench/harness.hpp"

namespace tpbench {

namespace {

nlohmann::ordered_json problem_to_json(const ShortestPathProblem& problem) {
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (auto [u, v] : problem.graph.edges) edges.push_back({u, v});
    return nlohmann::ordered_json{{"instance_id", problem.instance_id},
                                  {"node_count", problem.graph.node_count},
                                  {"edges", edges},
                                  {"distances", problem.graph.distances},
                                  {"source", problem.source},
                                  {"target", problem.target},
                                  {"optimal_length", problem.optimal_length},
                                  {"optimal_path", problem.optimal_path}};
}

ShortestPathProblem problem_from_json(const nlohmann::json& object) {
    ShortestPathProblem problem;
    problem.instance_id = object.at("instance_id").get<std::string>();
    problem.graph.node_count = object.at("node_count").get<int>();
    for (const auto& pair : object.at("edges"))
        problem.graph.edges.emplace_back(pair.at(0).get<int>(), pair.at(1).get<int>());
    problem.graph.distances = object.at("distances").get<std::vector<int>>();
    problem.source = object.at("source").get<int>();
    problem.target = object.at("target").get<int>();
    problem.optimal_length = object.at("optimal_length").get<long long>();
    problem.optimal_path = object.at("optimal_path").get<std::vector<int>>();
    problem.graph.check();
    return problem;
}

}  // namespace

void save_dataset(const std::vector<ShortestPathProblem>& problems, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write dataset file: " + path);
    for (const ShortestPathProblem& problem : problems) out << problem_to_json(problem) << '\n';
    if (!out) throw IoError("failed while writing dataset file: " + path);
}

std::vector<ShortestPathProblem> load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read dataset file: " + path);
    std::vector<ShortestPathProblem> problems;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        nlohmann::json object = nlohmann::json::parse(line, nullptr, false);
        if (object.is_discarded())
            throw IoError("corrupt dataset line " + std::to_string(line_number) + " in " + path);
        try {
            problems.push_back(problem_from_json(object));
        } catch (const std::exception& error) {
            throw IoError("invalid dataset line " + std::to_string(line_number) + " in " + path +
                          ": " + error.what());
        }
    }
    return problems;
}

}  // namespace tpbench
