#pragma once

#include <optional>
#include <string>
#include <vector>

namespace tpbench {

struct ParsedPathAnswer {
    std::vector<long long> path;               // nonempty when parse succeeds
    std::optional<long long> claimed_distance; // the model's own total, if stated
};

// Flat bracketed integer lists at nesting depth zero, in order of
// appearance. Lists nested inside other brackets (edge sets) are skipped.
std::vector<std::vector<long long>> extract_flat_int_lists(const std::string& text);

// The candidate path is the last nonempty flat list in the text; the claimed
// distance is the first integer after the last "shortest distance is"
// clause. Parse failure is a value (nullopt), never an error.
std::optional<ParsedPathAnswer> parse_path_answer(const std::string& text);

// Last flat integer list, which may be empty ("[]" is a valid reply).
std::optional<std::vector<long long>> parse_neighbor_list(const std::string& text);

// Last "Solution k is better" assertion, 1-based, accepted only when
// 1 <= k <= candidate_count.
std::optional<int> parse_solution_choice(const std::string& text, int candidate_count);

// First integer after the last "most promising" clause.
std::optional<long long> parse_promising_node(const std::string& text);

}  // namespace tpbench
