#include "tpbench/parse.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <regex>

namespace tpbench {

namespace {

// Integers inside a bracket-free span, requiring comma separation.
std::optional<std::vector<long long>> parse_int_csv(std::string_view body) {
    std::vector<long long> values;
    size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < body.size() && std::isspace(static_cast<unsigned char>(body[pos]))) ++pos;
    };
    skip_ws();
    if (pos == body.size()) return values;  // empty list
    while (true) {
        skip_ws();
        long long value = 0;
        auto [ptr, ec] = std::from_chars(body.data() + pos, body.data() + body.size(), value);
        if (ec != std::errc()) return std::nullopt;
        values.push_back(value);
        pos = ptr - body.data();
        skip_ws();
        if (pos == body.size()) return values;
        if (body[pos] != ',') return std::nullopt;
        ++pos;
    }
}

// Case-insensitive position of the last occurrence of `needle`.
std::optional<size_t> rfind_ci(const std::string& text, std::string_view needle) {
    if (needle.empty() || text.size() < needle.size()) return std::nullopt;
    auto lower = [](char c) { return std::tolower(static_cast<unsigned char>(c)); };
    for (size_t start = text.size() - needle.size() + 1; start-- > 0;) {
        bool hit = true;
        for (size_t i = 0; i < needle.size() && hit; ++i)
            hit = lower(text[start + i]) == lower(needle[i]);
        if (hit) return start;
    }
    return std::nullopt;
}

std::optional<long long> first_int_after(const std::string& text, size_t from) {
    for (size_t i = from; i < text.size(); ++i) {
        char c = text[i];
        bool digit = std::isdigit(static_cast<unsigned char>(c));
        bool negative = c == '-' && i + 1 < text.size() &&
                        std::isdigit(static_cast<unsigned char>(text[i + 1]));
        if (!digit && !negative) continue;
        long long value = 0;
        auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
        if (ec == std::errc()) return value;
        return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace

std::vector<std::vector<long long>> extract_flat_int_lists(const std::string& text) {
    std::vector<std::vector<long long>> lists;
    size_t i = 0;
    while (i < text.size()) {
        if (text[i] != '[') {
            ++i;
            continue;
        }
        // Walk the whole bracketed region; keep it only if it never nests.
        size_t start = i;
        int depth = 0;
        bool nested = false;
        size_t j = i;
        for (; j < text.size(); ++j) {
            if (text[j] == '[') {
                ++depth;
                if (depth > 1) nested = true;
            } else if (text[j] == ']') {
                --depth;
                if (depth == 0) break;
            }
        }
        if (j == text.size()) break;  // unbalanced; ignore the rest
        if (!nested) {
            auto body = std::string_view(text).substr(start + 1, j - start - 1);
            if (auto values = parse_int_csv(body)) lists.push_back(std::move(*values));
        }
        i = j + 1;
    }
    return lists;
}

std::optional<ParsedPathAnswer> parse_path_answer(const std::string& text) {
    auto lists = extract_flat_int_lists(text);
    ParsedPathAnswer answer;
    for (auto it = lists.rbegin(); it != lists.rend(); ++it) {
        if (!it->empty()) {
            answer.path = *it;
            break;
        }
    }
    if (answer.path.empty()) return std::nullopt;
    if (auto at = rfind_ci(text, "shortest distance is"))
        answer.claimed_distance = first_int_after(text, *at + std::string_view("shortest distance is").size());
    return answer;
}

std::optional<std::vector<long long>> parse_neighbor_list(const std::string& text) {
    auto lists = extract_flat_int_lists(text);
    if (lists.empty()) return std::nullopt;
    return lists.back();
}

std::optional<int> parse_solution_choice(const std::string& text, int candidate_count) {
    static const std::regex pattern(R"(solution\s+(\d+)\s+is\s+better)", std::regex::icase);
    std::optional<int> choice;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), pattern);
         it != std::sregex_iterator(); ++it) {
        const std::string digits = (*it)[1].str();
        int k = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
        if (ec != std::errc()) continue;
        if (k >= 1 && k <= candidate_count) choice = k;
    }
    return choice;
}

std::optional<long long> parse_promising_node(const std::string& text) {
    auto at = rfind_ci(text, "most promising");
    if (!at) return std::nullopt;
    return first_int_after(text, *at + std::string_view("most promising").size());
}

}  // namespace tpbench
