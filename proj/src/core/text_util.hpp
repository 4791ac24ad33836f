#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace cwf::text {

struct Line {
    std::size_t number;  // 1-based
    std::vector<std::string_view> tokens;
};

// Splits text into non-blank lines with `#` comments removed.
inline std::vector<Line> tokenize_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++lineno;
        std::string_view line = text.substr(pos, end - pos);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        Line l{lineno, {}};
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
            std::size_t j = i;
            while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
            if (j > i) l.tokens.push_back(line.substr(i, j - i));
            i = j;
        }
        if (!l.tokens.empty()) out.push_back(std::move(l));
        if (end == text.size()) break;
        pos = end + 1;
    }
    return out;
}

[[noreturn]] inline void fail_at(std::size_t line, const std::string& msg) {
    throw InputError("line " + std::to_string(line) + ": " + msg);
}

template <typename Int>
Int parse_int(std::string_view tok, std::size_t line, const char* what) {
    Int v{};
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        fail_at(line, std::string("expected integer ") + what + ", got '" + std::string(tok) + "'");
    return v;
}

// Parses "-" (empty) or a comma separated list of integers.
inline std::vector<int> parse_int_list(std::string_view tok, std::size_t line, const char* what) {
    std::vector<int> out;
    if (tok == "-") return out;
    std::size_t pos = 0;
    while (pos <= tok.size()) {
        std::size_t comma = tok.find(',', pos);
        if (comma == std::string_view::npos) comma = tok.size();
        out.push_back(parse_int<int>(tok.substr(pos, comma - pos), line, what));
        if (comma == tok.size()) break;
        pos = comma + 1;
    }
    return out;
}

// Parses a `key=value` header token such as `k=3`.
inline int parse_k_token(std::string_view tok, std::size_t line) {
    if (tok.size() < 3 || tok.substr(0, 2) != "k=") fail_at(line, "expected k=<int>");
    int k = parse_int<int>(tok.substr(2), line, "k");
    if (k < 1) fail_at(line, "k must be positive");
    return k;
}

}  // namespace cwf::text
