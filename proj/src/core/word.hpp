#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "graph.hpp"
#include "term.hpp"

namespace cwf {

using Profile = std::uint32_t;  // bit i-1 set iff color i is in the set

constexpr int kMaxWordColors = 16;

inline bool profile_has(Profile x, int color) { return (x >> (color - 1)) & 1u; }
inline Profile profile_of(const std::vector<int>& colors) {
    Profile x = 0;
    for (int c : colors) x |= Profile{1} << (c - 1);
    return x;
}
std::vector<int> profile_colors(Profile x);
std::string profile_to_text(Profile x);  // "-" or comma list

// Color map over [k], stored as images of 1..k.
using ColorMap = std::vector<int>;
ColorMap identity_map(int k);
// (outer after inner)(c) = outer(inner(c)).
ColorMap compose_maps(const ColorMap& outer, const ColorMap& inner);
// Colors whose image lies in `x`.
Profile preimage(const ColorMap& phi, Profile x);

struct Instruction {
    enum class Kind { AddVertex, Recolor } kind = Kind::AddVertex;
    int color = 1;        // AddVertex
    Profile profile = 0;  // AddVertex
    VertexId id = 0;      // AddVertex
    ColorMap phi;         // Recolor

    static Instruction add(int color, Profile profile, VertexId id) {
        return {Kind::AddVertex, color, profile, id, {}};
    }
    static Instruction recolor(ColorMap phi) { return {Kind::Recolor, 0, 0, 0, std::move(phi)}; }
    bool operator==(const Instruction&) const = default;
};

struct LinearWord {
    int k = 1;
    std::vector<Instruction> items;
    bool operator==(const LinearWord&) const = default;
};

// Throws InputError on colors outside [k], bad map lengths or repeated vertex ids.
void validate_word(const LinearWord& w);

ColoredGraph eval_word(const LinearWord& w);

// Width <= k+1 term with the same result; uses color k+1 for the vertex being attached.
CliqueTerm linear_to_term(const LinearWord& w);

std::string word_to_text(const LinearWord& w);
LinearWord parse_word(std::string_view text);

}  // namespace cwf
