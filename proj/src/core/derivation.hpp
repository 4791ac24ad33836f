#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "graph.hpp"
#include "word.hpp"

namespace cwf {

// (color, profile). Cells are totally ordered color-major, then by profile bitmask.
struct Cell {
    int color = 1;
    Profile profile = 0;
    auto operator<=>(const Cell&) const = default;
};

inline int cell_count(int k) { return k << k; }
inline int cell_index(const Cell& c, int k) { return ((c.color - 1) << k) | static_cast<int>(c.profile); }
inline Cell cell_at(int index, int k) { return {(index >> k) + 1, static_cast<Profile>(index & ((1 << k) - 1))}; }
std::string cell_to_text(const Cell& c);  // e.g. "1:{1,2}"

// Unordered cell pairs {c, d} as (index c, index d) with c <= d, sorted.
using CellPairs = std::vector<std::pair<int, int>>;
std::string cell_pairs_to_text(const CellPairs& z, int k);

struct Derivation {
    ColoredGraph graph;
    std::vector<Profile> profiles;  // indexed like graph.ids()
    ColorMap phi;

    int k() const { return graph.k(); }
    Cell cell_at_index(std::size_t v) const { return {graph.color_at(v), profiles[v]}; }
    bool operator==(const Derivation&) const = default;
};

// The empty derivation with recoloring phi.
Derivation atomic_recolor(int k, ColorMap phi);
// One vertex of color i and profile X with recoloring phi.
Derivation atomic_vertex(int k, int color, Profile profile, VertexId id, ColorMap phi);
Derivation atomic_of(const Instruction& ins, int k);

// sigma1 . sigma2; throws InputError on a vertex id collision or different k.
Derivation compose(const Derivation& a, const Derivation& b);
// Left-to-right product; throws InputError when empty.
Derivation product(const std::vector<Derivation>& factors);
Derivation from_word(const LinearWord& w);

// Vertex indices of every nonempty cell, keyed by cell index.
std::map<int, std::vector<std::size_t>> cell_members(const Derivation& s);
// Nonempty cell indices, sorted.
std::vector<int> essential_cells(const Derivation& s);

// Underlying graph with the flip between cells c and d applied for each pair in z.
ColoredGraph zflip(const Derivation& s, const CellPairs& z);

Derivation restrict_derivation(const Derivation& s, const std::vector<VertexId>& keep);

// Same derivation with every vertex id increased by `offset`.
Derivation shift_ids(const Derivation& s, VertexId offset);

struct BlockProduct {
    std::vector<Derivation> factors;
    Derivation composed;
    std::vector<int> block_of;                // per vertex index of composed, blocks numbered 1..n
    std::map<int, Bits> members;              // cell index -> vertices of that cell in their own block
    std::vector<int> modulus;                 // block_of mod 7

    int blocks() const { return static_cast<int>(factors.size()); }
};

// Composes the factors and records, for every vertex, the block it came from and its cell
// within that block.
BlockProduct block_product(const std::vector<Derivation>& factors);

std::string derivation_to_text(const Derivation& s);
Derivation parse_derivation(std::string_view text);

}  // namespace cwf
