#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "derivation.hpp"

namespace cwf {

// Subset of cells as a bitmask over cell indices (needs k * 2^k <= 64, i.e. k <= 4).
using CellMask = std::uint64_t;
constexpr int kMaxRegistryColors = 4;
constexpr int kMaxRegistryCells = 12;  // registries enumerate all subsets of the essential cells

struct RegistryEntry {
    int z;  // index into the Z-family
    int from;
    int to;
    CellMask through;
    auto operator<=>(const RegistryEntry&) const = default;
};

// Essential cells, connectivity registry over a Z-family, recoloring.
struct Abstraction {
    int k = 1;
    std::vector<int> essential;      // sorted cell indices
    std::vector<CellPairs> zfamily;  // the Z's the registry covers
    std::set<RegistryEntry> registry;
    ColorMap phi;
    bool operator==(const Abstraction&) const = default;
};

// Every subset of the pair space over all cells; only sensible for k = 1 (8 sets).
std::vector<CellPairs> all_z(int k);

// Records (Z, c, d, W) whenever the Z-flip has a path from a c-vertex to a d-vertex whose inner
// vertices lie in cells of W. W ranges over subsets of the essential cells: cells outside L
// contribute no vertices, so any other W behaves like its intersection with L.
Abstraction abstract(const Derivation& s, const std::vector<CellPairs>& zfamily);

std::string abstraction_to_text(const Abstraction& a);

// Essential cells plus recoloring; composes without registries.
struct ReducedAbstraction {
    std::vector<int> essential;  // sorted cell indices
    ColorMap phi;
    auto operator<=>(const ReducedAbstraction&) const = default;
};

ReducedAbstraction reduced(const Derivation& s);
ReducedAbstraction reduced(const Abstraction& a);
ReducedAbstraction reduced_compose(const ReducedAbstraction& a, const ReducedAbstraction& b);
bool is_idempotent(const ReducedAbstraction& e);
// phi(i) = i on the image of phi.
bool phi_is_idempotent(const ColorMap& phi);
std::string reduced_to_text(const ReducedAbstraction& e);
std::size_t hash_value(const ReducedAbstraction& e);

// Colors of the essential cells and the recoloring: a homomorphic image of the reduced
// abstraction with at most 2^k k^k elements, used where the reduced ones are too many to enumerate.
struct CoarseAbstraction {
    Profile colors = 0;
    ColorMap phi;
    auto operator<=>(const CoarseAbstraction&) const = default;
};

CoarseAbstraction coarse(const Derivation& s);
CoarseAbstraction coarse_compose(const CoarseAbstraction& a, const CoarseAbstraction& b);
std::string coarse_to_text(const CoarseAbstraction& e);

enum class PairType { Negative, Positive, Mixed };
const char* pair_type_name(PairType t);
PairType pair_type(const Cell& c, const Cell& d, const ColorMap& phi);
// All unordered pairs of essential cells (c = d allowed) whose type is positive.
CellPairs positive_pairs(const std::vector<int>& essential, const ColorMap& phi, int k);

}  // namespace cwf
