#pragma once

#include <string>
#include <vector>

#include "derivation.hpp"
#include "term.hpp"
#include "word.hpp"

namespace cwf {

// Semigroup the factorisation forest is built over. Automatic picks Reduced for k <= 2 and
// Coarse above, where the reduced abstractions generate too many elements to enumerate.
enum class FactorizationImage { Automatic, Reduced, Coarse };

struct DecomposeOptions {
    FactorizationImage image = FactorizationImage::Automatic;
    // Also compare single-Z registries of the children of every idempotent node (slow; k <= 4).
    bool audit_idempotent_nodes = false;
    std::size_t closure_cap = 1000000;
};

struct DecomposeResult {
    CliqueTerm term;
    int width = 0;
    std::size_t forest_depth = 0;
    FactorizationImage image = FactorizationImage::Reduced;  // the one actually used
    std::size_t semigroup_size = 0;                          // |T'| of the letters' images
    // Max term width among forest nodes of each height, leaves first.
    std::vector<int> per_level_widths;
    double width_bound = 0;  // width_bound(k, forest_depth)
    std::size_t idempotent_nodes = 0;
    // Idempotent nodes whose children have different registries for the positive Z; -1 if not audited.
    long long unequal_registry_nodes = -1;
};

// Factorisation forest of a word's letter images, with its dump and self-check.
struct WordForest {
    FactorizationImage image = FactorizationImage::Reduced;  // the one actually used
    std::size_t depth = 0;
    std::size_t depth_bound = 0;
    std::size_t semigroup_size = 0;
    std::string text;  // forest_to_text
    bool verified = false;
    std::string message;  // verify_forest diagnostic when not verified
};

WordForest word_forest(const LinearWord& w, FactorizationImage image = FactorizationImage::Automatic,
                       std::size_t closure_cap = 1000000);

// Explicit width bound: leaves have width 1, each forest level multiplies by (k + c) c, c = k 2^k.
double width_bound(int k, std::size_t forest_depth);

DecomposeResult decompose(const LinearWord& w, const DecomposeOptions& options = {});

// Term for the underlying graph of s.t from terms of s and t. With `check_inputs`, throws
// InputError when a term does not evaluate to its derivation's underlying graph.
CliqueTerm assemble_binary(const Derivation& s, const Derivation& t, const CliqueTerm& ts, const CliqueTerm& tt,
                           bool check_inputs = true);

// Term for the underlying graph of the product of `factors` through flips along the positive
// pairs of the first factor's cells.
CliqueTerm assemble_idempotent(const std::vector<Derivation>& factors, const std::vector<CliqueTerm>& terms,
                               bool check_inputs = true);

struct DecompositionCheck {
    bool ok = true;
    std::string message;
};

// Leaf ids of the term equal the word's vertex ids and the edge sets coincide.
DecompositionCheck verify_decomposition(const LinearWord& w, const CliqueTerm& t);
DecompositionCheck verify_against_graph(const ColoredGraph& expected, const CliqueTerm& t);

}  // namespace cwf
