#pragma once

#include <cstdint>

#include "rng.hpp"
#include "derivation.hpp"
#include "term.hpp"
#include "word.hpp"

namespace cwf {

struct GenSpec {
    int k = 2;
    std::size_t length = 10;
    std::uint64_t seed = 1;
    double add_weight = 0.8;
    double recolor_weight = 0.2;
    double profile_density = 0.5;  // probability that each color joins a profile
};

// Deterministic in the spec. Vertex ids are 0, 1, 2, ... in insertion order.
// A length-1 word is always a single AddVertex.
LinearWord gen_word(const GenSpec& spec);

// Random recolor map over [k].
ColorMap random_map(int k, Rng& rng);

// Arbitrary derivation (not necessarily generated by a word): up to max_vertices vertices on
// ids first_id, first_id+1, ..., each edge present with probability edge_p.
Derivation random_derivation(Rng& rng, int k, int max_vertices, VertexId first_id, double edge_p = 0.4);

// Random clique term with `leaves` constants over [k]; ids 0..leaves-1 in shuffled leaf order.
CliqueTerm random_term(int k, std::size_t leaves, Rng& rng);

}  // namespace cwf
