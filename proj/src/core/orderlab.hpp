#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "abstraction.hpp"
#include "derivation.hpp"
#include "rng.hpp"

namespace cwf {

// Cyclic distance between two residues mod 7.
int modulus_distance(int a, int b);

// A product sigma_1 ... sigma_n of factors with equal reduced abstraction and idempotent
// recoloring, with everything the order interpretations read. Vertices are addressed by their
// index in the composed graph.
struct OrderLabContext {
    int k = 1;
    std::vector<Derivation> factors;
    Derivation composed;
    ColorMap phi;
    std::vector<int> essential;  // cells nonempty in every factor

    // Per vertex.
    std::vector<int> block;    // 1..n; the ground truth the interpretations must recover
    std::vector<int> modulus;  // block mod 7
    std::vector<int> cell;     // cell index within the vertex's own block
    std::vector<Bits> g;       // adjacency of the composed graph

    // Derived from the above by refresh().
    CellPairs z;                          // positive pairs of essential cells
    std::vector<Bits> h;                  // g flipped between the cells of every pair in z
    std::map<int, Bits> members;          // cell -> vertices in that cell of their own block
    std::vector<int> h_component;         // per vertex
    int h_components = 0;
    std::vector<int> social_component;    // per cell index; -1 for solitary and inessential cells
    int social_components = 0;
    std::vector<int> cluster;             // per social component
    int clusters = 0;

    std::size_t size() const { return g.size(); }
    int blocks() const { return static_cast<int>(factors.size()); }
    bool social(std::size_t v) const;
    bool mixed(int c, int d) const;
    // c = (i, X), d = (j, Y): phi(j) not in X and phi(i) in Y.
    bool oriented(int c, int d) const;
};

// Checks the preconditions, fills the context and throws InternalError when the flipped graph
// differs from the flip of the composed derivation.
OrderLabContext build_context(const std::vector<Derivation>& factors);
// Recomputes the derived fields from block, modulus, cell and g.
void refresh(OrderLabContext& ctx);

// n copies of sigma with disjoint ids.
std::vector<Derivation> renamed_powers(const Derivation& sigma, int n);
// The single-Z registries (Z = positive pairs) of sigma^m agree for m = 1..n.
bool registry_stable(const Derivation& sigma, int n);
// abst(sigma sigma) = abst(sigma) over every Z; exact idempotence, practical for k = 1.
bool fully_idempotent(const Derivation& sigma);
// Smallest power of tau with idempotent reduced abstraction and stable registries up to n,
// if it has at most max_vertices vertices.
std::optional<Derivation> idempotent_power(const Derivation& tau, int n, std::size_t max_vertices);
// Power context sigma^n for a sigma drawn from short random words over [k].
OrderLabContext random_power_context(int k, int n, std::uint64_t seed);

// Interpretations of the block order from adjacency, cell membership and moduli only.
// Comparisons return -1, 0 or 1 for before, same block, after.
class OrderInterpreter {
public:
    explicit OrderInterpreter(const OrderLabContext& ctx);

    // w witnesses u before v for u, v in the cell of u and w in the cell d mixed with it.
    bool is_pivot(std::size_t w, std::size_t u, std::size_t v) const;
    // Some vertex of `partner` forces u strictly before v (u, v in cell c).
    bool witnesses_before(int c, int partner, std::size_t u, std::size_t v) const;
    // u, v in cell c; `partner` mixed with c.
    int compare_same_cell(int c, int partner, std::size_t u, std::size_t v);
    // u in c, v in d, {c, d} mixed.
    int compare_mixed(int c, int d, std::size_t u, std::size_t v);
    // u, v social in the same component of the social graph.
    bool component_leq(std::size_t u, std::size_t v);
    // u, v social in the same cluster.
    bool cluster_leq(std::size_t u, std::size_t v);
    // Vertices of H-component f, and row i: which of them the i-th one precedes or equals.
    std::vector<std::size_t> component_vertices(int f) const;
    std::vector<Bits> block_order_in_component(int f);

private:
    const std::vector<signed char>& same_table(int c, int partner);
    const std::vector<signed char>& mixed_table(int c, int d);
    const Bits& component_reach(std::size_t u);
    const Bits& cluster_reach(std::size_t u);
    int partner_of(int c) const;

    const OrderLabContext& ctx_;
    std::size_t n_;
    std::map<std::pair<int, int>, std::vector<signed char>> same_, mixed_;
    std::map<std::size_t, Bits> component_reach_, cluster_reach_;
    std::map<std::size_t, Bits> same_modulus_links_;
};

struct ClaimResult {
    std::string name;
    bool passed = true;
    std::size_t checks = 0;
    std::string counterexample;  // first failure
};

const std::vector<std::string>& claim_names();
// Runs the selected claims (all when empty) against the ground-truth block order.
// Throws InputError on an unknown claim name.
std::vector<ClaimResult> claims_suite(const OrderLabContext& ctx, const std::vector<std::string>& selection = {});

enum class Mutation { FlipEdge, RecellVertex, ReverseBlocks };
const char* mutation_name(Mutation m);
// Corrupted copy: one toggled adjacency, one vertex moved to another cell, or the ground-truth
// block numbering reversed (moduli kept).
OrderLabContext mutate(const OrderLabContext& ctx, Mutation m, Rng& rng);

}  // namespace cwf
