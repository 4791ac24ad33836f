#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace cwf {

enum class NodeKind { Empty, Const, Recolor, Join };

struct Node;
using NodePtr = std::shared_ptr<const Node>;
using ColorPair = std::pair<int, int>;

// Tree node of a clique decomposition. Only the fields of the node's kind are meaningful.
struct Node {
    NodeKind kind = NodeKind::Empty;
    int color = 0;                     // Const
    VertexId id = 0;                   // Const
    std::vector<ColorPair> recolor;    // Recolor: sorted (from, to) entries with from != to
    std::vector<ColorPair> pairs;      // Join: sorted pairs (c, d) with c <= d; (c, c) is a singleton
    std::vector<NodePtr> children;     // Recolor: exactly one; Join: at least one
};

NodePtr make_empty();
NodePtr make_const(int color, VertexId id);
// `moves` may contain identity entries; they are dropped. Recolor of Empty stays Empty.
NodePtr make_recolor(std::vector<ColorPair> moves, NodePtr child);
// Pairs are canonicalised and deduplicated. Children must be nonempty.
NodePtr make_join(std::vector<ColorPair> pairs, std::vector<NodePtr> children);

// Applies a sparse recolor map to a color.
int apply_moves(const std::vector<ColorPair>& moves, int c);

// A clique decomposition together with its declared color budget.
struct CliqueTerm {
    int k = 1;
    NodePtr root = make_empty();
};

// Largest color mentioned anywhere (0 for a term without colors).
int max_color(const NodePtr& n);
// Checks kinds, arities and that every color lies in [1, k]; throws InputError otherwise.
void validate_term(const CliqueTerm& t);

ColoredGraph eval_term(const CliqueTerm& t);

// Number of distinct colors used by constants, join pairs and non-identity recolor entries.
int term_width(const NodePtr& n);
std::size_t term_depth(const NodePtr& n);
std::size_t term_size(const NodePtr& n);
std::vector<VertexId> leaf_ids(const NodePtr& n);

// Colors present on the result graph of the node.
std::vector<int> live_colors(const NodePtr& n);

// Same graph, final color of every vertex equal to its class in `parts` (classes 1..p).
CliqueTerm enforce_colors(const CliqueTerm& t, const std::map<VertexId, int>& parts);

// Term whose result is the subgraph induced on `keep`; throws InputError if keep has non-leaves.
CliqueTerm restrict_term(const CliqueTerm& t, const std::set<VertexId>& keep);

// Relabels colors so each subtree uses few of them. With `compact`, final colors become 1..m
// in increasing order of the old ones; otherwise the final colors are kept.
CliqueTerm normalize(const CliqueTerm& t, bool compact);

std::string term_to_text(const CliqueTerm& t);
// Accepts `(const i)` without an id; such leaves get the smallest unused nonnegative ids in leaf order.
CliqueTerm parse_term(std::string_view text);

}  // namespace cwf
