#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "text_util.hpp"

namespace cwf {

using VertexId = std::int64_t;
using Bits = boost::dynamic_bitset<std::uint64_t>;

// Finite simple graph with a color in [k] per vertex. Vertices are kept sorted by id and
// addressed internally by their index in that order.
class ColoredGraph {
public:
    ColoredGraph() = default;
    explicit ColoredGraph(int k) : k_(k) {}

    int k() const { return k_; }
    std::size_t size() const { return ids_.size(); }
    bool empty() const { return ids_.empty(); }

    const std::vector<VertexId>& ids() const { return ids_; }
    VertexId id_at(std::size_t idx) const { return ids_[idx]; }
    int color_at(std::size_t idx) const { return colors_[idx]; }
    const std::vector<int>& colors() const { return colors_; }
    const std::vector<std::uint32_t>& neighbors(std::size_t idx) const { return adj_[idx]; }

    std::optional<std::size_t> index_of(VertexId id) const;
    bool has_vertex(VertexId id) const { return index_of(id).has_value(); }
    int color_of(VertexId id) const;
    bool adjacent_idx(std::size_t a, std::size_t b) const;
    bool adjacent(VertexId a, VertexId b) const;

    std::size_t edge_count() const;
    // Edges as (id1, id2) with id1 < id2, sorted lexicographically.
    std::vector<std::pair<VertexId, VertexId>> edges() const;

    // Dense adjacency rows indexed like ids().
    std::vector<Bits> rows() const;

    bool operator==(const ColoredGraph& o) const {
        return k_ == o.k_ && ids_ == o.ids_ && colors_ == o.colors_ && adj_ == o.adj_;
    }
    bool operator!=(const ColoredGraph& o) const { return !(*this == o); }

    // Same vertex ids and edges; colors and k ignored.
    bool same_structure(const ColoredGraph& o) const { return ids_ == o.ids_ && adj_ == o.adj_; }

private:
    friend class GraphBuilder;
    friend ColoredGraph from_rows(int k, std::vector<VertexId> ids, std::vector<int> colors,
                                  const std::vector<Bits>& rows);
    friend ColoredGraph from_adjacency(int k, std::vector<VertexId> ids, std::vector<int> colors,
                                       std::vector<std::vector<std::uint32_t>> adj);
    int k_ = 1;
    std::vector<VertexId> ids_;
    std::vector<int> colors_;
    std::vector<std::vector<std::uint32_t>> adj_;
};

// Accumulates vertices and edges in any order, validates, and produces a canonical graph.
class GraphBuilder {
public:
    explicit GraphBuilder(int k) : k_(k) {}
    GraphBuilder& add_vertex(VertexId id, int color);
    GraphBuilder& add_edge(VertexId a, VertexId b);
    // Throws InputError on duplicate vertices/edges, self-loops, unknown endpoints or bad colors.
    ColoredGraph build() const;

private:
    int k_;
    std::vector<std::pair<VertexId, int>> vertices_;
    std::vector<std::pair<VertexId, VertexId>> edges_;
};

// Rebuilds a graph from dense rows; ids must be sorted and rows symmetric and irreflexive.
ColoredGraph from_rows(int k, std::vector<VertexId> ids, std::vector<int> colors,
                       const std::vector<Bits>& rows);

// Rebuilds a graph from neighbour lists (any order); ids must be sorted, lists symmetric.
ColoredGraph from_adjacency(int k, std::vector<VertexId> ids, std::vector<int> colors,
                            std::vector<std::vector<std::uint32_t>> adj);

// Toggles adjacency for every pair x in X, y in Y, x != y.
ColoredGraph flip(const ColoredGraph& g, const std::vector<VertexId>& x, const std::vector<VertexId>& y);

// Components listed by smallest vertex id; each component sorted.
std::vector<std::vector<VertexId>> connected_components(const ColoredGraph& g);

// Component label per vertex index, labels numbered in canonical component order.
std::vector<std::size_t> component_labels(const ColoredGraph& g);

// Number of classes of "same side and same neighbourhood on the other side" for the cut (V0, rest).
std::size_t partition_rank(const ColoredGraph& g, const std::vector<VertexId>& side0);

ColoredGraph induced_subgraph(const ColoredGraph& g, const std::vector<VertexId>& keep);

// Same graph with every color replaced; `colors` indexed like ids().
ColoredGraph with_colors(const ColoredGraph& g, int k, std::vector<int> colors);

// Exact isomorphism test by backtracking (intended for small graphs, at most 16 vertices).
bool isomorphic(const ColoredGraph& a, const ColoredGraph& b, bool respect_colors);

std::string graph_to_text(const ColoredGraph& g);
ColoredGraph parse_graph(std::string_view text);
// Consumes the `graph`/`v`/`e` lines starting at `pos`; leaves `pos` at the first other line.
ColoredGraph parse_graph_lines(const std::vector<text::Line>& lines, std::size_t& pos);

}  // namespace cwf
