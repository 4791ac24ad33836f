#include "graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "error.hpp"

namespace cwf {

std::optional<std::size_t> ColoredGraph::index_of(VertexId id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) return std::nullopt;
    return static_cast<std::size_t>(it - ids_.begin());
}

int ColoredGraph::color_of(VertexId id) const {
    auto idx = index_of(id);
    if (!idx) throw InputError("unknown vertex id " + std::to_string(id));
    return colors_[*idx];
}

bool ColoredGraph::adjacent_idx(std::size_t a, std::size_t b) const {
    const auto& n = adj_[a];
    return std::binary_search(n.begin(), n.end(), static_cast<std::uint32_t>(b));
}

bool ColoredGraph::adjacent(VertexId a, VertexId b) const {
    auto ia = index_of(a), ib = index_of(b);
    if (!ia || !ib) throw InputError("unknown vertex id");
    return adjacent_idx(*ia, *ib);
}

std::size_t ColoredGraph::edge_count() const {
    std::size_t twice = 0;
    for (const auto& n : adj_) twice += n.size();
    return twice / 2;
}

std::vector<std::pair<VertexId, VertexId>> ColoredGraph::edges() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    out.reserve(edge_count());
    for (std::size_t i = 0; i < ids_.size(); ++i)
        for (auto j : adj_[i])
            if (j > i) out.emplace_back(ids_[i], ids_[j]);
    return out;  // ids sorted and neighbour lists sorted, so already lexicographic
}

std::vector<Bits> ColoredGraph::rows() const {
    std::vector<Bits> r(ids_.size(), Bits(ids_.size()));
    for (std::size_t i = 0; i < ids_.size(); ++i)
        for (auto j : adj_[i]) r[i].set(j);
    return r;
}

GraphBuilder& GraphBuilder::add_vertex(VertexId id, int color) {
    vertices_.emplace_back(id, color);
    return *this;
}

GraphBuilder& GraphBuilder::add_edge(VertexId a, VertexId b) {
    edges_.emplace_back(std::min(a, b), std::max(a, b));
    return *this;
}

ColoredGraph GraphBuilder::build() const {
    if (k_ < 1) throw InputError("k must be positive");
    ColoredGraph g(k_);
    auto verts = vertices_;
    std::sort(verts.begin(), verts.end());
    for (std::size_t i = 0; i < verts.size(); ++i) {
        if (i > 0 && verts[i].first == verts[i - 1].first)
            throw InputError("duplicate vertex id " + std::to_string(verts[i].first));
        if (verts[i].second < 1 || verts[i].second > k_)
            throw InputError("color " + std::to_string(verts[i].second) + " of vertex " +
                             std::to_string(verts[i].first) + " outside [1," + std::to_string(k_) + "]");
        g.ids_.push_back(verts[i].first);
        g.colors_.push_back(verts[i].second);
    }
    g.adj_.assign(g.ids_.size(), {});
    auto es = edges_;
    std::sort(es.begin(), es.end());
    for (std::size_t i = 0; i < es.size(); ++i) {
        auto [a, b] = es[i];
        if (a == b) throw InputError("self-loop on vertex " + std::to_string(a));
        if (i > 0 && es[i] == es[i - 1])
            throw InputError("duplicate edge " + std::to_string(a) + " " + std::to_string(b));
        auto ia = g.index_of(a), ib = g.index_of(b);
        if (!ia || !ib) throw InputError("edge " + std::to_string(a) + " " + std::to_string(b) + " uses an unknown vertex");
        g.adj_[*ia].push_back(static_cast<std::uint32_t>(*ib));
        g.adj_[*ib].push_back(static_cast<std::uint32_t>(*ia));
    }
    for (auto& n : g.adj_) std::sort(n.begin(), n.end());
    return g;
}

ColoredGraph from_rows(int k, std::vector<VertexId> ids, std::vector<int> colors, const std::vector<Bits>& rows) {
    ColoredGraph g(k);
    g.ids_ = std::move(ids);
    g.colors_ = std::move(colors);
    g.adj_.assign(g.ids_.size(), {});
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (auto j = rows[i].find_first(); j != Bits::npos; j = rows[i].find_next(j))
            g.adj_[i].push_back(static_cast<std::uint32_t>(j));
    return g;
}

ColoredGraph from_adjacency(int k, std::vector<VertexId> ids, std::vector<int> colors,
                            std::vector<std::vector<std::uint32_t>> adj) {
    ColoredGraph g(k);
    g.ids_ = std::move(ids);
    g.colors_ = std::move(colors);
    for (auto& n : adj) std::sort(n.begin(), n.end());
    g.adj_ = std::move(adj);
    return g;
}

namespace {

std::vector<std::size_t> indices_of(const ColoredGraph& g, const std::vector<VertexId>& vs) {
    std::vector<std::size_t> out;
    out.reserve(vs.size());
    for (auto v : vs) {
        auto idx = g.index_of(v);
        if (!idx) throw InputError("unknown vertex id " + std::to_string(v));
        out.push_back(*idx);
    }
    return out;
}

}  // namespace

ColoredGraph flip(const ColoredGraph& g, const std::vector<VertexId>& x, const std::vector<VertexId>& y) {
    auto xi = indices_of(g, x), yi = indices_of(g, y);
    std::sort(xi.begin(), xi.end());
    xi.erase(std::unique(xi.begin(), xi.end()), xi.end());
    Bits ymask(g.size());
    for (auto j : yi) ymask.set(j);
    Bits xmask(g.size());
    for (auto i : xi) xmask.set(i);
    auto rows = g.rows();
    // Pair {a,b} toggles once if exactly one orientation lies in X x Y, and also once if both do
    // (the unordered pair is flipped a single time).
    std::vector<Bits> toggle(g.size(), Bits(g.size()));
    for (auto i : xi) toggle[i] |= ymask;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (ymask.test(i)) toggle[i] |= xmask;
    for (std::size_t i = 0; i < g.size(); ++i) {
        toggle[i].reset(i);
        rows[i] ^= toggle[i];
    }
    return from_rows(g.k(), g.ids(), g.colors(), rows);
}

std::vector<std::size_t> component_labels(const ColoredGraph& g) {
    const std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> label(g.size(), none);
    std::size_t next = 0;
    std::vector<std::size_t> stack;
    for (std::size_t s = 0; s < g.size(); ++s) {
        if (label[s] != none) continue;
        label[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (auto w : g.neighbors(v))
                if (label[w] == none) {
                    label[w] = next;
                    stack.push_back(w);
                }
        }
        ++next;
    }
    return label;
}

std::vector<std::vector<VertexId>> connected_components(const ColoredGraph& g) {
    auto label = component_labels(g);
    std::size_t count = label.empty() ? 0 : *std::max_element(label.begin(), label.end()) + 1;
    std::vector<std::vector<VertexId>> comps(count);
    for (std::size_t i = 0; i < g.size(); ++i) comps[label[i]].push_back(g.id_at(i));
    return comps;  // scanning in id order makes labels follow smallest-id order
}

std::size_t partition_rank(const ColoredGraph& g, const std::vector<VertexId>& side0) {
    auto s0 = indices_of(g, side0);
    std::vector<bool> in0(g.size(), false);
    for (auto i : s0) in0[i] = true;
    std::set<std::pair<bool, std::vector<std::uint32_t>>> classes;
    for (std::size_t i = 0; i < g.size(); ++i) {
        std::vector<std::uint32_t> across;
        for (auto j : g.neighbors(i))
            if (in0[j] != in0[i]) across.push_back(j);
        classes.emplace(in0[i], std::move(across));
    }
    return classes.size();
}

ColoredGraph induced_subgraph(const ColoredGraph& g, const std::vector<VertexId>& keep) {
    auto idx = indices_of(g, keep);
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    GraphBuilder b(g.k());
    std::vector<bool> kept(g.size(), false);
    for (auto i : idx) {
        kept[i] = true;
        b.add_vertex(g.id_at(i), g.color_at(i));
    }
    for (auto i : idx)
        for (auto j : g.neighbors(i))
            if (j > i && kept[j]) b.add_edge(g.id_at(i), g.id_at(j));
    return b.build();
}

ColoredGraph with_colors(const ColoredGraph& g, int k, std::vector<int> colors) {
    if (colors.size() != g.size()) throw InputError("color vector size mismatch");
    for (int c : colors)
        if (c < 1 || c > k) throw InputError("color outside [1,k]");
    return from_rows(k, g.ids(), std::move(colors), g.rows());
}

namespace {

struct IsoSearch {
    const ColoredGraph& a;
    const ColoredGraph& b;
    bool colors;
    std::vector<std::size_t> order;  // vertices of a, most constrained first
    std::vector<long> map_ab;        // a index -> b index, -1 unmapped
    std::vector<bool> used_b;

    bool compatible(std::size_t va, std::size_t vb) const {
        if (a.neighbors(va).size() != b.neighbors(vb).size()) return false;
        if (colors && a.color_at(va) != b.color_at(vb)) return false;
        return true;
    }

    bool extend(std::size_t depth) {
        if (depth == order.size()) return true;
        auto va = order[depth];
        for (std::size_t vb = 0; vb < b.size(); ++vb) {
            if (used_b[vb] || !compatible(va, vb)) continue;
            bool ok = true;
            for (std::size_t d = 0; d < depth && ok; ++d) {
                auto ua = order[d];
                auto ub = static_cast<std::size_t>(map_ab[ua]);
                ok = a.adjacent_idx(va, ua) == b.adjacent_idx(vb, ub);
            }
            if (!ok) continue;
            map_ab[va] = static_cast<long>(vb);
            used_b[vb] = true;
            if (extend(depth + 1)) return true;
            used_b[vb] = false;
            map_ab[va] = -1;
        }
        return false;
    }
};

}  // namespace

bool isomorphic(const ColoredGraph& a, const ColoredGraph& b, bool respect_colors) {
    if (a.size() != b.size() || a.edge_count() != b.edge_count()) return false;
    if (a.size() > 16) throw InputError("isomorphism search limited to 16 vertices");
    auto degs = [](const ColoredGraph& g) {
        std::vector<std::size_t> d;
        for (std::size_t i = 0; i < g.size(); ++i) d.push_back(g.neighbors(i).size());
        std::sort(d.begin(), d.end());
        return d;
    };
    if (degs(a) != degs(b)) return false;
    IsoSearch s{a, b, respect_colors, {}, std::vector<long>(a.size(), -1), std::vector<bool>(b.size(), false)};
    // BFS-like order keeps each new vertex adjacent to already-placed ones, which prunes early.
    std::vector<bool> placed(a.size(), false);
    while (s.order.size() < a.size()) {
        std::size_t best = a.size();
        std::size_t best_links = 0;
        for (std::size_t v = 0; v < a.size(); ++v) {
            if (placed[v]) continue;
            std::size_t links = 0;
            for (auto w : a.neighbors(v)) links += placed[w];
            if (best == a.size() || links > best_links ||
                (links == best_links && a.neighbors(v).size() > a.neighbors(best).size())) {
                best = v;
                best_links = links;
            }
        }
        placed[best] = true;
        s.order.push_back(best);
    }
    return s.extend(0);
}

std::string graph_to_text(const ColoredGraph& g) {
    std::string out = "graph k=" + std::to_string(g.k()) + "\n";
    for (std::size_t i = 0; i < g.size(); ++i)
        out += "v " + std::to_string(g.id_at(i)) + " " + std::to_string(g.color_at(i)) + "\n";
    for (auto [a, b] : g.edges()) out += "e " + std::to_string(a) + " " + std::to_string(b) + "\n";
    return out;
}

ColoredGraph parse_graph_lines(const std::vector<text::Line>& lines, std::size_t& pos) {
    if (pos >= lines.size() || lines[pos].tokens[0] != "graph")
        text::fail_at(pos < lines.size() ? lines[pos].number : 0, "expected header 'graph k=<k>'");
    const auto& head = lines[pos];
    if (head.tokens.size() != 2) text::fail_at(head.number, "expected header 'graph k=<k>'");
    int k = text::parse_k_token(head.tokens[1], head.number);
    ++pos;
    GraphBuilder b(k);
    std::set<VertexId> seen;
    std::set<std::pair<VertexId, VertexId>> seen_edges;
    for (; pos < lines.size(); ++pos) {
        const auto& l = lines[pos];
        if (l.tokens[0] == "v") {
            if (l.tokens.size() != 3) text::fail_at(l.number, "expected 'v <id> <color>'");
            auto id = text::parse_int<VertexId>(l.tokens[1], l.number, "vertex id");
            int c = text::parse_int<int>(l.tokens[2], l.number, "color");
            if (c < 1 || c > k) text::fail_at(l.number, "color " + std::to_string(c) + " outside [1," + std::to_string(k) + "]");
            if (!seen.insert(id).second) text::fail_at(l.number, "duplicate vertex " + std::to_string(id));
            b.add_vertex(id, c);
        } else if (l.tokens[0] == "e") {
            if (l.tokens.size() != 3) text::fail_at(l.number, "expected 'e <id> <id>'");
            auto x = text::parse_int<VertexId>(l.tokens[1], l.number, "vertex id");
            auto y = text::parse_int<VertexId>(l.tokens[2], l.number, "vertex id");
            if (x == y) text::fail_at(l.number, "self-loop");
            if (!seen.count(x) || !seen.count(y)) text::fail_at(l.number, "edge uses an undeclared vertex");
            if (!seen_edges.emplace(std::min(x, y), std::max(x, y)).second) text::fail_at(l.number, "duplicate edge");
            b.add_edge(x, y);
        } else {
            break;
        }
    }
    return b.build();
}

ColoredGraph parse_graph(std::string_view text) {
    auto lines = text::tokenize_lines(text);
    std::size_t pos = 0;
    auto g = parse_graph_lines(lines, pos);
    if (pos != lines.size()) text::fail_at(lines[pos].number, "unexpected line '" + std::string(lines[pos].tokens[0]) + "'");
    return g;
}

}  // namespace cwf
