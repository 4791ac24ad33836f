#include "derivation.hpp"

#include <algorithm>

#include "error.hpp"

namespace cwf {

std::string cell_to_text(const Cell& c) {
    std::string out = std::to_string(c.color) + ":{";
    bool first = true;
    for (int x : profile_colors(c.profile)) {
        if (!first) out += ',';
        out += std::to_string(x);
        first = false;
    }
    return out + "}";
}

std::string cell_pairs_to_text(const CellPairs& z, int k) {
    std::string out = "{";
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (i > 0) out += ' ';
        out += "[" + cell_to_text(cell_at(z[i].first, k));
        if (z[i].second != z[i].first) out += " " + cell_to_text(cell_at(z[i].second, k));
        out += "]";
    }
    return out + "}";
}

Derivation atomic_recolor(int k, ColorMap phi) {
    if (static_cast<int>(phi.size()) != k) throw InputError("recoloring must list k images");
    return {ColoredGraph(k), {}, std::move(phi)};
}

Derivation atomic_vertex(int k, int color, Profile profile, VertexId id, ColorMap phi) {
    if (static_cast<int>(phi.size()) != k) throw InputError("recoloring must list k images");
    if (profile >> k) throw InputError("profile outside [1,k]");
    return {GraphBuilder(k).add_vertex(id, color).build(), {profile}, std::move(phi)};
}

Derivation atomic_of(const Instruction& ins, int k) {
    if (ins.kind == Instruction::Kind::Recolor) return atomic_recolor(k, ins.phi);
    return atomic_vertex(k, ins.color, ins.profile, ins.id, identity_map(k));
}

Derivation compose(const Derivation& a, const Derivation& b) {
    const int k = a.k();
    if (b.k() != k) throw InputError("composing derivations with different k");
    const auto& ga = a.graph;
    const auto& gb = b.graph;
    const std::size_t n = ga.size() + gb.size();

    // Merge the sorted id lists; remember where each side's vertices land.
    std::vector<VertexId> ids;
    ids.reserve(n);
    std::vector<std::uint32_t> pos_a(ga.size()), pos_b(gb.size());
    std::size_t i = 0, j = 0;
    while (i < ga.size() || j < gb.size()) {
        if (j == gb.size() || (i < ga.size() && ga.id_at(i) < gb.id_at(j))) {
            pos_a[i] = static_cast<std::uint32_t>(ids.size());
            ids.push_back(ga.id_at(i++));
        } else {
            if (i < ga.size() && ga.id_at(i) == gb.id_at(j))
                throw InputError("vertex id " + std::to_string(gb.id_at(j)) + " occurs in both factors");
            pos_b[j] = static_cast<std::uint32_t>(ids.size());
            ids.push_back(gb.id_at(j++));
        }
    }

    std::vector<int> colors(n);
    std::vector<Profile> profiles(n);
    std::vector<std::vector<std::uint32_t>> adj(n);
    std::vector<std::vector<std::uint32_t>> a_by_color(static_cast<std::size_t>(k) + 1);
    for (std::size_t u = 0; u < ga.size(); ++u) {
        auto p = pos_a[u];
        colors[p] = b.phi[ga.color_at(u) - 1];
        profiles[p] = a.profiles[u];
        for (auto w : ga.neighbors(u)) adj[p].push_back(pos_a[w]);
        a_by_color[ga.color_at(u)].push_back(p);
    }
    for (std::size_t v = 0; v < gb.size(); ++v) {
        auto p = pos_b[v];
        colors[p] = gb.color_at(v);
        profiles[p] = preimage(a.phi, b.profiles[v]);
        for (auto w : gb.neighbors(v)) adj[p].push_back(pos_b[w]);
        for (int c : profile_colors(b.profiles[v]))
            for (auto u : a_by_color[c]) {
                adj[p].push_back(u);
                adj[u].push_back(p);
            }
    }
    return {from_adjacency(k, std::move(ids), std::move(colors), std::move(adj)), std::move(profiles),
            compose_maps(b.phi, a.phi)};
}

Derivation product(const std::vector<Derivation>& factors) {
    if (factors.empty()) throw InputError("product of an empty sequence of derivations");
    Derivation acc = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) acc = compose(acc, factors[i]);
    return acc;
}

Derivation from_word(const LinearWord& w) {
    validate_word(w);
    if (w.items.empty()) throw InputError("empty word has no derivation");
    std::vector<Derivation> atoms;
    atoms.reserve(w.items.size());
    for (const auto& ins : w.items) atoms.push_back(atomic_of(ins, w.k));
    return product(atoms);
}

std::map<int, std::vector<std::size_t>> cell_members(const Derivation& s) {
    std::map<int, std::vector<std::size_t>> out;
    for (std::size_t v = 0; v < s.graph.size(); ++v) out[cell_index(s.cell_at_index(v), s.k())].push_back(v);
    return out;
}

std::vector<int> essential_cells(const Derivation& s) {
    std::vector<int> out;
    for (const auto& [c, vs] : cell_members(s)) out.push_back(c);
    return out;
}

ColoredGraph zflip(const Derivation& s, const CellPairs& z) {
    const auto& g = s.graph;
    auto rows = g.rows();
    auto members = cell_members(s);
    std::map<int, Bits> mask;
    for (const auto& [c, vs] : members) {
        Bits m(g.size());
        for (auto v : vs) m.set(v);
        mask.emplace(c, std::move(m));
    }
    for (auto [c, d] : z) {
        auto ic = mask.find(c), id = mask.find(d);
        if (ic == mask.end() || id == mask.end()) continue;
        for (auto v : members[c]) rows[v] ^= id->second;
        if (c != d)
            for (auto v : members[d]) rows[v] ^= ic->second;
    }
    for (std::size_t v = 0; v < g.size(); ++v) rows[v].reset(v);
    // A singleton pair {c} toggles each inner pair from both ends, which is one toggle per row;
    // rows stay symmetric because both endpoints see the same mask.
    return from_rows(g.k(), g.ids(), g.colors(), rows);
}

Derivation restrict_derivation(const Derivation& s, const std::vector<VertexId>& keep) {
    auto sub = induced_subgraph(s.graph, keep);
    std::vector<Profile> profiles;
    profiles.reserve(sub.size());
    for (auto id : sub.ids()) profiles.push_back(s.profiles[*s.graph.index_of(id)]);
    return {std::move(sub), std::move(profiles), s.phi};
}

Derivation shift_ids(const Derivation& s, VertexId offset) {
    std::vector<VertexId> ids;
    std::vector<std::vector<std::uint32_t>> adj;
    for (std::size_t v = 0; v < s.graph.size(); ++v) {
        ids.push_back(s.graph.id_at(v) + offset);
        adj.push_back(s.graph.neighbors(v));
    }
    return {from_adjacency(s.k(), std::move(ids), s.graph.colors(), std::move(adj)), s.profiles, s.phi};
}

BlockProduct block_product(const std::vector<Derivation>& factors) {
    BlockProduct bp;
    bp.factors = factors;
    bp.composed = product(factors);
    const auto& g = bp.composed.graph;
    bp.block_of.assign(g.size(), 0);
    for (std::size_t s = 0; s < factors.size(); ++s) {
        const auto& f = factors[s];
        for (std::size_t v = 0; v < f.graph.size(); ++v) {
            auto idx = *g.index_of(f.graph.id_at(v));
            bp.block_of[idx] = static_cast<int>(s) + 1;
            int c = cell_index(f.cell_at_index(v), f.k());
            auto [it, fresh] = bp.members.try_emplace(c, Bits(g.size()));
            it->second.set(idx);
        }
    }
    bp.modulus.resize(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) bp.modulus[v] = bp.block_of[v] % 7;
    return bp;
}

std::string derivation_to_text(const Derivation& s) {
    std::string out = graph_to_text(s.graph);
    for (std::size_t v = 0; v < s.graph.size(); ++v)
        out += "p " + std::to_string(s.graph.id_at(v)) + " " + profile_to_text(s.profiles[v]) + "\n";
    out += "phi";
    for (int c : s.phi) out += " " + std::to_string(c);
    return out + "\n";
}

Derivation parse_derivation(std::string_view text) {
    auto lines = text::tokenize_lines(text);
    std::size_t pos = 0;
    auto g = parse_graph_lines(lines, pos);
    const int k = g.k();
    std::vector<std::optional<Profile>> profiles(g.size());
    std::optional<ColorMap> phi;
    for (; pos < lines.size(); ++pos) {
        const auto& l = lines[pos];
        if (l.tokens[0] == "p") {
            if (l.tokens.size() != 3) text::fail_at(l.number, "expected 'p <id> <profile>'");
            auto id = text::parse_int<VertexId>(l.tokens[1], l.number, "vertex id");
            auto idx = g.index_of(id);
            if (!idx) text::fail_at(l.number, "profile for unknown vertex " + std::to_string(id));
            if (profiles[*idx]) text::fail_at(l.number, "second profile for vertex " + std::to_string(id));
            Profile x = 0;
            for (int c : text::parse_int_list(l.tokens[2], l.number, "profile color")) {
                if (c < 1 || c > k) text::fail_at(l.number, "profile color outside [1," + std::to_string(k) + "]");
                x |= Profile{1} << (c - 1);
            }
            profiles[*idx] = x;
        } else if (l.tokens[0] == "phi") {
            if (phi) text::fail_at(l.number, "second phi line");
            if (static_cast<int>(l.tokens.size()) != k + 1) text::fail_at(l.number, "phi must list k images");
            ColorMap m;
            for (std::size_t i = 1; i < l.tokens.size(); ++i) {
                int c = text::parse_int<int>(l.tokens[i], l.number, "phi image");
                if (c < 1 || c > k) text::fail_at(l.number, "phi image outside [1," + std::to_string(k) + "]");
                m.push_back(c);
            }
            phi = std::move(m);
        } else {
            text::fail_at(l.number, "unexpected line '" + std::string(l.tokens[0]) + "'");
        }
    }
    if (!phi) text::fail_at(lines.empty() ? 0 : lines.back().number, "missing phi line");
    Derivation d{std::move(g), {}, std::move(*phi)};
    for (std::size_t v = 0; v < profiles.size(); ++v) {
        if (!profiles[v]) throw InputError("missing profile for vertex " + std::to_string(d.graph.id_at(v)));
        d.profiles.push_back(*profiles[v]);
    }
    return d;
}

}  // namespace cwf
