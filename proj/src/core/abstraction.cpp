#include "abstraction.hpp"

#include <algorithm>
#include <functional>

#include "error.hpp"

namespace cwf {

std::vector<CellPairs> all_z(int k) {
    const int cells = cell_count(k);
    CellPairs space;
    for (int c = 0; c < cells; ++c)
        for (int d = c; d < cells; ++d) space.emplace_back(c, d);
    if (space.size() > 16) throw InputError("the full Z-family is only enumerated for tiny k");
    std::vector<CellPairs> out;
    for (std::uint32_t m = 0; m < (1u << space.size()); ++m) {
        CellPairs z;
        for (std::size_t i = 0; i < space.size(); ++i)
            if (m >> i & 1u) z.push_back(space[i]);
        out.push_back(std::move(z));
    }
    return out;
}

Abstraction abstract(const Derivation& s, const std::vector<CellPairs>& zfamily) {
    const int k = s.k();
    if (k > kMaxRegistryColors) throw InputError("connectivity registries need k <= " + std::to_string(kMaxRegistryColors));
    if (zfamily.empty()) throw InputError("abstraction needs a nonempty Z-family");
    Abstraction a;
    a.k = k;
    a.phi = s.phi;
    a.zfamily = zfamily;
    a.essential = essential_cells(s);
    const auto& L = a.essential;
    if (L.size() > static_cast<std::size_t>(kMaxRegistryCells))
        throw InputError("connectivity registry limited to " + std::to_string(kMaxRegistryCells) + " essential cells");

    const std::size_t n = s.graph.size();
    auto members = cell_members(s);
    std::vector<Bits> cell_mask;
    for (int c : L) {
        Bits m(n);
        for (auto v : members[c]) m.set(v);
        cell_mask.push_back(std::move(m));
    }
    std::vector<std::size_t> cell_pos(n);  // vertex -> position of its cell in L
    for (std::size_t i = 0; i < L.size(); ++i)
        for (auto v : members[L[i]]) cell_pos[v] = i;

    for (std::size_t zi = 0; zi < zfamily.size(); ++zi) {
        auto rows = zflip(s, zfamily[zi]).rows();
        // Direct edges between cells (paths without inner vertices).
        std::vector<std::vector<bool>> direct(L.size(), std::vector<bool>(L.size(), false));
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t j = 0; j < L.size(); ++j)
                if (rows[v].intersects(cell_mask[j])) direct[cell_pos[v]][j] = true;

        for (std::uint32_t wm = 0; wm < (1u << L.size()); ++wm) {
            Bits inside(n);
            CellMask through = 0;
            for (std::size_t j = 0; j < L.size(); ++j)
                if (wm >> j & 1u) {
                    inside |= cell_mask[j];
                    through |= CellMask{1} << L[j];
                }
            // Components of the flipped graph restricted to the cells of W.
            std::vector<int> comp(n, -1);
            int comps = 0;
            for (auto v = inside.find_first(); v != Bits::npos; v = inside.find_next(v)) {
                if (comp[v] >= 0) continue;
                std::vector<std::size_t> stack{v};
                comp[v] = comps;
                while (!stack.empty()) {
                    auto x = stack.back();
                    stack.pop_back();
                    Bits nb = rows[x] & inside;
                    for (auto y = nb.find_first(); y != Bits::npos; y = nb.find_next(y))
                        if (comp[y] < 0) {
                            comp[y] = comps;
                            stack.push_back(y);
                        }
                }
                ++comps;
            }
            // Components each cell can enter: its own (if inside W) or a neighbouring one.
            std::vector<Bits> enters(L.size(), Bits(static_cast<std::size_t>(comps)));
            for (std::size_t v = 0; v < n; ++v) {
                auto& e = enters[cell_pos[v]];
                if (comp[v] >= 0) {
                    e.set(static_cast<std::size_t>(comp[v]));
                } else {
                    Bits nb = rows[v] & inside;
                    for (auto y = nb.find_first(); y != Bits::npos; y = nb.find_next(y)) e.set(static_cast<std::size_t>(comp[y]));
                }
            }
            for (std::size_t i = 0; i < L.size(); ++i)
                for (std::size_t j = 0; j < L.size(); ++j)
                    if (i == j || direct[i][j] || enters[i].intersects(enters[j]))
                        a.registry.insert({static_cast<int>(zi), L[i], L[j], through});
        }
    }
    return a;
}

namespace {

std::string mask_to_text(CellMask m, int k) {
    std::string out = "{";
    bool first = true;
    for (int c = 0; c < 64; ++c)
        if (m >> c & 1u) {
            if (!first) out += ' ';
            out += cell_to_text(cell_at(c, k));
            first = false;
        }
    return out + "}";
}

std::string map_to_text(const ColorMap& phi) {
    std::string out;
    for (std::size_t i = 0; i < phi.size(); ++i) out += (i ? " " : "") + std::to_string(phi[i]);
    return out;
}

}  // namespace

std::string abstraction_to_text(const Abstraction& a) {
    std::string out = "L:";
    for (int c : a.essential) out += " " + cell_to_text(cell_at(c, a.k));
    out += "\nphi: " + map_to_text(a.phi) + "\nrho:\n";
    for (const auto& e : a.registry)
        out += "(" + cell_pairs_to_text(a.zfamily[e.z], a.k) + "|" + cell_to_text(cell_at(e.from, a.k)) + "|" +
               cell_to_text(cell_at(e.to, a.k)) + "|" + mask_to_text(e.through, a.k) + ")\n";
    return out;
}

ReducedAbstraction reduced(const Derivation& s) { return {essential_cells(s), s.phi}; }

ReducedAbstraction reduced(const Abstraction& a) { return {a.essential, a.phi}; }

ReducedAbstraction reduced_compose(const ReducedAbstraction& a, const ReducedAbstraction& b) {
    const int k = static_cast<int>(a.phi.size());
    if (static_cast<int>(b.phi.size()) != k) throw InputError("composing abstractions with different k");
    std::vector<int> cells;
    cells.reserve(a.essential.size() + b.essential.size());
    for (int c : a.essential) {
        Cell x = cell_at(c, k);
        x.color = b.phi[x.color - 1];
        cells.push_back(cell_index(x, k));
    }
    for (int c : b.essential) {
        Cell y = cell_at(c, k);
        y.profile = preimage(a.phi, y.profile);
        cells.push_back(cell_index(y, k));
    }
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    return {std::move(cells), compose_maps(b.phi, a.phi)};
}

bool is_idempotent(const ReducedAbstraction& e) { return reduced_compose(e, e) == e; }

bool phi_is_idempotent(const ColorMap& phi) {
    for (int c : phi)
        if (phi[c - 1] != c) return false;
    return true;
}

std::string reduced_to_text(const ReducedAbstraction& e) {
    const int k = static_cast<int>(e.phi.size());
    std::string out = "L:";
    for (int c : e.essential) out += " " + cell_to_text(cell_at(c, k));
    return out + " phi: " + map_to_text(e.phi);
}

std::size_t hash_value(const ReducedAbstraction& e) {
    std::size_t h = 0xcbf29ce484222325ULL;
    auto mix = [&](std::size_t x) { h = (h ^ x) * 0x100000001b3ULL; };
    for (int c : e.essential) mix(static_cast<std::size_t>(c) + 1);
    mix(0xffff);
    for (int c : e.phi) mix(static_cast<std::size_t>(c));
    return h;
}

CoarseAbstraction coarse(const Derivation& s) {
    CoarseAbstraction e{0, s.phi};
    for (std::size_t v = 0; v < s.graph.size(); ++v) e.colors |= profile_of({s.graph.color_at(v)});
    return e;
}

CoarseAbstraction coarse_compose(const CoarseAbstraction& a, const CoarseAbstraction& b) {
    CoarseAbstraction out{b.colors, compose_maps(b.phi, a.phi)};
    for (int c : profile_colors(a.colors)) out.colors |= profile_of({b.phi[static_cast<std::size_t>(c - 1)]});
    return out;
}

std::string coarse_to_text(const CoarseAbstraction& e) {
    return "colors: " + profile_to_text(e.colors) + " phi: " + map_to_text(e.phi);
}

const char* pair_type_name(PairType t) {
    switch (t) {
        case PairType::Negative:
            return "negative";
        case PairType::Positive:
            return "positive";
        case PairType::Mixed:
            return "mixed";
    }
    return "?";
}

PairType pair_type(const Cell& c, const Cell& d, const ColorMap& phi) {
    bool forward = profile_has(c.profile, phi[d.color - 1]);   // phi(j) in X
    bool backward = profile_has(d.profile, phi[c.color - 1]);  // phi(i) in Y
    if (forward && backward) return PairType::Positive;
    if (!forward && !backward) return PairType::Negative;
    return PairType::Mixed;
}

CellPairs positive_pairs(const std::vector<int>& essential, const ColorMap& phi, int k) {
    CellPairs z;
    for (std::size_t a = 0; a < essential.size(); ++a)
        for (std::size_t b = a; b < essential.size(); ++b)
            if (pair_type(cell_at(essential[a], k), cell_at(essential[b], k), phi) == PairType::Positive)
                z.emplace_back(essential[a], essential[b]);
    return z;
}

}  // namespace cwf
