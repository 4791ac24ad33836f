#include "decomposer.hpp"

#include <algorithm>
#include <cmath>

#include "abstraction.hpp"
#include "error.hpp"
#include "forest.hpp"

namespace cwf {

namespace {

void require_evaluates_to(const CliqueTerm& t, const Derivation& s, const char* which) {
    if (!eval_term(t).same_structure(s.graph))
        throw InputError(std::string("the ") + which + " term does not evaluate to its derivation's graph");
}

int cell_color(const Derivation& s, std::size_t v) { return 1 + s.k() + cell_index(s.cell_at_index(v), s.k()); }

// Spine step: joins `acc` (colors = current colors 1..k) with `block` (colors = 1 + k + cell
// index of the block's own cells), then moves acc through phi and the block cells to their colors.
NodePtr spine_step(const NodePtr& acc, const NodePtr& block, const ColorMap& phi, int k) {
    std::vector<ColorPair> moves;
    for (int i = 1; i <= k; ++i) moves.emplace_back(i, phi[static_cast<std::size_t>(i - 1)]);
    if (block->kind == NodeKind::Empty) return make_recolor(std::move(moves), acc);
    auto block_colors = live_colors(block);
    for (int c : block_colors) moves.emplace_back(c, cell_at(c - 1 - k, k).color);
    if (acc->kind == NodeKind::Empty) return make_recolor(std::move(moves), block);
    std::vector<ColorPair> pairs;
    for (int i : live_colors(acc))
        for (int c : block_colors)
            if (profile_has(cell_at(c - 1 - k, k).profile, i)) pairs.emplace_back(i, c);
    return make_recolor(std::move(moves), make_join(std::move(pairs), {acc, block}));
}

}  // namespace

double width_bound(int k, std::size_t forest_depth) {
    double c = static_cast<double>(k) * std::ldexp(1.0, k);
    return std::pow((k + c) * c, static_cast<double>(forest_depth ? forest_depth - 1 : 0));
}

CliqueTerm assemble_binary(const Derivation& s, const Derivation& t, const CliqueTerm& ts, const CliqueTerm& tt,
                           bool check_inputs) {
    if (s.k() != t.k()) throw InputError("assembling derivations with different k");
    if (check_inputs) {
        require_evaluates_to(ts, s, "left");
        require_evaluates_to(tt, t, "right");
    }
    const int k = s.k();
    std::map<VertexId, int> left, right;
    for (std::size_t v = 0; v < s.graph.size(); ++v) left[s.graph.id_at(v)] = s.graph.color_at(v);
    for (std::size_t v = 0; v < t.graph.size(); ++v) right[t.graph.id_at(v)] = cell_color(t, v);
    auto a = s.graph.empty() ? make_empty() : enforce_colors(ts, left).root;
    auto b = t.graph.empty() ? make_empty() : enforce_colors(tt, right).root;
    auto root = spine_step(a, b, t.phi, k);
    return {std::max(k + cell_count(k), max_color(root)), root};
}

CliqueTerm assemble_idempotent(const std::vector<Derivation>& factors, const std::vector<CliqueTerm>& terms,
                               bool check_inputs) {
    if (factors.empty() || factors.size() != terms.size())
        throw InputError("idempotent assembly needs one term per factor");
    const int k = factors.front().k();
    for (std::size_t s = 0; s < factors.size(); ++s) {
        if (factors[s].k() != k) throw InputError("idempotent assembly over different k");
        if (check_inputs) require_evaluates_to(terms[s], factors[s], "factor");
    }
    if (factors.size() == 1) return terms.front();

    auto bp = block_product(factors);
    const auto& g = bp.composed.graph;
    const std::size_t n = g.size();
    std::vector<int> cell_of(n, -1);
    for (const auto& [c, bits] : bp.members)
        for (auto v = bits.find_first(); v != Bits::npos; v = bits.find_next(v)) cell_of[v] = c;

    std::vector<int> present;
    for (const auto& [c, bits] : bp.members) present.push_back(c);
    auto z = positive_pairs(present, factors.front().phi, k);

    // H: the flip of G between the cells of every pair in z, as dense rows.
    std::map<int, Bits> partners;  // cell -> union of the cells it is flipped against
    for (auto [c, d] : z) {
        partners.try_emplace(c, n);
        partners.try_emplace(d, n);
        partners.at(c) |= bp.members.at(d);
        partners.at(d) |= bp.members.at(c);
    }
    auto rows = g.rows();
    std::vector<Bits> h = rows;
    for (std::size_t v = 0; v < n; ++v)
        if (auto it = partners.find(cell_of[v]); it != partners.end()) {
            h[v] ^= it->second;
            h[v].reset(v);
        }

    std::vector<int> comp(n, -1);
    std::vector<Bits> comp_mask;
    for (std::size_t r = 0; r < n; ++r) {
        if (comp[r] >= 0) continue;
        const int id = static_cast<int>(comp_mask.size());
        comp_mask.emplace_back(n);
        std::vector<std::size_t> stack{r};
        comp[r] = id;
        while (!stack.empty()) {
            auto x = stack.back();
            stack.pop_back();
            comp_mask[static_cast<std::size_t>(id)].set(x);
            for (auto y = h[x].find_first(); y != Bits::npos; y = h[x].find_next(y))
                if (comp[y] < 0) {
                    comp[y] = id;
                    stack.push_back(y);
                }
        }
    }

    // Across components, G-adjacency is exactly membership of the cell pair in z.
    for (std::size_t v = 0; v < n; ++v) {
        Bits outside = ~comp_mask[static_cast<std::size_t>(comp[v])];
        auto it = partners.find(cell_of[v]);
        Bits expected = it == partners.end() ? Bits(n) : it->second & outside;
        if ((rows[v] & outside) != expected) throw InternalError("cross-component edges disagree with the positive pairs");
    }

    // Per component: restrict every block, enforce its cells, chain the blocks, enforce cells again.
    std::vector<std::vector<std::vector<VertexId>>> pieces(comp_mask.size(), std::vector<std::vector<VertexId>>(factors.size()));
    for (std::size_t v = 0; v < n; ++v)
        pieces[static_cast<std::size_t>(comp[v])][static_cast<std::size_t>(bp.block_of[v] - 1)].push_back(g.id_at(v));
    std::map<VertexId, int> own_cell;
    for (std::size_t v = 0; v < n; ++v) own_cell[g.id_at(v)] = 1 + k + cell_of[v];

    std::vector<NodePtr> components;
    for (const auto& blocks : pieces) {
        NodePtr acc = make_empty();
        std::map<VertexId, int> final_cells;
        for (std::size_t s = 0; s < factors.size(); ++s) {
            NodePtr block = make_empty();
            if (!blocks[s].empty()) {
                std::set<VertexId> keep(blocks[s].begin(), blocks[s].end());
                std::map<VertexId, int> parts;
                for (auto id : blocks[s]) {
                    parts[id] = own_cell.at(id);
                    final_cells[id] = own_cell.at(id) - k;
                }
                block = enforce_colors(restrict_term(terms[s], keep), parts).root;
            }
            acc = spine_step(acc, block, factors[s].phi, k);
        }
        CliqueTerm spine{std::max(k + cell_count(k), max_color(acc)), acc};
        components.push_back(normalize(enforce_colors(spine, final_cells), false).root);
    }

    std::vector<ColorPair> pairs;
    for (auto [c, d] : z) pairs.emplace_back(1 + c, 1 + d);
    std::vector<ColorPair> moves;
    for (int c : present) moves.emplace_back(1 + c, cell_at(c, k).color);
    if (components.empty()) return {k, make_empty()};
    NodePtr root = components.size() == 1 ? components.front() : make_join(std::move(pairs), std::move(components));
    root = make_recolor(std::move(moves), root);
    return {std::max(k + cell_count(k), max_color(root)), root};
}

namespace {

struct Assembled {
    Derivation derivation;
    CliqueTerm term;
    std::size_t height = 1;
};

class Pipeline {
public:
    Pipeline(const LinearWord& w, const Forest& f, const DecomposeOptions& options, DecomposeResult& result)
        : w_(w), f_(f), options_(options), result_(result) {}

    Assembled run() { return visit(f_.root); }

private:
    const LinearWord& w_;
    const Forest& f_;
    const DecomposeOptions& options_;
    DecomposeResult& result_;

    void record(std::size_t height, const CliqueTerm& t) {
        if (result_.per_level_widths.size() < height) result_.per_level_widths.resize(height, 0);
        auto& slot = result_.per_level_widths[height - 1];
        slot = std::max(slot, term_width(t.root));
    }

    void audit(const std::vector<Derivation>& children) {
        if (!options_.audit_idempotent_nodes) return;
        const int k = w_.k;
        auto phi = children.front().phi;
        auto z = positive_pairs(essential_cells(children.front()), phi, k);
        auto first = abstract(children.front(), {z}).registry;
        for (std::size_t i = 1; i < children.size(); ++i)
            if (abstract(children[i], {z}).registry != first) {
                ++result_.unequal_registry_nodes;
                return;
            }
    }

    // Returns the subtree's derivation and term; records widths by node height.
    Assembled visit(std::size_t id) {
        const auto& node = f_.nodes[id];
        Assembled out;
        switch (node.kind) {
            case ForestKind::Leaf: {
                const auto& ins = w_.items[node.position];
                out.derivation = atomic_of(ins, w_.k);
                out.term = {w_.k, ins.kind == Instruction::Kind::AddVertex ? make_const(ins.color, ins.id) : make_empty()};
                break;
            }
            case ForestKind::Binary: {
                auto a = visit(node.children[0]);
                auto b = visit(node.children[1]);
                out.height = 1 + std::max(a.height, b.height);
                out.term = normalize(assemble_binary(a.derivation, b.derivation, a.term, b.term, false), false);
                out.derivation = compose(a.derivation, b.derivation);
                break;
            }
            case ForestKind::Idempotent: {
                std::vector<Derivation> ds;
                std::vector<CliqueTerm> ts;
                for (auto c : node.children) {
                    auto sub = visit(c);
                    out.height = std::max(out.height, 1 + sub.height);
                    ds.push_back(std::move(sub.derivation));
                    ts.push_back(std::move(sub.term));
                }
                ++result_.idempotent_nodes;
                audit(ds);
                out.term = normalize(assemble_idempotent(ds, ts, false), false);
                out.derivation = product(ds);
                break;
            }
        }
        record(out.height, out.term);
        return out;
    }
};

template <typename E>
Forest forest_over(const LinearWord& w, E (*image)(const Derivation&), E (*mul)(const E&, const E&),
                   std::string (*show)(const E&), std::size_t cap) {
    InternedSemigroup<E> sg(mul, show);
    std::vector<int> letters;
    letters.reserve(w.items.size());
    for (const auto& ins : w.items) letters.push_back(sg.intern(image(atomic_of(ins, w.k))));
    return build_forest(letters, sg, cap);
}

template <typename E>
WordForest describe_forest(const LinearWord& w, E (*image)(const Derivation&), E (*mul)(const E&, const E&),
                           std::string (*show)(const E&), std::size_t cap) {
    InternedSemigroup<E> sg(mul, show);
    std::vector<int> letters;
    for (const auto& ins : w.items) letters.push_back(sg.intern(image(atomic_of(ins, w.k))));
    auto f = build_forest(letters, sg, cap);
    WordForest out;
    out.depth = f.depth();
    out.depth_bound = f.depth_bound;
    out.semigroup_size = f.generated_size;
    out.text = forest_to_text(f, sg);
    auto check = verify_forest(f, letters, sg);
    out.verified = check.ok;
    out.message = check.message;
    return out;
}

FactorizationImage resolve(FactorizationImage image, int k) {
    if (image != FactorizationImage::Automatic) return image;
    return k <= 2 ? FactorizationImage::Reduced : FactorizationImage::Coarse;
}

}  // namespace

WordForest word_forest(const LinearWord& w, FactorizationImage image, std::size_t closure_cap) {
    validate_word(w);
    if (w.items.empty()) throw InputError("cannot factorise an empty word");
    image = resolve(image, w.k);
    auto out = image == FactorizationImage::Reduced
                   ? describe_forest<ReducedAbstraction>(w, reduced, reduced_compose, reduced_to_text, closure_cap)
                   : describe_forest<CoarseAbstraction>(w, coarse, coarse_compose, coarse_to_text, closure_cap);
    out.image = image;
    return out;
}

DecomposeResult decompose(const LinearWord& w, const DecomposeOptions& options) {
    validate_word(w);
    if (w.items.empty()) throw InputError("cannot decompose an empty word");
    DecomposeResult result;
    result.image = resolve(options.image, w.k);
    auto forest = result.image == FactorizationImage::Reduced
                      ? forest_over<ReducedAbstraction>(w, reduced, reduced_compose, reduced_to_text, options.closure_cap)
                      : forest_over<CoarseAbstraction>(w, coarse, coarse_compose, coarse_to_text, options.closure_cap);
    result.forest_depth = forest.depth();
    result.semigroup_size = forest.generated_size;
    result.width_bound = width_bound(w.k, result.forest_depth);
    if (options.audit_idempotent_nodes) result.unequal_registry_nodes = 0;
    auto top = Pipeline(w, forest, options, result).run();
    result.term = normalize(top.term, true);
    result.width = term_width(result.term.root);
    return result;
}

DecompositionCheck verify_against_graph(const ColoredGraph& expected, const CliqueTerm& t) {
    DecompositionCheck out;
    auto fail = [&](std::string why) {
        out.ok = false;
        out.message = std::move(why);
        return out;
    };
    ColoredGraph got;
    try {
        got = eval_term(t);
    } catch (const InputError& e) {
        return fail(std::string("term does not evaluate: ") + e.what());
    }
    if (got.ids() != expected.ids()) {
        std::vector<VertexId> missing, extra;
        std::set_difference(expected.ids().begin(), expected.ids().end(), got.ids().begin(), got.ids().end(),
                            std::back_inserter(missing));
        std::set_difference(got.ids().begin(), got.ids().end(), expected.ids().begin(), expected.ids().end(),
                            std::back_inserter(extra));
        if (!missing.empty()) return fail("vertex " + std::to_string(missing.front()) + " is not a leaf of the term");
        return fail("leaf " + std::to_string(extra.front()) + " is not a vertex of the graph");
    }
    auto want = expected.edges(), have = got.edges();
    if (want != have) {
        std::vector<std::pair<VertexId, VertexId>> missing, extra;
        std::set_difference(want.begin(), want.end(), have.begin(), have.end(), std::back_inserter(missing));
        std::set_difference(have.begin(), have.end(), want.begin(), want.end(), std::back_inserter(extra));
        if (!missing.empty())
            return fail("edge " + std::to_string(missing.front().first) + "-" + std::to_string(missing.front().second) +
                        " is missing from the term");
        return fail("term has the extra edge " + std::to_string(extra.front().first) + "-" +
                    std::to_string(extra.front().second));
    }
    return out;
}

DecompositionCheck verify_decomposition(const LinearWord& w, const CliqueTerm& t) {
    return verify_against_graph(eval_word(w), t);
}

}  // namespace cwf
