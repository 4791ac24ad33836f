#include "gen.hpp"

#include <functional>
#include <numeric>

#include "error.hpp"

namespace cwf {

ColorMap random_map(int k, Rng& rng) {
    ColorMap m(static_cast<std::size_t>(k));
    for (auto& c : m) c = rng.range(1, k);
    return m;
}

Derivation random_derivation(Rng& rng, int k, int max_vertices, VertexId first_id, double edge_p) {
    int n = rng.range(0, max_vertices);
    GraphBuilder b(k);
    for (int v = 0; v < n; ++v) b.add_vertex(first_id + v, rng.range(1, k));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.chance(edge_p)) b.add_edge(first_id + u, first_id + v);
    Derivation d{b.build(), {}, random_map(k, rng)};
    for (int v = 0; v < n; ++v) d.profiles.push_back(static_cast<Profile>(rng.below(1u << k)));
    return d;
}

LinearWord gen_word(const GenSpec& spec) {
    if (spec.k < 1 || spec.k > kMaxWordColors) throw InputError("gen: k out of range");
    if (spec.length < 1) throw InputError("gen: length must be at least 1");
    if (spec.add_weight < 0 || spec.recolor_weight < 0 || spec.add_weight + spec.recolor_weight <= 0)
        throw InputError("gen: weights must be nonnegative and not all zero");
    if (spec.profile_density < 0 || spec.profile_density > 1) throw InputError("gen: profile density must lie in [0,1]");
    Rng rng(spec.seed);
    const double p_recolor = spec.recolor_weight / (spec.add_weight + spec.recolor_weight);
    LinearWord w;
    w.k = spec.k;
    VertexId next_id = 0;
    for (std::size_t i = 0; i < spec.length; ++i) {
        bool recolor = spec.length > 1 && rng.chance(p_recolor);
        if (recolor) {
            w.items.push_back(Instruction::recolor(random_map(spec.k, rng)));
        } else {
            Profile x = 0;
            for (int c = 1; c <= spec.k; ++c)
                if (rng.chance(spec.profile_density)) x |= Profile{1} << (c - 1);
            w.items.push_back(Instruction::add(rng.range(1, spec.k), x, next_id++));
        }
    }
    return w;
}

CliqueTerm random_term(int k, std::size_t leaves, Rng& rng) {
    std::vector<VertexId> ids(leaves);
    std::iota(ids.begin(), ids.end(), VertexId{0});
    rng.shuffle(ids);
    std::size_t next = 0;
    std::function<NodePtr(std::size_t)> build = [&](std::size_t n) -> NodePtr {
        NodePtr node;
        if (n == 1) {
            node = make_const(rng.range(1, k), ids[next++]);
        } else {
            std::size_t parts = std::min<std::size_t>(n, static_cast<std::size_t>(rng.range(2, 4)));
            std::vector<std::size_t> sizes(parts, 1);
            for (std::size_t r = n - parts; r > 0; --r) ++sizes[rng.below(parts)];
            std::vector<NodePtr> kids;
            for (auto s : sizes) kids.push_back(build(s));
            std::vector<ColorPair> pairs;
            for (int a = 1; a <= k; ++a)
                for (int b = a; b <= k; ++b)
                    if (rng.chance(0.3)) pairs.emplace_back(a, b);
            node = make_join(std::move(pairs), std::move(kids));
        }
        if (rng.chance(0.3)) {
            auto m = random_map(k, rng);
            std::vector<ColorPair> moves;
            for (int c = 1; c <= k; ++c) moves.emplace_back(c, m[c - 1]);
            node = make_recolor(std::move(moves), node);
        }
        return node;
    };
    if (leaves == 0) return {k, make_empty()};
    return {k, build(leaves)};
}

}  // namespace cwf
