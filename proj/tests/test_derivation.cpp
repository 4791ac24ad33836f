#include "derivation.hpp"
#include "doctest.h"
#include "error.hpp"
#include "fixtures.hpp"
#include "random_objects.hpp"

using namespace cwf;
using cwf::testing::random_derivation;
using cwf::testing::random_word;

namespace {

LinearWord slice(const LinearWord& w, std::size_t from, std::size_t to) {
    LinearWord out{w.k, {}};
    out.items.assign(w.items.begin() + static_cast<long>(from), w.items.begin() + static_cast<long>(to));
    return out;
}

}  // namespace

TEST_CASE("composition with the empty identity-recoloring derivation") {
    Rng rng(1);
    for (int round = 0; round < 100; ++round) {
        int k = rng.range(1, 3);
        auto s = random_derivation(rng, k, 4, 0);
        auto eps = atomic_recolor(k, identity_map(k));
        CHECK(compose(s, eps) == s);
        CHECK(compose(eps, s) == s);
    }
}

TEST_CASE("composition rule on atomics") {
    auto u = atomic_vertex(2, 1, 0, 1, identity_map(2));
    auto v = atomic_vertex(2, 2, profile_of({1}), 2, identity_map(2));
    auto uv = compose(u, v);
    CHECK(uv.graph.adjacent(1, 2));
    CHECK(uv.profiles == std::vector<Profile>{0, profile_of({1})});

    auto collapse = atomic_recolor(2, {1, 1});
    auto w = compose(collapse, v);
    CHECK(w.profiles[0] == profile_of({1, 2}));
    CHECK(w.phi == ColorMap{1, 1});

    auto single = atomic_vertex(3, 1, profile_of({2}), 7, identity_map(3));
    CHECK(single.graph.size() == 1);
    CHECK(single.cell_at_index(0) == Cell{1, profile_of({2})});
    CHECK(atomic_recolor(2, {2, 2}).graph.empty());
    CHECK_THROWS_AS(compose(u, u), InputError);
}

TEST_CASE("associativity on random triples") {
    Rng rng(2);
    for (int round = 0; round < 1000; ++round) {
        int k = rng.range(1, 3);
        auto a = random_derivation(rng, k, 4, 0);
        auto b = random_derivation(rng, k, 4, 10);
        auto c = random_derivation(rng, k, 4, 20);
        CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
    }
}

TEST_CASE("words: atomics translate instructions and products split anywhere") {
    auto ex = fixtures::example_word();
    auto d = from_word(ex);
    CHECK(d.graph == eval_word(ex));
    CHECK(isomorphic(d.graph, fixtures::three_cliques_graph(), false));
    CHECK_THROWS_AS(from_word(LinearWord{2, {}}), InputError);

    auto single = from_word(LinearWord{1, {Instruction::add(1, 0, 3)}});
    CHECK(single == atomic_vertex(1, 1, 0, 3, {1}));

    Rng rng(3);
    for (int round = 0; round < 500; ++round) {
        int k = rng.range(1, 3);
        auto w = random_word(rng, k, 2 + rng.below(30), 0);
        CHECK(from_word(w).graph == eval_word(w));
        std::size_t cut = 1 + rng.below(w.items.size() - 1);
        CHECK(from_word(w) == compose(from_word(slice(w, 0, cut)), from_word(slice(w, cut, w.items.size()))));
    }
}

TEST_CASE("cells partition the vertices") {
    Rng rng(4);
    for (int round = 0; round < 200; ++round) {
        auto s = random_derivation(rng, rng.range(1, 3), 8, 0);
        std::size_t total = 0;
        std::vector<bool> seen(s.graph.size(), false);
        for (const auto& [c, vs] : cell_members(s))
            for (auto v : vs) {
                CHECK_FALSE(seen[v]);
                seen[v] = true;
                CHECK(cell_index(s.cell_at_index(v), s.k()) == c);
                ++total;
            }
        CHECK(total == s.graph.size());
    }
    for (int k = 1; k <= 4; ++k)
        for (int c = 0; c < cell_count(k); ++c) CHECK(cell_index(cell_at(c, k), k) == c);
}

TEST_CASE("flips between cells") {
    auto one = atomic_vertex(1, 1, 1, 0, {1});
    int c = cell_index({1, 1}, 1);
    CHECK(zflip(one, {}) == one.graph);
    CHECK(zflip(one, {{c, c}}) == one.graph);

    // Two adjacent vertices in the same cell lose their edge.
    Derivation two{GraphBuilder(1).add_vertex(0, 1).add_vertex(1, 1).add_edge(0, 1).build(), {1, 1}, {1}};
    CHECK(zflip(two, {{c, c}}).edge_count() == 0);

    Rng rng(5);
    for (int round = 0; round < 200; ++round) {
        int k = rng.range(1, 2);
        auto s = random_derivation(rng, k, 7, 0);
        CellPairs z;
        for (int a = 0; a < cell_count(k); ++a)
            for (int b = a; b < cell_count(k); ++b)
                if (rng.chance(0.3)) z.emplace_back(a, b);
        Derivation flipped{zflip(s, z), s.profiles, s.phi};
        CHECK(zflip(flipped, z) == s.graph);
    }
}

TEST_CASE("restriction commutes with composition") {
    Rng rng(6);
    for (int round = 0; round < 500; ++round) {
        int k = rng.range(1, 3);
        auto a = random_derivation(rng, k, 5, 0);
        auto b = random_derivation(rng, k, 5, 10);
        std::vector<VertexId> keep, keep_a, keep_b;
        for (auto id : a.graph.ids())
            if (rng.chance(0.5)) keep.push_back(id), keep_a.push_back(id);
        for (auto id : b.graph.ids())
            if (rng.chance(0.5)) keep.push_back(id), keep_b.push_back(id);
        CHECK(restrict_derivation(compose(a, b), keep) ==
              compose(restrict_derivation(a, keep_a), restrict_derivation(b, keep_b)));
    }
    auto a = random_derivation(rng, 2, 5, 0);
    CHECK(restrict_derivation(a, a.graph.ids()) == a);
    auto none = restrict_derivation(a, {});
    CHECK(none.graph.empty());
    CHECK(none.phi == a.phi);
}

TEST_CASE("block products") {
    Rng rng(7);
    auto f = random_derivation(rng, 2, 4, 0);
    auto single = block_product({f});
    for (int b : single.block_of) CHECK(b == 1);

    for (int round = 0; round < 100; ++round) {
        int n = rng.range(1, 9);
        std::vector<Derivation> factors;
        for (int s = 0; s < n; ++s) factors.push_back(random_derivation(rng, 2, 3, 100 * s));
        auto bp = block_product(factors);
        CHECK(bp.composed == product(factors));
        for (std::size_t v = 0; v < bp.composed.graph.size(); ++v) {
            auto id = bp.composed.graph.id_at(v);
            CHECK(bp.block_of[v] == id / 100 + 1);
            CHECK(bp.modulus[v] == bp.block_of[v] % 7);
        }
        // Cell sets recomputed factor by factor.
        std::map<int, std::set<VertexId>> expect;
        for (const auto& fac : factors)
            for (const auto& [c, vs] : cell_members(fac))
                for (auto v : vs) expect[c].insert(fac.graph.id_at(v));
        std::map<int, std::set<VertexId>> got;
        for (const auto& [c, bits] : bp.members)
            for (auto v = bits.find_first(); v != Bits::npos; v = bits.find_next(v)) got[c].insert(bp.composed.graph.id_at(v));
        CHECK(got == expect);
    }
}

TEST_CASE("derivation text round trip") {
    Rng rng(8);
    for (int round = 0; round < 100; ++round) {
        auto s = random_derivation(rng, rng.range(1, 3), 6, 0);
        CHECK(parse_derivation(derivation_to_text(s)) == s);
    }
    CHECK_THROWS_AS(parse_derivation("graph k=1\nv 0 1\nphi 1\n"), InputError);
    CHECK_THROWS_AS(parse_derivation("graph k=1\nv 0 1\np 0 2\nphi 1\n"), InputError);
}
