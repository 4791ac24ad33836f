#include "decomposer.hpp"
#include "doctest.h"
#include "error.hpp"
#include "fixtures.hpp"
#include "gen.hpp"
#include "random_objects.hpp"
#include "recognize.hpp"

using namespace cwf;
using cwf::testing::random_word;

namespace {

bool connected(const ColoredGraph& g) { return !g.empty() && connected_components(g).size() == 1; }

NodePtr shuffled(const NodePtr& n, Rng& rng) {
    if (n->children.empty()) return n;
    auto copy = std::make_shared<Node>(*n);
    for (auto& c : copy->children) c = shuffled(c, rng);
    rng.shuffle(copy->children);
    return copy;
}

void check_agreement(const CliqueTerm& t) {
    auto g = eval_term(t);
    for (int p : {1, 2, 3, 5}) CHECK(run(*automaton_mod_p(p), t).accepted == (g.size() % static_cast<std::size_t>(p) == 0));
    CHECK(run(*automaton_connectivity(t.k), t).accepted == connected(g));
}

}  // namespace

TEST_CASE("small cases") {
    auto mod2 = automaton_mod_p(2);
    CliqueTerm one{1, make_const(1, 0)};
    auto r = run(*mod2, one);
    CHECK(r.state == AutomatonState{1});
    CHECK_FALSE(r.accepted);
    CHECK(run(*mod2, CliqueTerm{1, make_empty()}).accepted);
    CHECK_FALSE(run(*automaton_connectivity(1), CliqueTerm{1, make_empty()}).accepted);

    auto conn = automaton_connectivity(2);
    CHECK(run(*conn, one).accepted);
    CliqueTerm apart{2, make_join({}, {make_const(1, 0), make_const(2, 1)})};
    CHECK_FALSE(run(*conn, apart).accepted);
    CliqueTerm linked{2, make_join({{1, 2}}, {make_const(1, 0), make_const(2, 1)})};
    CHECK(run(*conn, linked).accepted);
    // Same color in one child is not linked by (1, 1); a third child joins them.
    CliqueTerm pair{1, make_join({}, {make_const(1, 0), make_const(1, 1)})};
    CliqueTerm star{1, make_join({{1, 1}}, {pair.root, make_const(1, 2)})};
    CHECK_FALSE(run(*automaton_connectivity(1), CliqueTerm{1, make_join({{1, 1}}, {pair.root})}).accepted);
    CHECK(run(*automaton_connectivity(1), star).accepted);
}

TEST_CASE("the example term") {
    auto t = fixtures::example_term();
    auto g = eval_term(t);
    REQUIRE(g.size() == 12);
    CHECK(run(*automaton_mod_p(2), t).accepted);
    CHECK_FALSE(run(*automaton_mod_p(5), t).accepted);
    CHECK(run(*automaton_connectivity(t.k), t).accepted == connected(g));
    CHECK(connected(g));
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(automaton_mod_p(0), InputError);
    CHECK_THROWS_AS(automaton_from_spec("modp:x", 2), InputError);
    CHECK_THROWS_AS(automaton_from_spec("acyclic", 2), InputError);
    CHECK(automaton_from_spec("modp:3", 2)->name() == "modp:3");
    CHECK(automaton_from_spec("connected", 2)->name() == "connected");
    CliqueTerm wide{3, make_const(3, 0)};
    CHECK_THROWS_AS(run(*automaton_connectivity(2), wide), InputError);
}

TEST_CASE("agreement with direct computation on random terms") {
    Rng rng(51);
    int accepted = 0;
    for (int round = 0; round < 500; ++round) {
        int k = rng.range(1, 4);
        auto t = random_term(k, static_cast<std::size_t>(rng.range(0, 40)), rng);
        check_agreement(t);
        accepted += run(*automaton_connectivity(k), t).accepted;
    }
    // Both verdicts occur.
    CHECK(accepted > 20);
    CHECK(accepted < 480);
}

TEST_CASE("agreement on decomposer outputs and linear terms") {
    Rng rng(52);
    for (int round = 0; round < 60; ++round) {
        int k = rng.range(1, 3);
        auto w = random_word(rng, k, 1 + rng.below(80), 0);
        check_agreement(decompose(w).term);
        check_agreement(linear_to_term(w));
    }
}

TEST_CASE("child order does not matter") {
    Rng rng(53);
    for (int round = 0; round < 200; ++round) {
        int k = rng.range(1, 4);
        auto t = random_term(k, static_cast<std::size_t>(rng.range(1, 30)), rng);
        CliqueTerm s{t.k, shuffled(t.root, rng)};
        CHECK(run(*automaton_connectivity(k), t).state == run(*automaton_connectivity(k), s).state);
        CHECK(run(*automaton_mod_p(3), t).state == run(*automaton_mod_p(3), s).state);
    }
}
