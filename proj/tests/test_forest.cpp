#include "doctest.h"
#include "forest_oracles.hpp"
#include "forest.hpp"
#include "rng.hpp"

using namespace cwf;
using namespace cwf::testing;

TEST_CASE("single letters and constant idempotent sequences") {
    TableSemigroup sg(kFlipFlop);
    auto f = build_forest({2}, sg);
    CHECK(f.depth() == 1);
    CHECK(f.nodes[f.root].kind == ForestKind::Leaf);
    CHECK(forest_to_text(f, sg) == "L 1\n");

    auto g = build_forest({1, 1, 1, 1, 1}, sg);
    CHECK(g.depth() == 2);
    CHECK(g.nodes[g.root].kind == ForestKind::Idempotent);
    CHECK(g.nodes[g.root].children.size() == 5);

    auto two = build_forest({1, 1}, sg);
    CHECK(two.nodes[two.root].kind == ForestKind::Idempotent);
    CHECK_THROWS_AS(build_forest({}, sg), InputError);
}

TEST_CASE("forest dump format") {
    TableSemigroup sg(kCyclic);
    auto f = build_forest({1, 2}, sg);
    CHECK(forest_to_text(f, sg) == "B\n  L 1\n  L 2\n");
    auto g = build_forest({0, 0, 0}, sg);
    CHECK(forest_to_text(g, sg) == "I " + element_hash(sg, 0) + "\n  L 1\n  L 2\n  L 3\n");
    CHECK(element_hash(sg, 0).size() == 16);
}

TEST_CASE("all short words over three-element semigroups: valid and between the optimum and the bound") {
    for (const auto* table : {&kGroupWithZero, &kFlipFlop, &kCyclic}) {
        TableSemigroup sg(*table);
        std::size_t worst_slack = 0;
        for (std::size_t n = 1; n <= 8; ++n) {
            std::size_t count = 1;
            for (std::size_t i = 0; i < n; ++i) count *= 3;
            for (std::size_t code = 0; code < count; ++code) {
                std::vector<int> w(n);
                for (std::size_t i = 0, c = code; i < n; ++i, c /= 3) w[i] = static_cast<int>(c % 3);
                auto f = build_forest(w, sg);
                auto check = verify_forest(f, w, sg);
                REQUIRE_MESSAGE(check.ok, check.message);
                std::size_t opt = min_depth(w, sg);
                CHECK(f.depth() >= opt);
                CHECK(f.depth() <= f.depth_bound);
                worst_slack = std::max(worst_slack, f.depth() - opt);
            }
        }
        MESSAGE("worst slack over the optimum: " << worst_slack);
    }
}

TEST_CASE("verify_forest rejects mutations") {
    TableSemigroup sg(kGroupWithZero);
    std::vector<int> w{1, 2, 2, 1, 0, 2, 1};
    auto f = build_forest(w, sg);
    REQUIRE(verify_forest(f, w, sg).ok);

    auto swapped = f;
    std::vector<std::size_t> leaf_nodes;
    for (std::size_t i = 0; i < swapped.nodes.size(); ++i)
        if (swapped.nodes[i].kind == ForestKind::Leaf) leaf_nodes.push_back(i);
    std::swap(swapped.nodes[leaf_nodes[0]].position, swapped.nodes[leaf_nodes[1]].position);
    CHECK_FALSE(verify_forest(swapped, w, sg).ok);

    // Idempotent node over non-idempotent images.
    Forest bad;
    bad.nodes = {{ForestKind::Leaf, 0, {}, 2}, {ForestKind::Leaf, 1, {}, 2}, {ForestKind::Idempotent, 0, {0, 1}, 2}};
    bad.root = 2;
    auto check = verify_forest(bad, {2, 2}, sg);
    CHECK_FALSE(check.ok);
    CHECK(check.message.find("not idempotent") != std::string::npos);

    auto wrong_image = f;
    for (auto& n : wrong_image.nodes)
        if (n.kind == ForestKind::Binary) {
            n.image = n.image == 1 ? 2 : 1;
            break;
        }
    CHECK_FALSE(verify_forest(wrong_image, w, sg).ok);
    CHECK_FALSE(verify_forest(f, {1, 2, 2}, sg).ok);
}

TEST_CASE("random transformation semigroups stay within the bound") {
    Rng rng(21);
    for (int round = 0; round < 60; ++round) {
        auto sg = transformations();
        int points = rng.range(2, 4);
        int gens = rng.range(1, 3);
        std::vector<int> alphabet;
        for (int g = 0; g < gens; ++g) {
            Transformation t(static_cast<std::size_t>(points));
            for (auto& x : t) x = rng.range(0, points - 1);
            alphabet.push_back(sg.intern(t));
        }
        auto w = random_letters(rng, 1 + rng.below(300), alphabet);
        auto f = build_forest(w, sg);
        auto check = verify_forest(f, w, sg);
        REQUIRE_MESSAGE(check.ok, check.message);
        CHECK(f.depth() <= f.depth_bound);
        int root_image = w[0];
        for (std::size_t i = 1; i < w.size(); ++i) root_image = sg.multiply(root_image, w[i]);
        CHECK(f.nodes[f.root].image == root_image);
        std::vector<std::size_t> expected(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) expected[i] = i;
        CHECK(f.leaves(f.root) == expected);
    }
}

TEST_CASE("depth plateaus as the sequence grows") {
    // Full transformation monoid on three points, generated by a swap, a cycle and a collapse.
    auto sg = transformations();
    std::vector<int> alphabet{sg.intern({1, 0, 2}), sg.intern({1, 2, 0}), sg.intern({0, 0, 2})};
    Rng rng(22);
    std::vector<std::size_t> max_depth;
    std::size_t bound = 0;
    for (std::size_t n : {250u, 500u, 1000u, 2000u, 4000u}) {
        std::size_t worst = 0;
        for (int trial = 0; trial < 20; ++trial) {
            auto w = random_letters(rng, n, alphabet);
            auto f = build_forest(w, sg);
            REQUIRE(verify_forest(f, w, sg).ok);
            worst = std::max(worst, f.depth());
            bound = f.depth_bound;
        }
        max_depth.push_back(worst);
    }
    for (auto d : max_depth) CHECK(d <= bound);
    MESSAGE("max depths: " << max_depth[0] << " " << max_depth[1] << " " << max_depth[2] << " " << max_depth[3] << " "
                           << max_depth[4] << " (bound " << bound << ")");
    // Doubling the length four times raises the worst depth by at most a small additive amount.
    CHECK(max_depth.back() <= max_depth.front() + 4);
}
