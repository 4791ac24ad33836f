#include <set>

#include "doctest.h"
#include "error.hpp"
#include "fixtures.hpp"
#include "graph.hpp"
#include "rng.hpp"

using namespace cwf;

namespace {

ColoredGraph random_graph(Rng& rng, int n, int k, double p) {
    GraphBuilder b(k);
    for (int v = 0; v < n; ++v) b.add_vertex(v * 3 + 1, rng.range(1, k));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.chance(p)) b.add_edge(u * 3 + 1, v * 3 + 1);
    return b.build();
}

// Transitive closure of the adjacency relation (Warshall).
std::vector<std::vector<VertexId>> closure_components(const ColoredGraph& g) {
    std::size_t n = g.size();
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        r[i][i] = true;
        for (std::size_t j = 0; j < n; ++j) r[i][j] = r[i][j] || g.adjacent_idx(i, j);
    }
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) r[i][j] = r[i][j] || (r[i][m] && r[m][j]);
    std::set<std::vector<VertexId>> classes;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<VertexId> c;
        for (std::size_t j = 0; j < n; ++j)
            if (r[i][j]) c.push_back(g.id_at(j));
        classes.insert(c);
    }
    std::vector<std::vector<VertexId>> out(classes.begin(), classes.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

}  // namespace

TEST_CASE("flip toggles exactly the cross pairs") {
    auto g = GraphBuilder(1).add_vertex(1, 1).add_vertex(2, 1).build();
    auto f = flip(g, {1}, {2});
    CHECK(f.edge_count() == 1);
    CHECK(f.adjacent(1, 2));
    CHECK(flip(g, {}, {2}) == g);
    CHECK_THROWS_AS(flip(g, {3}, {1}), InputError);
}

TEST_CASE("flip is an involution and commutes on random graphs") {
    Rng rng(7);
    for (int round = 0; round < 200; ++round) {
        auto g = random_graph(rng, rng.range(0, 8), 2, 0.4);
        std::vector<VertexId> x, y, x2, y2;
        for (auto v : g.ids()) {
            if (rng.chance(0.5)) x.push_back(v);
            if (rng.chance(0.5)) y.push_back(v);
            if (rng.chance(0.5)) x2.push_back(v);
            if (rng.chance(0.5)) y2.push_back(v);
        }
        CHECK(flip(flip(g, x, y), x, y) == g);
        CHECK(flip(flip(g, x, y), x2, y2) == flip(flip(g, x2, y2), x, y));
        // Overlapping sets: a pair lying in both X and Y is still toggled once.
        auto f = flip(g, x, x);
        for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t j = i + 1; j < g.size(); ++j) {
                bool inside = std::count(x.begin(), x.end(), g.id_at(i)) && std::count(x.begin(), x.end(), g.id_at(j));
                CHECK(f.adjacent_idx(i, j) == (g.adjacent_idx(i, j) != inside));
            }
    }
}

TEST_CASE("connected components") {
    CHECK(connected_components(ColoredGraph(1)).empty());
    auto iso = GraphBuilder(1).add_vertex(1, 1).add_vertex(2, 1).add_vertex(3, 1).build();
    CHECK(connected_components(iso).size() == 3);
    auto path = GraphBuilder(1).add_vertex(1, 1).add_vertex(2, 1).add_vertex(3, 1).add_edge(1, 2).add_edge(2, 3).build();
    CHECK(connected_components(path) == std::vector<std::vector<VertexId>>{{1, 2, 3}});
    Rng rng(11);
    for (int round = 0; round < 300; ++round) {
        auto g = random_graph(rng, rng.range(0, 8), 1, rng.unit() * 0.5);
        CHECK(connected_components(g) == closure_components(g));
    }
}

TEST_CASE("partition rank") {
    auto two = GraphBuilder(1).add_vertex(1, 1).add_vertex(2, 1).build();
    CHECK(partition_rank(two, {1}) == 2);
    GraphBuilder kb(1);
    for (int v = 1; v <= 5; ++v) kb.add_vertex(v, 1);
    for (int a = 1; a <= 2; ++a)
        for (int b = 3; b <= 5; ++b) kb.add_edge(a, b);
    CHECK(partition_rank(kb.build(), {1, 2}) == 2);
    auto path = GraphBuilder(1).add_vertex(1, 1).add_vertex(2, 1).add_vertex(3, 1).add_edge(1, 2).add_edge(2, 3).build();
    CHECK(partition_rank(path, {2}) == 2);

    Rng rng(5);
    for (int round = 0; round < 200; ++round) {
        auto g = random_graph(rng, rng.range(1, 8), 1, 0.5);
        std::vector<VertexId> side0, side1;
        for (auto v : g.ids()) (rng.chance(0.5) ? side0 : side1).push_back(v);
        auto r = partition_rank(g, side0);
        CHECK(r == partition_rank(g, side1));
        CHECK(r >= 1);
        CHECK(r <= g.size());
    }
}

TEST_CASE("graph text round trip and diagnostics") {
    Rng rng(3);
    for (int round = 0; round < 50; ++round) {
        auto g = random_graph(rng, rng.range(0, 8), 3, 0.4);
        CHECK(parse_graph(graph_to_text(g)) == g);
    }
    CHECK(graph_to_text(GraphBuilder(2).add_vertex(5, 2).add_vertex(1, 1).add_edge(5, 1).build()) ==
          "graph k=2\nv 1 1\nv 5 2\ne 1 5\n");
    CHECK(parse_graph("# comment\n\ngraph k=1\nv 0 1 # trailing\n") == GraphBuilder(1).add_vertex(0, 1).build());
    auto message = [](const char* text) {
        try {
            parse_graph(text);
        } catch (const InputError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message("graph k=2\nv 1 3\n") == "line 2: color 3 outside [1,2]");
    CHECK(message("graph k=2\nv 1 1\ne 1 2\n") == "line 3: edge uses an undeclared vertex");
    CHECK(message("graph k=2\nv 1 1\nv 1 2\n") == "line 3: duplicate vertex 1");
    CHECK(message("graph k=2\nv 1 1\ne 1 1\n") == "line 3: self-loop");
    CHECK(message("graph k=x\n") == "line 1: expected integer k, got 'x'");
    CHECK(message("graph k=1\nq 1\n") == "line 2: unexpected line 'q'");
}

TEST_CASE("isomorphism search") {
    auto fig = fixtures::three_cliques_graph();
    CHECK(fig.size() == 12);
    CHECK(fig.edge_count() == 20);
    CHECK(isomorphic(fig, fig, true));
    // Relabel ids by a permutation: still isomorphic.
    std::vector<VertexId> perm{5, 3, 11, 0, 8, 1, 9, 2, 7, 4, 10, 6};
    GraphBuilder b(1);
    for (VertexId v = 0; v < 12; ++v) b.add_vertex(perm[v] + 100, 1);
    for (auto [x, y] : fig.edges()) b.add_edge(perm[x] + 100, perm[y] + 100);
    auto moved = b.build();
    CHECK(isomorphic(fig, moved, false));
    // Same degree sequence, different structure: a 6-cycle versus two triangles.
    GraphBuilder cyc(1), tri(1);
    for (VertexId v = 0; v < 6; ++v) {
        cyc.add_vertex(v, 1);
        tri.add_vertex(v, 1);
        cyc.add_edge(v, (v + 1) % 6);
    }
    tri.add_edge(0, 1).add_edge(1, 2).add_edge(0, 2).add_edge(3, 4).add_edge(4, 5).add_edge(3, 5);
    CHECK_FALSE(isomorphic(cyc.build(), tri.build(), false));
    // Colors matter only when asked.
    auto red = GraphBuilder(2).add_vertex(1, 1).build();
    auto blue = GraphBuilder(2).add_vertex(1, 2).build();
    CHECK(isomorphic(red, blue, false));
    CHECK_FALSE(isomorphic(red, blue, true));
}
