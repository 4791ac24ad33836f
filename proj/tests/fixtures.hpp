#pragma once

#include <string>

#include "graph.hpp"
#include "term.hpp"
#include "word.hpp"

namespace cwf::fixtures {

// Three 4-cliques {v0,w0,v1,w1}, {v2,w2,v3,w3}, {v4,w4,v5,w5} linked by v1-v2 and v3-v4.
// Ids: v_x = x, w_x = 6 + x.
inline ColoredGraph three_cliques_graph() {
    GraphBuilder b(1);
    for (VertexId v = 0; v < 12; ++v) b.add_vertex(v, 1);
    for (int x = 0; x < 6; ++x) b.add_edge(x, 6 + x);
    for (int x = 0; x < 6; x += 2) {
        b.add_edge(x, x + 1);
        b.add_edge(x, 6 + x + 1);
        b.add_edge(6 + x, x + 1);
        b.add_edge(6 + x, 6 + x + 1);
    }
    b.add_edge(1, 2);
    b.add_edge(3, 4);
    return b.build();
}

inline const char* example_word_text() {
    return "word k=3\n"
           "# first clique\n"
           "a 1 - 0\na 1 1 1\na 1 1 2\na 2 1 3\n"
           "# second clique\n"
           "a 3 2 4\nr 1 1 2\na 2 2 5\na 2 2 6\na 3 2 7\nr 1 1 2\n"
           "# third clique\n"
           "a 3 2 8\na 3 3 9\na 3 3 10\na 3 3 11\n";
}

inline LinearWord example_word() { return parse_word(example_word_text()); }

// Join_{{2},{3}} over the three clique terms.
inline const char* example_term_text() {
    return "(join ((2 2) (3 3))\n"
           "  (join ((1 1) (1 2)) (const 1 0) (const 1 1) (const 1 2) (const 2 3))\n"
           "  (join ((1 1) (1 2) (1 3) (2 3)) (const 1 4) (const 1 5) (const 2 6) (const 3 7))\n"
           "  (join ((1 1) (1 3)) (const 1 8) (const 1 9) (const 1 10) (const 3 11)))\n";
}

inline CliqueTerm example_term() { return parse_term(example_term_text()); }

}  // namespace cwf::fixtures
