#include "cwforge/cwforge.h"

#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "decomposer.hpp"
#include "error.hpp"
#include "gen.hpp"
#include "orderlab.hpp"
#include "recognize.hpp"

struct cwf_graph {
    cwf::ColoredGraph value;
};
struct cwf_word {
    cwf::LinearWord value;
};
struct cwf_term {
    cwf::CliqueTerm value;
};

namespace {

thread_local std::string last_error;

cwf_status fail(cwf_status s, std::string message) {
    last_error = std::move(message);
    return s;
}

// Maps exceptions to status codes; the body returns its own status on normal exit.
template <typename F>
cwf_status guarded(F&& body) {
    try {
        return body();
    } catch (const cwf::InputError& e) {
        return fail(CWF_INPUT_ERROR, e.what());
    } catch (const cwf::CheckFailure& e) {
        return fail(CWF_CHECK_FAILED, e.what());
    } catch (const std::bad_alloc&) {
        return fail(CWF_INTERNAL_ERROR, "out of memory");
    } catch (const std::exception& e) {
        return fail(CWF_INTERNAL_ERROR, e.what());
    } catch (...) {
        return fail(CWF_INTERNAL_ERROR, "unknown error");
    }
}

char* copy_string(const std::string& s) {
    auto* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

#define CWF_REQUIRE(cond)                                                   \
    do {                                                                    \
        if (!(cond)) return fail(CWF_INPUT_ERROR, "null argument: " #cond); \
    } while (0)

std::vector<std::string> split_claims(const std::string& list) {
    if (list == "all") return {};
    std::vector<std::string> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    if (out.empty()) throw cwf::InputError("empty claim list");
    return out;
}

}  // namespace

extern "C" {

const char* cwf_last_error(void) { return last_error.c_str(); }

void cwf_string_free(char* s) { delete[] s; }

cwf_status cwf_graph_parse(const char* text, cwf_graph** out) {
    CWF_REQUIRE(text && out);
    return guarded([&] {
        *out = new cwf_graph{cwf::parse_graph(text)};
        return CWF_OK;
    });
}

cwf_status cwf_graph_to_text(const cwf_graph* g, char** out) {
    CWF_REQUIRE(g && out);
    return guarded([&] {
        *out = copy_string(cwf::graph_to_text(g->value));
        return CWF_OK;
    });
}

cwf_status cwf_graph_vertex_count(const cwf_graph* g, size_t* out) {
    CWF_REQUIRE(g && out);
    *out = g->value.size();
    return CWF_OK;
}

cwf_status cwf_graph_edge_count(const cwf_graph* g, size_t* out) {
    CWF_REQUIRE(g && out);
    *out = g->value.edge_count();
    return CWF_OK;
}

cwf_status cwf_graph_isomorphic(const cwf_graph* a, const cwf_graph* b, int respect_colors, int* out) {
    CWF_REQUIRE(a && b && out);
    return guarded([&] {
        *out = cwf::isomorphic(a->value, b->value, respect_colors != 0) ? 1 : 0;
        return CWF_OK;
    });
}

void cwf_graph_free(cwf_graph* g) { delete g; }

cwf_status cwf_word_parse(const char* text, cwf_word** out) {
    CWF_REQUIRE(text && out);
    return guarded([&] {
        *out = new cwf_word{cwf::parse_word(text)};
        return CWF_OK;
    });
}

cwf_status cwf_word_generate(int k, size_t length, uint64_t seed, cwf_word** out) {
    CWF_REQUIRE(out);
    return guarded([&] {
        cwf::GenSpec spec;
        spec.k = k;
        spec.length = length;
        spec.seed = seed;
        *out = new cwf_word{cwf::gen_word(spec)};
        return CWF_OK;
    });
}

cwf_status cwf_word_to_text(const cwf_word* w, char** out) {
    CWF_REQUIRE(w && out);
    return guarded([&] {
        *out = copy_string(cwf::word_to_text(w->value));
        return CWF_OK;
    });
}

cwf_status cwf_word_k(const cwf_word* w, int* out) {
    CWF_REQUIRE(w && out);
    *out = w->value.k;
    return CWF_OK;
}

cwf_status cwf_word_eval(const cwf_word* w, cwf_graph** out) {
    CWF_REQUIRE(w && out);
    return guarded([&] {
        *out = new cwf_graph{cwf::eval_word(w->value)};
        return CWF_OK;
    });
}

cwf_status cwf_word_to_term(const cwf_word* w, cwf_term** out) {
    CWF_REQUIRE(w && out);
    return guarded([&] {
        *out = new cwf_term{cwf::linear_to_term(w->value)};
        return CWF_OK;
    });
}

void cwf_word_free(cwf_word* w) { delete w; }

cwf_status cwf_term_parse(const char* text, cwf_term** out) {
    CWF_REQUIRE(text && out);
    return guarded([&] {
        *out = new cwf_term{cwf::parse_term(text)};
        return CWF_OK;
    });
}

cwf_status cwf_term_to_text(const cwf_term* t, char** out) {
    CWF_REQUIRE(t && out);
    return guarded([&] {
        *out = copy_string(cwf::term_to_text(t->value));
        return CWF_OK;
    });
}

cwf_status cwf_term_eval(const cwf_term* t, cwf_graph** out) {
    CWF_REQUIRE(t && out);
    return guarded([&] {
        *out = new cwf_graph{cwf::eval_term(t->value)};
        return CWF_OK;
    });
}

cwf_status cwf_term_width(const cwf_term* t, int* out) {
    CWF_REQUIRE(t && out);
    return guarded([&] {
        *out = cwf::term_width(t->value.root);
        return CWF_OK;
    });
}

void cwf_term_free(cwf_term* t) { delete t; }

cwf_status cwf_decompose(const cwf_word* w, cwf_term** out, cwf_decompose_stats* stats) {
    CWF_REQUIRE(w && out);
    return guarded([&] {
        auto r = cwf::decompose(w->value);
        if (stats) {
            stats->width = r.width;
            stats->width_bound = r.width_bound;
            stats->forest_depth = r.forest_depth;
            stats->semigroup_size = r.semigroup_size;
            stats->idempotent_nodes = r.idempotent_nodes;
            stats->coarse_image = r.image == cwf::FactorizationImage::Coarse ? 1 : 0;
        }
        *out = new cwf_term{std::move(r.term)};
        return CWF_OK;
    });
}

cwf_status cwf_verify_decomposition(const cwf_word* w, const cwf_term* t) {
    CWF_REQUIRE(w && t);
    return guarded([&] {
        auto check = cwf::verify_decomposition(w->value, t->value);
        return check.ok ? CWF_OK : fail(CWF_CHECK_FAILED, check.message);
    });
}

cwf_status cwf_verify_term_graph(const cwf_graph* g, const cwf_term* t) {
    CWF_REQUIRE(g && t);
    return guarded([&] {
        auto check = cwf::verify_against_graph(g->value, t->value);
        return check.ok ? CWF_OK : fail(CWF_CHECK_FAILED, check.message);
    });
}

cwf_status cwf_forest(const cwf_word* w, char** text, size_t* depth, size_t* depth_bound) {
    CWF_REQUIRE(w && text);
    return guarded([&] {
        auto f = cwf::word_forest(w->value);
        *text = copy_string(f.text);
        if (depth) *depth = f.depth;
        if (depth_bound) *depth_bound = f.depth_bound;
        return f.verified ? CWF_OK : fail(CWF_CHECK_FAILED, "forest check failed: " + f.message);
    });
}

cwf_status cwf_orderlab(int k, int n, uint64_t seed, const char* claims, char** report) {
    CWF_REQUIRE(claims && report);
    return guarded([&] {
        if (k < 1 || k > cwf::kMaxRegistryColors) throw cwf::InputError("order lab needs 1 <= k <= 4");
        auto selection = split_claims(claims);
        for (const auto& name : selection) {
            const auto& all = cwf::claim_names();
            if (std::find(all.begin(), all.end(), name) == all.end())
                throw cwf::InputError("unknown claim '" + name + "'");
        }
        auto ctx = cwf::random_power_context(k, n, seed);
        std::ostringstream os;
        bool all_passed = true;
        for (const auto& r : cwf::claims_suite(ctx, selection)) {
            all_passed = all_passed && r.passed;
            if (r.passed)
                os << "PASS " << r.name << " (" << r.checks << " checks)\n";
            else
                os << "FAIL " << r.name << ": " << r.counterexample << "\n";
        }
        *report = copy_string(os.str());
        return all_passed ? CWF_OK : fail(CWF_CHECK_FAILED, "some order-lab claims failed");
    });
}

cwf_status cwf_orderlab_claims(char** out) {
    CWF_REQUIRE(out);
    return guarded([&] {
        std::string s;
        for (const auto& name : cwf::claim_names()) s += name + "\n";
        *out = copy_string(s);
        return CWF_OK;
    });
}

cwf_status cwf_recognize(const cwf_term* t, const char* automaton, int* accepted, char** state) {
    CWF_REQUIRE(t && automaton && accepted);
    return guarded([&] {
        auto a = cwf::automaton_from_spec(automaton, std::max(1, t->value.k));
        auto r = cwf::run(*a, t->value);
        *accepted = r.accepted ? 1 : 0;
        if (state) *state = copy_string(a->describe(r.state));
        return CWF_OK;
    });
}

}  // extern "C"
