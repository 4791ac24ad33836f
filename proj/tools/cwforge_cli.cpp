#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cwforge/cwforge.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheck = 1;
constexpr int kExitInput = 2;

// Raised for anything that should end the run with a given exit code and message.
struct Exit {
    int code;
    std::string message;
};

struct OwnedString {
    char* p = nullptr;
    ~OwnedString() { cwf_string_free(p); }
    std::string str() const { return p ? p : ""; }
};

template <typename T, void (*Free)(T*)>
struct Handle {
    T* p = nullptr;
    ~Handle() { Free(p); }
};
using Word = Handle<cwf_word, cwf_word_free>;
using Term = Handle<cwf_term, cwf_term_free>;
using Graph = Handle<cwf_graph, cwf_graph_free>;

int exit_code(cwf_status s) {
    switch (s) {
        case CWF_OK: return kExitOk;
        case CWF_CHECK_FAILED: return kExitCheck;
        case CWF_INPUT_ERROR: return kExitInput;
        default: return 3;
    }
}

// Throws Exit unless s is CWF_OK; `context` prefixes the library's message.
void expect(cwf_status s, const std::string& context) {
    if (s != CWF_OK) throw Exit{exit_code(s), context + cwf_last_error()};
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw Exit{kExitInput, "cannot read " + path};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out || !(out << text)) throw Exit{kExitInput, "cannot write " + out_path};
}

void load_word(const std::string& path, Word& w) {
    expect(cwf_word_parse(read_input(path).c_str(), &w.p), path + ": ");
}

void load_term(const std::string& path, Term& t) {
    expect(cwf_term_parse(read_input(path).c_str(), &t.p), path + ": ");
}

struct Options {
    std::string input, second, out, automaton, claims = "all";
    int k = 2;
    long long n = 10;
    std::uint64_t seed = 1;
    bool stats = false, verify = false, depth_only = false;
};

int cmd_eval(const Options& o) {
    Word w;
    load_word(o.input, w);
    Graph g;
    expect(cwf_word_eval(w.p, &g.p), "");
    OwnedString text;
    expect(cwf_graph_to_text(g.p, &text.p), "");
    write_output(o.out, text.str());
    return kExitOk;
}

int cmd_decompose(const Options& o) {
    Word w;
    load_word(o.input, w);
    Term t;
    cwf_decompose_stats st{};
    expect(cwf_decompose(w.p, &t.p, &st), "");
    OwnedString text;
    expect(cwf_term_to_text(t.p, &text.p), "");
    write_output(o.out, text.str());
    if (o.stats) {
        std::cerr << "width: " << st.width << "\n"
                  << "width_bound: " << st.width_bound << "\n"
                  << "forest_depth: " << st.forest_depth << "\n"
                  << "semigroup_size: " << st.semigroup_size << "\n"
                  << "idempotent_nodes: " << st.idempotent_nodes << "\n"
                  << "image: " << (st.coarse_image ? "coarse" : "reduced") << "\n";
    }
    if (o.verify) {
        auto s = cwf_verify_decomposition(w.p, t.p);
        if (s != CWF_OK) throw Exit{exit_code(s), std::string("verification failed: ") + cwf_last_error()};
        std::cerr << "verified\n";
    }
    return kExitOk;
}

int cmd_verify(const Options& o) {
    Word w;
    load_word(o.input, w);
    Term t;
    load_term(o.second, t);
    auto s = cwf_verify_decomposition(w.p, t.p);
    if (s == CWF_OK) {
        std::cout << "OK\n";
        return kExitOk;
    }
    if (s == CWF_CHECK_FAILED) {
        std::cout << "MISMATCH: " << cwf_last_error() << "\n";
        return kExitCheck;
    }
    expect(s, "");
    return kExitOk;
}

int cmd_forest(const Options& o) {
    Word w;
    load_word(o.input, w);
    OwnedString text;
    std::size_t depth = 0, bound = 0;
    auto s = cwf_forest(w.p, &text.p, &depth, &bound);
    if (s != CWF_OK && s != CWF_CHECK_FAILED) expect(s, "");
    if (o.depth_only)
        write_output(o.out, "depth " + std::to_string(depth) + " bound " + std::to_string(bound) + "\n");
    else
        write_output(o.out, text.str());
    if (s == CWF_CHECK_FAILED) throw Exit{kExitCheck, cwf_last_error()};
    return kExitOk;
}

int cmd_orderlab(const Options& o) {
    if (o.n < 1 || o.n > 1000) throw Exit{kExitInput, "--n must be in 1..1000"};
    OwnedString report;
    auto s = cwf_orderlab(o.k, static_cast<int>(o.n), o.seed, o.claims.c_str(), &report.p);
    if (s != CWF_OK && s != CWF_CHECK_FAILED) expect(s, "");
    write_output(o.out, report.str());
    return s == CWF_OK ? kExitOk : kExitCheck;
}

int cmd_recognize(const Options& o) {
    Term t;
    load_term(o.input, t);
    int accepted = 0;
    OwnedString state;
    expect(cwf_recognize(t.p, o.automaton.c_str(), &accepted, &state.p), "");
    write_output(o.out, std::string(accepted ? "ACCEPT" : "REJECT") + "\n");
    return kExitOk;
}

int cmd_gen(const Options& o) {
    if (o.n < 1) throw Exit{kExitInput, "--n must be at least 1"};
    Word w;
    expect(cwf_word_generate(o.k, static_cast<std::size_t>(o.n), o.seed, &w.p), "");
    OwnedString text;
    expect(cwf_word_to_text(w.p, &text.p), "");
    write_output(o.out, text.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cwforge: linear clique decompositions to bounded-width clique terms"};
    app.require_subcommand(1);
    Options o;

    auto add_out = [&](CLI::App* sub) { sub->add_option("--out", o.out, "Write the result to this file"); };
    auto add_seeded = [&](CLI::App* sub) {
        sub->add_option("--seed", o.seed, "Random seed");
        sub->add_option("--k", o.k, "Number of colors");
        sub->add_option("--n", o.n, "Length or block count");
    };

    auto* eval = app.add_subcommand("eval", "Evaluate a word to its graph");
    eval->add_option("word", o.input, "Word file ('-' for stdin)")->required();
    add_out(eval);

    auto* decompose = app.add_subcommand("decompose", "Bounded-width clique term for a word");
    decompose->add_option("word", o.input, "Word file ('-' for stdin)")->required();
    decompose->add_flag("--stats", o.stats, "Print width, bound and forest statistics to stderr");
    decompose->add_flag("--verify", o.verify, "Check the term against the word's graph");
    add_out(decompose);

    auto* verify = app.add_subcommand("verify", "Check that a term evaluates to a word's graph");
    verify->add_option("word", o.input, "Word file")->required();
    verify->add_option("term", o.second, "Term file")->required();

    auto* forest = app.add_subcommand("forest", "Factorisation forest of a word's letters");
    forest->add_option("word", o.input, "Word file ('-' for stdin)")->required();
    forest->add_flag("--depth", o.depth_only, "Print only the depth and its bound");
    add_out(forest);

    auto* orderlab = app.add_subcommand("orderlab", "Run the order-lemma claims on a seeded power context");
    add_seeded(orderlab);
    orderlab->add_option("--claims", o.claims, "Comma-separated claim names or 'all'");
    add_out(orderlab);

    auto* recognize = app.add_subcommand("recognize", "Run a term automaton");
    recognize->add_option("term", o.input, "Term file ('-' for stdin)")->required();
    recognize->add_option("--automaton", o.automaton, "modp:<p> or connected")->required();
    add_out(recognize);

    auto* gen = app.add_subcommand("gen", "Generate a random word");
    add_seeded(gen);
    add_out(gen);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "cwforge: " << e.what() << "\n\n" << app.help();
        return kExitInput;
    }

    try {
        if (*eval) return cmd_eval(o);
        if (*decompose) return cmd_decompose(o);
        if (*verify) return cmd_verify(o);
        if (*forest) return cmd_forest(o);
        if (*orderlab) return cmd_orderlab(o);
        if (*recognize) return cmd_recognize(o);
        if (*gen) return cmd_gen(o);
    } catch (const Exit& e) {
        if (!e.message.empty()) std::cerr << "cwforge: " << e.message << "\n";
        return e.code;
    }
    std::cerr << app.help();
    return kExitInput;
}
