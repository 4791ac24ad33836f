// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// CW_FORGE_THREADS sets the worker count for the corpus loops (default: hardware threads).

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "abstraction.hpp"
#include "decomposer.hpp"
#include "fixtures.hpp"
#include "forest_oracles.hpp"
#include "gen.hpp"
#include "orderlab.hpp"
#include "random_objects.hpp"
#include "recognize.hpp"

using namespace cwf;
using namespace cwf::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

unsigned worker_count() {
    if (const char* env = std::getenv("CW_FORGE_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(i) for i in [0, n) on the worker pool. The first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_lock;
    auto work = [&] {
        for (std::size_t i; (i = next++) < n;) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> g(error_lock);
                if (!error) error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < std::min<std::size_t>(worker_count(), n); ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Collects the first few failure messages from concurrent workers.
class Failures {
public:
    void add(const std::string& message) {
        std::lock_guard<std::mutex> g(lock_);
        if (count_++ < 3) first_ += (first_.empty() ? "" : "; ") + message;
    }
    std::size_t count() const { return count_; }
    std::string summary() const { return std::to_string(count_) + " failures: " + first_; }

private:
    std::mutex lock_;
    std::size_t count_ = 0;
    std::string first_;
};

bool is_connected(const ColoredGraph& g) { return !g.empty() && connected_components(g).size() == 1; }

// Words, decompositions and their verification shared by several criteria.
struct Corpus {
    std::vector<LinearWord> words;
    std::vector<DecomposeResult> results;
    double seconds = 0;
};

Corpus build_corpus() {
    Corpus c;
    const std::size_t n = 1200;
    for (std::size_t i = 0; i < n; ++i) {
        Rng rng(Rng(2024).split(i));
        GenSpec spec;
        spec.k = 1 + static_cast<int>(i % 3);
        spec.length = 1 + rng.below(200);
        spec.seed = rng.next();
        c.words.push_back(gen_word(spec));
    }
    c.results.resize(n);
    return c;
}

Outcome example_reproduction() {
    auto start = Clock::now();
    auto fig = fixtures::three_cliques_graph();
    auto from_word = eval_word(fixtures::example_word());
    auto from_term = eval_term(fixtures::example_term());
    Outcome o;
    o.pass = from_word.size() == 12 && isomorphic(from_word, fig, false) && isomorphic(from_term, fig, false);
    double t = seconds_since(start);
    o.pass = o.pass && t < 1.0;
    std::ostringstream os;
    os << from_word.size() << " vertices, " << from_word.edge_count() << " edges; word and term graphs both isomorphic to the three-clique graph ("
       << t << " s)";
    o.detail = os.str();
    return o;
}

Outcome decomposition_soundness(Corpus& c) {
    auto start = Clock::now();
    Failures fails;
    parallel_for(c.words.size(), [&](std::size_t i) {
        c.results[i] = decompose(c.words[i]);
        auto check = verify_decomposition(c.words[i], c.results[i].term);
        if (!check.ok) fails.add("word " + std::to_string(i) + ": " + check.message);
    });
    c.seconds = seconds_since(start);
    Outcome o;
    o.pass = fails.count() == 0 && c.seconds < 60;
    std::ostringstream os;
    os << c.words.size() << " words (k 1..3, length <= 200) verified in " << c.seconds << " s";
    if (fails.count()) os << "; " << fails.summary();
    o.detail = os.str();
    return o;
}

int max_width(const std::vector<std::pair<std::size_t, std::uint64_t>>& cases) {
    std::vector<int> widths(cases.size());
    parallel_for(cases.size(), [&](std::size_t i) {
        GenSpec spec;
        spec.k = 2;
        spec.length = cases[i].first;
        spec.seed = cases[i].second;
        widths[i] = decompose(gen_word(spec)).width;
    });
    return *std::max_element(widths.begin(), widths.end());
}

Outcome width_plateau() {
    auto start = Clock::now();
    std::vector<std::pair<std::size_t, std::uint64_t>> small, large;
    for (std::uint64_t s = 0; s < 400; ++s) small.emplace_back(1 + s % 200, 50000 + s);
    std::ostringstream os;
    os << "max width over lengths <= 200: ";
    int base = max_width(small);
    os << base << "; by length:";
    bool pass = true;
    for (std::size_t len : {200u, 500u, 1000u, 2000u}) {
        large.clear();
        for (std::uint64_t s = 0; s < 12; ++s) large.emplace_back(len, 60000 + len + s);
        int w = max_width(large);
        os << " " << len << "->" << w;
        pass = pass && w == base;
    }
    double t = seconds_since(start);
    os << " (" << t << " s)";
    return {pass && t < 300, os.str()};
}

Outcome linear_embedding(const Corpus& c) {
    Failures fails;
    parallel_for(c.words.size(), [&](std::size_t i) {
        const auto& w = c.words[i];
        auto t = linear_to_term(w);
        int width = term_width(t.root);
        auto a = eval_term(t), b = eval_word(w);
        if (width > w.k + 1) fails.add("word " + std::to_string(i) + " width " + std::to_string(width));
        if (!a.same_structure(b) || a.colors() != b.colors()) fails.add("word " + std::to_string(i) + " differs");
    });
    Outcome o;
    o.pass = fails.count() == 0;
    o.detail = std::to_string(c.words.size()) + " words: width <= k+1 and identical graphs";
    if (fails.count()) o.detail += "; " + fails.summary();
    return o;
}

Outcome reduced_homomorphism() {
    Rng rng(505);
    int hom_bad = 0, assoc_bad = 0;
    for (int round = 0; round < 1000; ++round) {
        int k = rng.range(1, 3);
        auto a = random_derivation(rng, k, 4, 0);
        auto b = random_derivation(rng, k, 4, 10);
        hom_bad += !(reduced(compose(a, b)) == reduced_compose(reduced(a), reduced(b)));
        if (round < 500) {
            auto x = reduced(a), y = reduced(b), z = reduced(random_derivation(rng, k, 4, 20));
            assoc_bad += !(reduced_compose(reduced_compose(x, y), z) == reduced_compose(x, reduced_compose(y, z)));
        }
    }
    std::ostringstream os;
    os << "1000 pairs: " << hom_bad << " mismatches; 500 triples: " << assoc_bad << " mismatches";
    return {hom_bad == 0 && assoc_bad == 0, os.str()};
}

// Class id per abstraction, numbered by first occurrence.
std::vector<std::size_t> classes_of(const std::vector<Abstraction>& as, std::vector<std::size_t>& representative) {
    std::vector<std::size_t> cls;
    for (std::size_t i = 0; i < as.size(); ++i) {
        auto it = std::find_if(representative.begin(), representative.end(),
                               [&](std::size_t r) { return as[r] == as[i]; });
        cls.push_back(static_cast<std::size_t>(it - representative.begin()));
        if (it == representative.end()) representative.push_back(i);
    }
    return cls;
}

Outcome congruence() {
    auto family = all_z(1);
    auto left = k1_universe(3, 0), right = k1_universe(3, 10);
    std::vector<Abstraction> la, ra;
    for (const auto& s : left) la.push_back(abstract(s, family));
    for (const auto& t : right) ra.push_back(abstract(t, family));
    std::vector<std::size_t> lrep, rrep;
    auto lcls = classes_of(la, lrep);
    auto rcls = classes_of(ra, rrep);
    // Equal classes compose equally iff every pair composes like its class representatives.
    std::vector<Abstraction> rep_products(lrep.size() * rrep.size());
    parallel_for(rep_products.size(), [&](std::size_t p) {
        rep_products[p] = abstract(compose(left[lrep[p / rrep.size()]], right[rrep[p % rrep.size()]]), family);
    });
    std::atomic<std::size_t> violations{0};
    parallel_for(left.size() * right.size(), [&](std::size_t p) {
        std::size_t i = p / right.size(), j = p % right.size();
        if (!(abstract(compose(left[i], right[j]), family) == rep_products[lcls[i] * rrep.size() + rcls[j]]))
            ++violations;
    });
    std::ostringstream os;
    os << left.size() << " x " << right.size() << " derivations in " << lrep.size() << " x " << rrep.size()
       << " classes: " << violations << " violations";
    return {violations == 0, os.str()};
}

Outcome forests(const Corpus& c) {
    Failures fails;
    parallel_for(c.words.size(), [&](std::size_t i) {
        auto f = word_forest(c.words[i]);
        if (!f.verified) fails.add("word " + std::to_string(i) + ": " + f.message);
        if (f.depth > f.depth_bound) fails.add("word " + std::to_string(i) + " above bound");
    });
    std::size_t exhaustive = 0, below_optimum = 0, above_bound = 0;
    std::ostringstream plateau;
    bool flat = true;
    const std::pair<const char*, const Table*> tables[] = {
        {"group-with-zero", &kGroupWithZero}, {"flip-flop", &kFlipFlop}, {"cyclic", &kCyclic}};
    for (const auto& [name, table] : tables) {
        TableSemigroup sg(*table);
        for (std::size_t n = 1; n <= 8; ++n) {
            std::size_t count = 1;
            for (std::size_t i = 0; i < n; ++i) count *= 3;
            for (std::size_t code = 0; code < count; ++code) {
                std::vector<int> w(n);
                for (std::size_t i = 0, x = code; i < n; ++i, x /= 3) w[i] = static_cast<int>(x % 3);
                auto f = build_forest(w, sg);
                ++exhaustive;
                auto check = verify_forest(f, w, sg);
                if (!check.ok) fails.add(std::string(name) + ": " + check.message);
                below_optimum += f.depth() < min_depth(w, sg);
                above_bound += f.depth() > f.depth_bound;
            }
        }
        Rng rng(707);
        auto worst = [&](std::size_t n) {
            std::size_t d = 0;
            for (int trial = 0; trial < 20; ++trial) {
                auto w = random_letters(rng, n, {0, 1, 2});
                auto f = build_forest(w, sg);
                if (!verify_forest(f, w, sg).ok) fails.add(std::string(name) + " plateau forest");
                d = std::max(d, f.depth());
            }
            return d;
        };
        std::size_t short_depth = std::max(worst(50), worst(200));
        std::size_t long_depth = std::max({worst(1000), worst(4000), worst(16000)});
        plateau << " " << name << " " << short_depth << "->" << long_depth;
        flat = flat && long_depth <= short_depth;
    }
    Outcome o;
    o.pass = fails.count() == 0 && below_optimum == 0 && above_bound == 0 && flat;
    std::ostringstream os;
    os << c.words.size() << " word forests verified; " << exhaustive << " short words: " << below_optimum
       << " below optimum, " << above_bound << " above bound; depth n<=200 -> n>=1000:" << plateau.str();
    if (fails.count()) os << "; " << fails.summary();
    o.detail = os.str();
    return o;
}

bool any_failure(const std::vector<ClaimResult>& results) {
    return std::any_of(results.begin(), results.end(), [](const ClaimResult& r) { return !r.passed; });
}

std::size_t checks_of(const std::vector<ClaimResult>& results, const std::string& name) {
    for (const auto& r : results)
        if (r.name == name) return r.checks;
    return 0;
}

std::string first_failure(const std::vector<ClaimResult>& results) {
    for (const auto& r : results)
        if (!r.passed) return r.name + ": " + r.counterexample;
    return "";
}

// Some H-component or social cell stretches over two blocks, so reversing the numbering shows.
bool order_visible(const OrderLabContext& ctx) {
    std::vector<int> lo(static_cast<std::size_t>(ctx.h_components), 1 << 30), hi(lo.size(), 0);
    for (std::size_t v = 0; v < ctx.size(); ++v) {
        auto f = static_cast<std::size_t>(ctx.h_component[v]);
        lo[f] = std::min(lo[f], ctx.block[v]);
        hi[f] = std::max(hi[f], ctx.block[v]);
        if (ctx.social(v) && ctx.blocks() > 1) return true;
    }
    for (std::size_t f = 0; f < lo.size(); ++f)
        if (hi[f] > lo[f]) return true;
    return false;
}

Outcome order_lemma() {
    Failures fails;
    std::atomic<std::size_t> block_checks{0};

    std::vector<Derivation> bases;
    for (auto& sigma : k1_universe(3, 0))
        if (!sigma.graph.empty() && fully_idempotent(sigma)) bases.push_back(std::move(sigma));
    parallel_for(bases.size() * 10, [&](std::size_t p) {
        int n = static_cast<int>(p % 10) + 1;
        auto results = claims_suite(build_context(renamed_powers(bases[p / 10], n)));
        block_checks += checks_of(results, "block-order");
        if (any_failure(results)) fails.add("k=1 base " + std::to_string(p / 10) + " n=" + std::to_string(n) + " " +
                                            first_failure(results));
    });

    const std::size_t seeded = 200;
    std::vector<OrderLabContext> contexts(seeded);
    parallel_for(seeded, [&](std::size_t i) {
        int n = 1 + static_cast<int>(i % 50);
        contexts[i] = random_power_context(2, n, 80000 + i);
        auto results = claims_suite(contexts[i]);
        block_checks += checks_of(results, "block-order");
        if (any_failure(results)) fails.add("k=2 seed " + std::to_string(80000 + i) + " " + first_failure(results));
    });

    const Mutation mutations[] = {Mutation::FlipEdge, Mutation::RecellVertex, Mutation::ReverseBlocks};
    std::vector<std::size_t> visible;
    for (std::size_t i = 0; i < seeded; ++i)
        if (order_visible(contexts[i]) && contexts[i].blocks() <= 12) visible.push_back(i);
    std::vector<std::atomic<std::size_t>> caught(3);
    parallel_for(visible.size(), [&](std::size_t j) {
        Rng rng(Rng(909).split(j));
        for (std::size_t m = 0; m < 3; ++m)
            if (any_failure(claims_suite(mutate(contexts[visible[j]], mutations[m], rng)))) ++caught[m];
    });

    bool mutations_caught = !visible.empty();
    std::ostringstream os;
    os << bases.size() << " k=1 bases x n 1..10 and " << seeded << " k=2 contexts (n <= 50): " << fails.count()
       << " failing contexts, " << block_checks << " block-order checks; mutations caught:";
    for (std::size_t m = 0; m < 3; ++m) {
        os << " " << mutation_name(mutations[m]) << " " << caught[m] << "/" << visible.size();
        mutations_caught = mutations_caught && caught[m] == visible.size();
    }
    if (fails.count()) os << "; " << fails.summary();
    return {fails.count() == 0 && block_checks > 0 && mutations_caught, os.str()};
}

NodePtr shuffled(const NodePtr& n, Rng& rng) {
    if (n->children.empty()) return n;
    auto copy = std::make_shared<Node>(*n);
    for (auto& ch : copy->children) ch = shuffled(ch, rng);
    rng.shuffle(copy->children);
    return copy;
}

// Empty string when every automaton agrees with the graph of t.
std::string disagreement(const CliqueTerm& t) {
    auto g = eval_term(t);
    for (int p : {1, 2, 3, 5, 7})
        if (run(*automaton_mod_p(p), t).accepted != (g.size() % static_cast<std::size_t>(p) == 0))
            return "modp:" + std::to_string(p);
    if (run(*automaton_connectivity(std::max(1, t.k)), t).accepted != is_connected(g)) return "connected";
    return "";
}

Outcome recognizability(const Corpus& c) {
    Failures fails;
    const std::size_t random_count = 500;
    std::vector<CliqueTerm> terms(random_count);
    for (std::size_t i = 0; i < random_count; ++i) {
        Rng rng(Rng(303).split(i));
        int k = rng.range(1, 4);
        terms[i] = random_term(k, static_cast<std::size_t>(rng.range(0, 40)), rng);
    }
    std::atomic<std::size_t> connected{0};
    parallel_for(random_count, [&](std::size_t i) {
        if (auto d = disagreement(terms[i]); !d.empty()) fails.add("random term " + std::to_string(i) + " " + d);
        connected += is_connected(eval_term(terms[i]));
    });
    parallel_for(c.results.size(), [&](std::size_t i) {
        if (auto d = disagreement(c.results[i].term); !d.empty()) fails.add("corpus term " + std::to_string(i) + " " + d);
    });
    std::atomic<std::size_t> moved{0};
    parallel_for(200, [&](std::size_t i) {
        Rng rng(Rng(404).split(i));
        const auto& t = terms[i];
        CliqueTerm s{t.k, shuffled(t.root, rng)};
        auto conn = automaton_connectivity(std::max(1, t.k));
        auto mod = automaton_mod_p(3);
        if (run(*conn, t).state != run(*conn, s).state || run(*mod, t).state != run(*mod, s).state) ++moved;
    });
    std::ostringstream os;
    os << random_count << " random terms (" << connected << " connected) and " << c.results.size()
       << " decomposer outputs agree; " << moved << " of 200 shuffled terms changed state";
    if (fails.count()) os << "; " << fails.summary();
    return {fails.count() == 0 && moved == 0, os.str()};
}

}  // namespace

int main() {
    bool all = true;
    auto report = [&](int id, const char* name, const std::function<Outcome()>& body) {
        auto start = Clock::now();
        Outcome o;
        try {
            o = body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        all = all && o.pass;
        std::cout << (o.pass ? "PASS " : "FAIL ") << id << " " << name << ": " << o.detail << " [" << seconds_since(start)
                  << " s]" << std::endl;
    };

    Corpus corpus = build_corpus();
    report(1, "example reproduction", example_reproduction);
    report(2, "decomposition soundness", [&] { return decomposition_soundness(corpus); });
    report(3, "width plateau", width_plateau);
    report(4, "linear embedding", [&] { return linear_embedding(corpus); });
    report(5, "reduced homomorphism", reduced_homomorphism);
    report(6, "congruence", congruence);
    report(7, "factorisation forests", [&] { return forests(corpus); });
    report(8, "order lemma", order_lemma);
    report(9, "recognizability", [&] { return recognizability(corpus); });
    return all ? 0 : 1;
}
