#include "orderlab.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <sstream>

#include "error.hpp"
#include "gen.hpp"

namespace cwf {

namespace {

template <typename F>
void for_each_bit(const Bits& b, F&& f) {
    for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) f(i);
}

int sign(int x) { return (x > 0) - (x < 0); }

int diff_mod7(int from, int to) { return ((to - from) % 7 + 7) % 7; }

std::string vertex_text(const OrderLabContext& ctx, std::size_t v) {
    std::ostringstream os;
    os << "vertex " << ctx.composed.graph.id_at(v) << " (block " << ctx.block[v] << ", cell "
       << cell_to_text(cell_at(ctx.cell[v], ctx.k)) << ")";
    return os.str();
}

std::string cell_text(const OrderLabContext& ctx, int c) { return cell_to_text(cell_at(c, ctx.k)); }

struct UnionFind {
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
    std::vector<std::size_t> parent;
};

// Social endpoints y != start reachable from start by an H-path whose inner vertices are
// solitary, with the endpoint cells not forming a mixed pair. Every vertex after start must
// pass `allowed`.
Bits solitary_targets(const OrderLabContext& ctx, std::size_t start, const std::function<bool(std::size_t)>& allowed) {
    const std::size_t n = ctx.size();
    Bits targets(n), seen(n);
    std::deque<std::size_t> queue{start};
    seen.set(start);
    while (!queue.empty()) {
        auto p = queue.front();
        queue.pop_front();
        for_each_bit(ctx.h[p], [&](std::size_t y) {
            if (seen.test(y) || !allowed(y)) return;
            if (ctx.social(y)) {
                if (!ctx.mixed(ctx.cell[start], ctx.cell[y])) targets.set(y);
                return;
            }
            seen.set(y);
            queue.push_back(y);
        });
    }
    return targets;
}

// H-component index per social component reached, for the targets above.
std::vector<char> components_hit(const OrderLabContext& ctx, const Bits& targets) {
    std::vector<char> hit(static_cast<std::size_t>(ctx.social_components), 0);
    for_each_bit(targets, [&](std::size_t y) { hit[static_cast<std::size_t>(ctx.social_component[ctx.cell[y]])] = 1; });
    return hit;
}

Bits bfs_within(const OrderLabContext& ctx, std::size_t start, const std::function<bool(std::size_t)>& allowed) {
    Bits seen(ctx.size());
    std::deque<std::size_t> queue{start};
    seen.set(start);
    while (!queue.empty()) {
        auto p = queue.front();
        queue.pop_front();
        for_each_bit(ctx.h[p], [&](std::size_t y) {
            if (seen.test(y) || !allowed(y)) return;
            seen.set(y);
            queue.push_back(y);
        });
    }
    return seen;
}

}  // namespace

int modulus_distance(int a, int b) {
    int d = diff_mod7(a, b);
    return std::min(d, 7 - d);
}

bool OrderLabContext::social(std::size_t v) const {
    auto c = static_cast<std::size_t>(cell[v]);
    return c < social_component.size() && social_component[c] >= 0;
}

bool OrderLabContext::mixed(int c, int d) const {
    return pair_type(cell_at(c, k), cell_at(d, k), phi) == PairType::Mixed;
}

bool OrderLabContext::oriented(int c, int d) const {
    auto a = cell_at(c, k), b = cell_at(d, k);
    return !profile_has(a.profile, phi[b.color - 1]) && profile_has(b.profile, phi[a.color - 1]);
}

void refresh(OrderLabContext& ctx) {
    const std::size_t n = ctx.size();
    ctx.members.clear();
    for (std::size_t v = 0; v < n; ++v) ctx.members.try_emplace(ctx.cell[v], Bits(n)).first->second.set(v);

    ctx.z = positive_pairs(ctx.essential, ctx.phi, ctx.k);
    ctx.h = ctx.g;
    for (auto [c, d] : ctx.z) {
        auto ic = ctx.members.find(c), id = ctx.members.find(d);
        if (ic == ctx.members.end() || id == ctx.members.end()) continue;
        for_each_bit(ic->second, [&](std::size_t v) { ctx.h[v] ^= id->second; });
        if (c != d) for_each_bit(id->second, [&](std::size_t v) { ctx.h[v] ^= ic->second; });
    }
    for (std::size_t v = 0; v < n; ++v) ctx.h[v].reset(v);

    ctx.h_component.assign(n, -1);
    ctx.h_components = 0;
    for (std::size_t v = 0; v < n; ++v) {
        if (ctx.h_component[v] >= 0) continue;
        for_each_bit(bfs_within(ctx, v, [](std::size_t) { return true; }),
                     [&](std::size_t u) { ctx.h_component[u] = ctx.h_components; });
        ++ctx.h_components;
    }

    const auto cells = static_cast<std::size_t>(cell_count(ctx.k));
    UnionFind cell_sets(cells);
    std::vector<char> is_social(cells, 0);
    for (int c : ctx.essential)
        for (int d : ctx.essential)
            if (ctx.mixed(c, d)) {
                is_social[static_cast<std::size_t>(c)] = 1;
                cell_sets.unite(static_cast<std::size_t>(c), static_cast<std::size_t>(d));
            }
    ctx.social_component.assign(cells, -1);
    ctx.social_components = 0;
    std::map<std::size_t, int> label;
    for (std::size_t c = 0; c < cells; ++c) {
        if (!is_social[c]) continue;
        auto [it, fresh] = label.try_emplace(cell_sets.find(c), ctx.social_components);
        if (fresh) ++ctx.social_components;
        ctx.social_component[c] = it->second;
    }

    UnionFind close(static_cast<std::size_t>(ctx.social_components));
    for (std::size_t x = 0; x < n; ++x) {
        if (!ctx.social(x)) continue;
        auto cx = static_cast<std::size_t>(ctx.social_component[ctx.cell[x]]);
        for_each_bit(solitary_targets(ctx, x, [](std::size_t) { return true; }), [&](std::size_t y) {
            close.unite(cx, static_cast<std::size_t>(ctx.social_component[ctx.cell[y]]));
        });
    }
    ctx.cluster.assign(static_cast<std::size_t>(ctx.social_components), -1);
    ctx.clusters = 0;
    std::map<std::size_t, int> cluster_label;
    for (std::size_t c = 0; c < ctx.cluster.size(); ++c) {
        auto [it, fresh] = cluster_label.try_emplace(close.find(c), ctx.clusters);
        if (fresh) ++ctx.clusters;
        ctx.cluster[c] = it->second;
    }
}

OrderLabContext build_context(const std::vector<Derivation>& factors) {
    if (factors.empty()) throw InputError("order lab needs at least one factor");
    auto e = reduced(factors.front());
    for (const auto& f : factors)
        if (reduced(f) != e) throw InputError("factors have different reduced abstractions");
    if (!phi_is_idempotent(e.phi)) throw InputError("the common recoloring is not idempotent");

    auto bp = block_product(factors);
    OrderLabContext ctx;
    ctx.k = factors.front().k();
    ctx.factors = factors;
    ctx.phi = e.phi;
    ctx.essential = e.essential;
    ctx.block = bp.block_of;
    ctx.modulus = bp.modulus;
    ctx.cell.assign(bp.composed.graph.size(), -1);
    for (const auto& [c, vs] : bp.members) for_each_bit(vs, [&](std::size_t v) { ctx.cell[v] = c; });
    ctx.g = bp.composed.graph.rows();
    ctx.composed = std::move(bp.composed);
    refresh(ctx);
    if (zflip(ctx.composed, ctx.z).rows() != ctx.h)
        throw InternalError("flipped block product differs from the flip of the composed derivation");
    return ctx;
}

std::vector<Derivation> renamed_powers(const Derivation& sigma, int n) {
    if (n < 1) throw InputError("power must be at least 1");
    VertexId stride = 1;
    if (!sigma.graph.empty()) stride = sigma.graph.ids().back() - sigma.graph.ids().front() + 1;
    std::vector<Derivation> out;
    for (int s = 0; s < n; ++s) out.push_back(shift_ids(sigma, stride * s));
    return out;
}

bool registry_stable(const Derivation& sigma, int n) {
    auto e = reduced(sigma);
    std::vector<CellPairs> family{positive_pairs(e.essential, e.phi, sigma.k())};
    auto base = abstract(sigma, family);
    auto copies = renamed_powers(sigma, n);
    auto power = copies.front();
    for (int m = 2; m <= n; ++m) {
        power = compose(power, copies[static_cast<std::size_t>(m - 1)]);
        if (abstract(power, family) != base) return false;
    }
    return true;
}

bool fully_idempotent(const Derivation& sigma) {
    auto family = all_z(sigma.k());
    return abstract(product(renamed_powers(sigma, 2)), family) == abstract(sigma, family);
}

std::optional<Derivation> idempotent_power(const Derivation& tau, int n, std::size_t max_vertices) {
    if (tau.graph.empty()) return std::nullopt;
    auto e = reduced(tau);
    auto p = e;
    int power = 1;
    while (!is_idempotent(p)) {
        p = reduced_compose(p, e);
        ++power;
        if (static_cast<std::size_t>(power) * tau.graph.size() > max_vertices) return std::nullopt;
    }
    for (int mult = power; static_cast<std::size_t>(mult) * tau.graph.size() <= max_vertices; mult += power) {
        auto sigma = product(renamed_powers(tau, mult));
        if (registry_stable(sigma, n)) return sigma;
    }
    return std::nullopt;
}

OrderLabContext random_power_context(int k, int n, std::uint64_t seed) {
    if (n < 1 || n > 1000) throw InputError("block count must be in 1..1000");
    Rng rng(seed);
    for (int attempt = 0; attempt < 2000; ++attempt) {
        // Half the candidates come from short words, half are arbitrary derivations, which
        // reach configurations with several social components more often.
        Derivation tau;
        if (rng.chance(0.5)) {
            GenSpec spec;
            spec.k = k;
            spec.length = 2 + rng.below(7);
            spec.seed = rng.next();
            spec.profile_density = 0.3 + 0.4 * rng.unit();
            spec.recolor_weight = 0.1 + 0.4 * rng.unit();
            spec.add_weight = 1.0 - spec.recolor_weight;
            tau = from_word(gen_word(spec));
        } else {
            tau = random_derivation(rng, k, 5, 0, rng.unit());
        }
        if (auto sigma = idempotent_power(tau, n, 8)) return build_context(renamed_powers(*sigma, n));
    }
    throw InternalError("no idempotent power context found for this seed");
}

OrderInterpreter::OrderInterpreter(const OrderLabContext& ctx) : ctx_(ctx), n_(ctx.size()) {}

int OrderInterpreter::partner_of(int c) const {
    for (int d : ctx_.essential)
        if (ctx_.mixed(c, d)) return d;
    return -1;
}

bool OrderInterpreter::is_pivot(std::size_t w, std::size_t u, std::size_t v) const {
    if (w == u || w == v) return false;
    int c = ctx_.cell[u], d = ctx_.cell[w];
    if (ctx_.cell[v] != c || !ctx_.mixed(c, d) || !ctx_.oriented(c, d))
        throw InputError("pivot needs u, v in a cell c and w in a cell d with (c, d) mixed in this orientation");
    return modulus_distance(ctx_.modulus[u], ctx_.modulus[w]) > 1 &&
           modulus_distance(ctx_.modulus[v], ctx_.modulus[w]) > 1 && ctx_.g[u].test(w) && !ctx_.g[v].test(w);
}

bool OrderInterpreter::witnesses_before(int c, int partner, std::size_t u, std::size_t v) const {
    auto it = ctx_.members.find(partner);
    if (it == ctx_.members.end()) return false;
    // Distant vertices of the first cell of an oriented pair precede exactly their neighbours.
    bool c_first = ctx_.oriented(c, partner);
    bool found = false;
    for (auto w = it->second.find_first(); w != Bits::npos && !found; w = it->second.find_next(w)) {
        if (modulus_distance(ctx_.modulus[u], ctx_.modulus[w]) <= 1 ||
            modulus_distance(ctx_.modulus[v], ctx_.modulus[w]) <= 1)
            continue;
        bool au = ctx_.g[u].test(w), av = ctx_.g[v].test(w);
        found = c_first ? (au && !av) : (!au && av);
    }
    return found;
}

const std::vector<signed char>& OrderInterpreter::same_table(int c, int partner) {
    auto key = std::make_pair(c, partner);
    if (auto it = same_.find(key); it != same_.end()) return it->second;
    std::vector<signed char> t(n_ * n_, 0);
    if (auto it = ctx_.members.find(c); it != ctx_.members.end()) {
        const auto& uc = it->second;
        for_each_bit(uc, [&](std::size_t u) {
            for_each_bit(uc, [&](std::size_t v) {
                if (u == v) return;
                signed char r;
                if (witnesses_before(c, partner, u, v))
                    r = -1;
                else if (witnesses_before(c, partner, v, u))
                    r = 1;
                else {
                    int d = diff_mod7(ctx_.modulus[u], ctx_.modulus[v]);
                    r = d == 0 ? 0 : (d <= 3 ? -1 : 1);
                }
                t[u * n_ + v] = r;
            });
        });
    }
    return same_.emplace(key, std::move(t)).first->second;
}

int OrderInterpreter::compare_same_cell(int c, int partner, std::size_t u, std::size_t v) {
    if (ctx_.cell[u] != c || ctx_.cell[v] != c) throw InputError("vertices are not in the given cell");
    if (!ctx_.mixed(c, partner)) throw InputError("partner cell does not form a mixed pair");
    return same_table(c, partner)[u * n_ + v];
}

const std::vector<signed char>& OrderInterpreter::mixed_table(int c, int d) {
    auto key = std::make_pair(c, d);
    if (auto it = mixed_.find(key); it != mixed_.end()) return it->second;
    std::vector<signed char> t(n_ * n_, 0);
    auto ic = ctx_.members.find(c), id = ctx_.members.find(d);
    if (ic != ctx_.members.end() && id != ctx_.members.end()) {
        const auto& within_d = same_table(d, c);
        for_each_bit(ic->second, [&](std::size_t u) {
            int a = ctx_.modulus[u];
            for_each_bit(id->second, [&](std::size_t v) {
                int b = ctx_.modulus[v];
                signed char r = 0;
                if (modulus_distance(a, b) > 1) {
                    r = ctx_.g[u].test(v) ? -1 : 1;
                } else {
                    bool before = false, after = false;
                    for (auto w = id->second.find_first(); w != Bits::npos && !before && !after;
                         w = id->second.find_next(w)) {
                        if (modulus_distance(a, ctx_.modulus[w]) <= 1) continue;
                        bool uw = ctx_.g[u].test(w);
                        before = uw && (w == v || within_d[w * n_ + v] <= 0);
                        after = !uw && (w == v || within_d[v * n_ + w] <= 0);
                    }
                    if (before)
                        r = -1;
                    else if (after)
                        r = 1;
                    else {
                        int dm = diff_mod7(a, b);
                        r = dm == 1 ? -1 : (dm == 6 ? 1 : 0);
                    }
                }
                t[u * n_ + v] = r;
            });
        });
    }
    return mixed_.emplace(key, std::move(t)).first->second;
}

int OrderInterpreter::compare_mixed(int c, int d, std::size_t u, std::size_t v) {
    if (ctx_.cell[u] != c || ctx_.cell[v] != d) throw InputError("vertices are not in the given cells");
    if (!ctx_.mixed(c, d)) throw InputError("cells do not form a mixed pair");
    if (ctx_.oriented(c, d)) return mixed_table(c, d)[u * n_ + v];
    return -mixed_table(d, c)[v * n_ + u];
}

const Bits& OrderInterpreter::component_reach(std::size_t u) {
    if (auto it = component_reach_.find(u); it != component_reach_.end()) return it->second;
    const int c = ctx_.cell[u];
    const int comp = ctx_.social_component[static_cast<std::size_t>(c)];
    Bits reach(n_);
    const auto& uc = ctx_.members.at(c);
    for_each_bit(uc, [&](std::size_t v) {
        if (v == u || compare_same_cell(c, partner_of(c), u, v) <= 0) reach.set(v);
    });
    // Chain the pairwise orders along a breadth-first tree of the social component.
    std::map<int, Bits> frontier{{c, Bits(n_)}};
    frontier[c].set(u);
    std::deque<int> queue{c};
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        for (int y : ctx_.essential) {
            if (frontier.count(y) || ctx_.social_component[static_cast<std::size_t>(y)] != comp || !ctx_.mixed(x, y))
                continue;
            Bits next(n_);
            const auto& uy = ctx_.members.at(y);
            for_each_bit(frontier[x], [&](std::size_t a) {
                for_each_bit(uy, [&](std::size_t b) {
                    if (!next.test(b) && compare_mixed(x, y, a, b) <= 0) next.set(b);
                });
            });
            reach |= next;
            frontier.emplace(y, std::move(next));
            queue.push_back(y);
        }
    }
    return component_reach_.emplace(u, std::move(reach)).first->second;
}

bool OrderInterpreter::component_leq(std::size_t u, std::size_t v) {
    if (!ctx_.social(u) || !ctx_.social(v) ||
        ctx_.social_component[static_cast<std::size_t>(ctx_.cell[u])] !=
            ctx_.social_component[static_cast<std::size_t>(ctx_.cell[v])])
        throw InputError("component order needs social vertices of one component");
    return component_reach(u).test(v);
}

const Bits& OrderInterpreter::cluster_reach(std::size_t u) {
    if (auto it = cluster_reach_.find(u); it != cluster_reach_.end()) return it->second;
    auto links = [&](std::size_t x) -> const Bits& {
        if (auto it = same_modulus_links_.find(x); it != same_modulus_links_.end()) return it->second;
        int m = ctx_.modulus[x];
        return same_modulus_links_
            .emplace(x, solitary_targets(ctx_, x, [&](std::size_t y) { return ctx_.modulus[y] == m; }))
            .first->second;
    };
    Bits reach(n_);
    reach.set(u);
    std::deque<std::size_t> queue{u};
    while (!queue.empty()) {
        auto x = queue.front();
        queue.pop_front();
        Bits next = component_reach(x) | links(x);
        next -= reach;
        reach |= next;
        for_each_bit(next, [&](std::size_t y) { queue.push_back(y); });
    }
    return cluster_reach_.emplace(u, std::move(reach)).first->second;
}

bool OrderInterpreter::cluster_leq(std::size_t u, std::size_t v) {
    if (!ctx_.social(u) || !ctx_.social(v)) throw InputError("cluster order needs social vertices");
    return cluster_reach(u).test(v);
}

std::vector<std::size_t> OrderInterpreter::component_vertices(int f) const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < n_; ++v)
        if (ctx_.h_component[v] == f) out.push_back(v);
    return out;
}

std::vector<Bits> OrderInterpreter::block_order_in_component(int f) {
    auto verts = component_vertices(f);
    const std::size_t m = verts.size();
    std::vector<Bits> rows(m, Bits(m));
    auto near = [&](std::size_t y, int mod) { return modulus_distance(ctx_.modulus[y], mod) <= 1; };

    auto social_it = std::find_if(verts.begin(), verts.end(), [&](std::size_t v) { return ctx_.social(v); });
    if (social_it != verts.end()) {
        auto cluster_of = [&](std::size_t v) {
            return ctx_.cluster[static_cast<std::size_t>(ctx_.social_component[static_cast<std::size_t>(ctx_.cell[v])])];
        };
        const int home = cluster_of(*social_it);
        std::vector<std::size_t> a;
        for (std::size_t v = 0; v < n_; ++v)
            if (ctx_.social(v) && cluster_of(v) == home) a.push_back(v);
        auto strictly = [&](std::size_t x, std::size_t y) { return cluster_leq(x, y) && !cluster_leq(y, x); };
        // The latest vertex of the cluster strictly before x, or the earliest strictly after.
        auto adjacent_block = [&](std::size_t x, bool before) -> std::optional<std::size_t> {
            std::vector<std::size_t> side;
            for (auto y : a)
                if (before ? strictly(y, x) : strictly(x, y)) side.push_back(y);
            for (auto y : side) {
                bool extreme = std::none_of(side.begin(), side.end(),
                                            [&](std::size_t z) { return before ? strictly(y, z) : strictly(z, y); });
                if (extreme) return y;
            }
            return std::nullopt;
        };

        std::vector<std::optional<std::size_t>> rep(m);
        for (std::size_t i = 0; i < m; ++i) {
            auto u = verts[i];
            if (ctx_.social(u)) {
                rep[i] = u;
                continue;
            }
            const int mu = ctx_.modulus[u];
            auto targets = solitary_targets(ctx_, u, [&](std::size_t y) { return near(y, mu); });
            auto x = targets.find_first();
            while (x != Bits::npos && cluster_of(x) != home) x = targets.find_next(x);
            if (x == Bits::npos) continue;
            int d = diff_mod7(mu, ctx_.modulus[x]);
            rep[i] = d == 0 ? std::optional<std::size_t>(x) : adjacent_block(x, d == 1);
        }
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                if (i == j || (rep[i] && rep[j] && cluster_leq(*rep[i], *rep[j]))) rows[i].set(j);
        return rows;
    }

    // No social vertex: same block means same modulus and an H-path over nearby moduli; the
    // first step out of u's block on any path to v says which way v lies.
    std::vector<std::size_t> local(n_, m);
    for (std::size_t i = 0; i < m; ++i) local[verts[i]] = i;
    for (std::size_t i = 0; i < m; ++i) {
        auto u = verts[i];
        const int mu = ctx_.modulus[u];
        Bits same = bfs_within(ctx_, u, [&](std::size_t y) { return near(y, mu); });
        for (std::size_t y = 0; y < n_; ++y)
            if (same.test(y) && ctx_.modulus[y] != mu) same.reset(y);

        std::vector<std::size_t> parent(n_, n_), order{u};
        std::vector<int> verdict(n_, 0);  // per reached vertex, -1 after u's block, 1 before, 0 same
        parent[u] = u;
        for (std::size_t q = 0; q < order.size(); ++q) {
            auto p = order[q];
            for_each_bit(ctx_.h[p], [&](std::size_t y) {
                if (parent[y] != n_) return;
                parent[y] = p;
                if (same.test(y))
                    verdict[y] = 0;
                else if (same.test(p))
                    verdict[y] = ctx_.modulus[y] == (mu + 1) % 7 ? -1 : (ctx_.modulus[y] == (mu + 6) % 7 ? 1 : 2);
                else
                    verdict[y] = verdict[p];
                order.push_back(y);
            });
        }
        for (auto v : order)
            if (local[v] < m && verdict[v] <= 0) rows[i].set(local[v]);
    }
    return rows;
}

const std::vector<std::string>& claim_names() {
    static const std::vector<std::string> names{
        "pair-types",      "overall-cell",     "flip-equality", "distant-adjacency",
        "pivot-soundness", "pivot-existence",  "mixed-order",   "component-order",
        "neighboring-blocks", "local-solitary", "local-connection", "local-attachment",
        "one-cluster",     "cluster-order",    "solitary-locality", "block-order"};
    return names;
}

namespace {

class Recorder {
public:
    explicit Recorder(ClaimResult& r) : r_(r) {}
    template <typename Describe>
    void check(bool ok, Describe&& describe) {
        ++r_.checks;
        if (!ok && r_.passed) {
            r_.passed = false;
            r_.counterexample = describe();
        }
    }

private:
    ClaimResult& r_;
};

std::string order_word(bool leq) { return leq ? "precedes or equals" : "comes after"; }

void run_claim(const std::string& name, const OrderLabContext& ctx, OrderInterpreter& interp, Recorder& rec) {
    const std::size_t n = ctx.size();
    const int k = ctx.k;
    const int blocks = ctx.blocks();
    auto truth = [&](std::size_t u, std::size_t v) { return sign(ctx.block[u] - ctx.block[v]); };
    auto members_of = [&](int c) -> Bits {
        auto it = ctx.members.find(c);
        return it == ctx.members.end() ? Bits(n) : it->second;
    };
    // Ordered mixed pairs of essential cells present in the context.
    std::vector<std::pair<int, int>> mixed_pairs;
    for (int c : ctx.essential)
        for (int d : ctx.essential)
            if (ctx.mixed(c, d)) mixed_pairs.emplace_back(c, d);

    if (name == "pair-types") {
        for (int c = 0; c < cell_count(k); ++c) {
            auto cc = cell_at(c, k);
            rec.check(pair_type(cc, cc, ctx.phi) != PairType::Mixed,
                      [&] { return "cell " + cell_text(ctx, c) + " is mixed with itself"; });
            Cell recolored{ctx.phi[cc.color - 1], cc.profile};
            Cell pulled{cc.color, preimage(ctx.phi, cc.profile)};
            for (int d = 0; d < cell_count(k); ++d) {
                auto dd = cell_at(d, k);
                auto t = pair_type(cc, dd, ctx.phi);
                rec.check(t == pair_type(recolored, dd, ctx.phi) && t == pair_type(pulled, dd, ctx.phi), [&] {
                    return "type of (" + cell_text(ctx, c) + ", " + cell_text(ctx, d) + ") changes under projection";
                });
            }
        }
    } else if (name == "overall-cell") {
        for (std::size_t v = 0; v < n; ++v) {
            auto c = cell_at(ctx.cell[v], k);
            Cell expected{ctx.block[v] == blocks ? c.color : ctx.phi[c.color - 1],
                          ctx.block[v] == 1 ? c.profile : preimage(ctx.phi, c.profile)};
            auto actual = ctx.composed.cell_at_index(v);
            rec.check(actual == expected, [&] {
                return vertex_text(ctx, v) + " has cell " + cell_to_text(actual) + " in the product, expected " +
                       cell_to_text(expected);
            });
        }
    } else if (name == "flip-equality") {
        auto expected = zflip(ctx.composed, ctx.z).rows();
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v)
                rec.check(expected[u].test(v) == ctx.h[u].test(v), [&] {
                    return "pair " + vertex_text(ctx, u) + ", " + vertex_text(ctx, v) +
                           " differs from the flip of the product";
                });
    } else if (name == "distant-adjacency") {
        for (auto [c, d] : mixed_pairs) {
            if (!ctx.oriented(c, d)) continue;
            for_each_bit(members_of(c), [&](std::size_t u) {
                for_each_bit(members_of(d), [&](std::size_t v) {
                    if (std::abs(ctx.block[u] - ctx.block[v]) <= 1) return;
                    bool leq = ctx.block[u] <= ctx.block[v];
                    rec.check(leq == ctx.g[u].test(v), [&] {
                        return vertex_text(ctx, u) + " " + order_word(leq) + " " + vertex_text(ctx, v) +
                               " but adjacency says otherwise";
                    });
                });
            });
        }
    } else if (name == "pivot-soundness" || name == "pivot-existence") {
        bool existence = name == "pivot-existence";
        for (auto [c, d] : mixed_pairs) {
            auto uc = members_of(c);
            for_each_bit(uc, [&](std::size_t u) {
                for_each_bit(uc, [&](std::size_t v) {
                    if (u == v) return;
                    if (existence) {
                        if (ctx.block[u] < ctx.block[v] - 3)
                            rec.check(interp.witnesses_before(c, d, u, v), [&] {
                                return "no pivot in " + cell_text(ctx, d) + " for " + vertex_text(ctx, u) + ", " +
                                       vertex_text(ctx, v);
                            });
                    } else if (interp.witnesses_before(c, d, u, v)) {
                        rec.check(ctx.block[u] < ctx.block[v], [&] {
                            return "pivot in " + cell_text(ctx, d) + " puts " + vertex_text(ctx, u) + " before " +
                                   vertex_text(ctx, v);
                        });
                    }
                });
            });
        }
    } else if (name == "mixed-order") {
        for (auto [c, d] : mixed_pairs) {
            auto uc = members_of(c), ud = members_of(d);
            for_each_bit(uc, [&](std::size_t u) {
                for_each_bit(uc, [&](std::size_t v) {
                    int got = interp.compare_same_cell(c, d, u, v);
                    rec.check(got == truth(u, v), [&] {
                        return "within " + cell_text(ctx, c) + ": " + vertex_text(ctx, u) + " vs " +
                               vertex_text(ctx, v) + " interpreted as " + std::to_string(got);
                    });
                });
                for_each_bit(ud, [&](std::size_t v) {
                    int got = interp.compare_mixed(c, d, u, v);
                    rec.check(got == truth(u, v), [&] {
                        return vertex_text(ctx, u) + " vs " + vertex_text(ctx, v) + " interpreted as " +
                               std::to_string(got);
                    });
                });
            });
        }
    } else if (name == "component-order" || name == "cluster-order") {
        bool by_cluster = name == "cluster-order";
        auto group = [&](std::size_t v) {
            int comp = ctx.social_component[static_cast<std::size_t>(ctx.cell[v])];
            return by_cluster ? ctx.cluster[static_cast<std::size_t>(comp)] : comp;
        };
        std::vector<std::size_t> social;
        for (std::size_t v = 0; v < n; ++v)
            if (ctx.social(v)) social.push_back(v);
        for (auto u : social)
            for (auto v : social) {
                if (group(u) != group(v)) continue;
                bool got = by_cluster ? interp.cluster_leq(u, v) : interp.component_leq(u, v);
                rec.check(got == (ctx.block[u] <= ctx.block[v]), [&] {
                    return "interpreted " + vertex_text(ctx, u) + " " + order_word(got) + " " + vertex_text(ctx, v);
                });
            }
    } else if (name == "neighboring-blocks" || name == "local-solitary") {
        bool solitary_only = name == "local-solitary";
        for (std::size_t u = 0; u < n; ++u)
            for_each_bit(ctx.h[u], [&](std::size_t v) {
                if (v < u) return;
                bool relevant = solitary_only ? (!ctx.social(u) || !ctx.social(v)) : !ctx.mixed(ctx.cell[u], ctx.cell[v]);
                if (!relevant) return;
                rec.check(std::abs(ctx.block[u] - ctx.block[v]) <= 1, [&] {
                    return "flipped edge " + vertex_text(ctx, u) + " - " + vertex_text(ctx, v) + " spans distant blocks";
                });
            });
    } else if (name == "local-connection") {
        auto comps = static_cast<std::size_t>(ctx.social_components);
        std::vector<std::vector<char>> close(comps, std::vector<char>(comps, 0));
        for (std::size_t x = 0; x < n; ++x) {
            if (!ctx.social(x)) continue;
            auto cx = static_cast<std::size_t>(ctx.social_component[static_cast<std::size_t>(ctx.cell[x])]);
            auto hit = components_hit(ctx, solitary_targets(ctx, x, [](std::size_t) { return true; }));
            for (std::size_t d = 0; d < comps; ++d)
                if (hit[d] && d != cx) close[cx][d] = 1;
        }
        for (std::size_t c = 0; c < comps; ++c)
            for (std::size_t d = 0; d < comps; ++d) {
                if (!close[c][d]) continue;
                for (int s = 1; s <= blocks; ++s) {
                    bool found = false;
                    for (std::size_t x = 0; x < n && !found; ++x) {
                        if (ctx.block[x] != s || !ctx.social(x) ||
                            static_cast<std::size_t>(ctx.social_component[static_cast<std::size_t>(ctx.cell[x])]) != c)
                            continue;
                        auto hit = components_hit(
                            ctx, solitary_targets(ctx, x, [&](std::size_t y) { return ctx.block[y] == s; }));
                        found = hit[d] != 0;
                    }
                    rec.check(found, [&] {
                        return "close social components " + std::to_string(c) + " and " + std::to_string(d) +
                               " have no solitary path inside block " + std::to_string(s);
                    });
                }
            }
    } else if (name == "local-attachment") {
        for (std::size_t u = 0; u < n; ++u) {
            if (ctx.social(u)) continue;
            int s = ctx.block[u];
            auto global = components_hit(ctx, solitary_targets(ctx, u, [](std::size_t) { return true; }));
            auto local = components_hit(
                ctx, solitary_targets(ctx, u, [&](std::size_t y) { return std::abs(ctx.block[y] - s) <= 1; }));
            for (std::size_t d = 0; d < global.size(); ++d)
                rec.check(!global[d] || local[d], [&] {
                    return vertex_text(ctx, u) + " reaches social component " + std::to_string(d) +
                           " only through distant blocks";
                });
        }
    } else if (name == "one-cluster") {
        std::vector<int> seen(static_cast<std::size_t>(ctx.h_components), -1);
        for (std::size_t v = 0; v < n; ++v) {
            if (!ctx.social(v)) continue;
            int cl = ctx.cluster[static_cast<std::size_t>(ctx.social_component[static_cast<std::size_t>(ctx.cell[v])])];
            auto& slot = seen[static_cast<std::size_t>(ctx.h_component[v])];
            rec.check(slot < 0 || slot == cl, [&] {
                return "H-component of " + vertex_text(ctx, v) + " meets clusters " + std::to_string(slot) + " and " +
                       std::to_string(cl);
            });
            slot = cl;
        }
    } else if (name == "solitary-locality") {
        for (int f = 0; f < ctx.h_components; ++f) {
            auto verts = interp.component_vertices(f);
            if (std::any_of(verts.begin(), verts.end(), [&](std::size_t v) { return ctx.social(v); })) continue;
            for (auto u : verts) {
                int s = ctx.block[u];
                auto near = bfs_within(ctx, u, [&](std::size_t y) { return std::abs(ctx.block[y] - s) <= 1; });
                for (auto v : verts)
                    if (ctx.block[v] == s)
                        rec.check(near.test(v), [&] {
                            return vertex_text(ctx, u) + " and " + vertex_text(ctx, v) +
                                   " are joined only through distant blocks";
                        });
            }
        }
    } else if (name == "block-order") {
        for (int f = 0; f < ctx.h_components; ++f) {
            auto verts = interp.component_vertices(f);
            auto rows = interp.block_order_in_component(f);
            for (std::size_t i = 0; i < verts.size(); ++i)
                for (std::size_t j = 0; j < verts.size(); ++j) {
                    bool got = rows[i].test(j);
                    rec.check(got == (ctx.block[verts[i]] <= ctx.block[verts[j]]), [&] {
                        return "interpreted " + vertex_text(ctx, verts[i]) + " " + order_word(got) + " " +
                               vertex_text(ctx, verts[j]);
                    });
                }
        }
    }
}

}  // namespace

std::vector<ClaimResult> claims_suite(const OrderLabContext& ctx, const std::vector<std::string>& selection) {
    const auto& all = claim_names();
    const auto& chosen = selection.empty() ? all : selection;
    for (const auto& name : chosen)
        if (std::find(all.begin(), all.end(), name) == all.end()) throw InputError("unknown claim '" + name + "'");
    OrderInterpreter interp(ctx);
    std::vector<ClaimResult> out;
    for (const auto& name : chosen) {
        ClaimResult r;
        r.name = name;
        Recorder rec(r);
        run_claim(name, ctx, interp, rec);
        out.push_back(std::move(r));
    }
    return out;
}

const char* mutation_name(Mutation m) {
    switch (m) {
        case Mutation::FlipEdge: return "flip-edge";
        case Mutation::RecellVertex: return "recell-vertex";
        case Mutation::ReverseBlocks: return "reverse-blocks";
    }
    return "?";
}

OrderLabContext mutate(const OrderLabContext& ctx, Mutation m, Rng& rng) {
    const std::size_t n = ctx.size();
    auto out = ctx;
    switch (m) {
        case Mutation::FlipEdge: {
            if (n < 2) throw InputError("flip-edge needs two vertices");
            std::size_t u = rng.below(n), v = rng.below(n - 1);
            if (v >= u) ++v;
            out.g[u].flip(v);
            out.g[v].flip(u);
            break;
        }
        case Mutation::RecellVertex: {
            std::vector<std::size_t> first;
            for (std::size_t v = 0; v < n; ++v)
                if (ctx.block[v] == 1) first.push_back(v);
            if (first.empty()) throw InputError("recell-vertex needs a vertex in the first block");
            auto v = first[rng.below(first.size())];
            auto c = cell_at(ctx.cell[v], ctx.k);
            c.profile ^= 1u;
            out.cell[v] = cell_index(c, ctx.k);
            break;
        }
        case Mutation::ReverseBlocks:
            for (auto& b : out.block) b = ctx.blocks() + 1 - b;
            break;
    }
    refresh(out);
    return out;
}

}  // namespace cwf
