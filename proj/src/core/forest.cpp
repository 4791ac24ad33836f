#include "forest.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <unordered_set>

#include "rng.hpp"

namespace cwf {

std::size_t Forest::depth_of(std::size_t node) const {
    const auto& n = nodes.at(node);
    std::size_t below = 0;
    for (auto c : n.children) below = std::max(below, depth_of(c));
    return below + 1;
}

std::size_t Forest::depth() const { return nodes.empty() ? 0 : depth_of(root); }

std::vector<std::size_t> Forest::leaves(std::size_t node) const {
    std::vector<std::size_t> out;
    std::vector<std::size_t> stack{node};
    while (!stack.empty()) {
        auto x = stack.back();
        stack.pop_back();
        const auto& n = nodes.at(x);
        if (n.kind == ForestKind::Leaf) out.push_back(n.position);
        for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back(*it);
    }
    return out;
}

namespace {

std::vector<int> closure(const std::vector<int>& gens, IdSemigroup& sg, std::size_t cap) {
    std::vector<int> elems;
    std::unordered_set<int> seen;
    auto add = [&](int x) {
        if (!seen.insert(x).second) return;
        if (seen.size() > cap)
            throw InputError("generated subsemigroup exceeds the cap of " + std::to_string(cap) + " elements");
        elems.push_back(x);
    };
    for (int g : gens) add(g);
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (int g : gens) {
            add(sg.multiply(elems[i], g));
            add(sg.multiply(g, elems[i]));
        }
    return elems;
}

void check_associative(const std::vector<int>& elems, IdSemigroup& sg) {
    auto check = [&](int a, int b, int c) {
        if (sg.multiply(sg.multiply(a, b), c) != sg.multiply(a, sg.multiply(b, c)))
            throw InputError("product is not associative on (" + sg.describe(a) + ", " + sg.describe(b) + ", " +
                             sg.describe(c) + ")");
    };
    if (elems.size() <= 50) {
        for (int a : elems)
            for (int b : elems)
                for (int c : elems) check(a, b, c);
        return;
    }
    Rng rng(0x5eed);
    for (int t = 0; t < 1000; ++t)
        check(elems[rng.below(elems.size())], elems[rng.below(elems.size())], elems[rng.below(elems.size())]);
}

// Iterative Tarjan SCC over the graph whose edges are produced by `succ` (indices into elems).
template <typename Succ>
std::vector<int> scc_labels(std::size_t n, Succ succ) {
    std::vector<int> index(n, -1), low(n, 0), label(n, -1);
    std::vector<std::size_t> stack;
    std::vector<bool> on_stack(n, false);
    int counter = 0, labels = 0;
    struct Frame {
        std::size_t v;
        std::vector<std::size_t> out;
        std::size_t next = 0;
    };
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] >= 0) continue;
        std::vector<Frame> call;
        auto enter = [&](std::size_t v) {
            index[v] = low[v] = counter++;
            stack.push_back(v);
            on_stack[v] = true;
            call.push_back({v, succ(v)});
        };
        enter(root);
        while (!call.empty()) {
            auto& f = call.back();
            if (f.next < f.out.size()) {
                auto w = f.out[f.next++];
                if (index[w] < 0) {
                    enter(w);
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            auto v = f.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] == index[v]) {
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    label[w] = labels;
                } while (w != v);
                ++labels;
            }
        }
    }
    return label;
}

std::vector<int> distinct(const std::vector<int>& xs) {
    std::vector<int> out = xs;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

using Items = std::vector<std::size_t>;

// Recursive construction. Sequences handed to smooth() lie in one J-class with every infix
// product in that class; rsmooth() additionally shares one R-class; group() lies in a group H-class.
class Builder {
public:
    Builder(IdSemigroup& sg, const GreenStructure& gs, std::vector<ForestNode>& nodes, std::size_t guard)
        : sg_(sg), gs_(gs), nodes_(nodes), guard_(guard) {}

    std::size_t leaf(std::size_t pos, int image) {
        nodes_.push_back({ForestKind::Leaf, pos, {}, image});
        return nodes_.size() - 1;
    }

    std::size_t run(const Items& items) { return gen(items, 0); }

private:
    IdSemigroup& sg_;
    const GreenStructure& gs_;
    std::vector<ForestNode>& nodes_;
    std::size_t guard_;

    int image(std::size_t n) const { return nodes_[n].image; }
    bool idempotent(int x) { return sg_.multiply(x, x) == x; }

    std::size_t binary(std::size_t a, std::size_t b) {
        int ia = image(a), ib = image(b);
        if (ia == ib && idempotent(ia)) return idem({a, b});
        nodes_.push_back({ForestKind::Binary, 0, {a, b}, sg_.multiply(ia, ib)});
        return nodes_.size() - 1;
    }

    std::size_t idem(Items children) {
        int e = image(children.front());
        nodes_.push_back({ForestKind::Idempotent, 0, std::move(children), e});
        return nodes_.size() - 1;
    }

    std::optional<std::size_t> shortcut(const Items& items) {
        if (items.size() == 1) return items.front();
        int e = image(items.front());
        if (!idempotent(e)) return std::nullopt;
        for (auto x : items)
            if (image(x) != e) return std::nullopt;
        return idem(items);
    }

    void descend(std::size_t level) const {
        if (level > guard_) throw InputError("factorisation did not terminate; the product is likely not associative");
    }

    static Items slice(const Items& xs, std::size_t from, std::size_t to) {
        return Items(xs.begin() + static_cast<long>(from), xs.begin() + static_cast<long>(to));
    }

    std::size_t gen(const Items& items, std::size_t level) {
        descend(level);
        if (auto s = shortcut(items)) return *s;
        int p = image(items.front());
        for (std::size_t i = 1; i < items.size(); ++i) p = sg_.multiply(p, image(items[i]));
        const int target = gs_.j_class.at(p);

        Items xs, tail;
        std::size_t s = 0;
        while (s < items.size()) {
            std::optional<int> acc;
            std::size_t e = s;
            for (; e < items.size(); ++e) {
                int next = acc ? sg_.multiply(*acc, image(items[e])) : image(items[e]);
                if (gs_.j_class.at(next) == target) break;
                acc = next;
            }
            if (e == items.size()) {
                tail = slice(items, s, e);
                break;
            }
            xs.push_back(e == s ? items[e] : binary(gen(slice(items, s, e), level + 1), items[e]));
            s = e + 1;
        }
        if (xs.empty()) throw InputError("factorisation found no element in the J-class of the product");
        std::size_t body = smooth(xs, level + 1);
        return tail.empty() ? body : binary(body, gen(tail, level + 1));
    }

    std::size_t smooth(const Items& xs, std::size_t level) {
        descend(level);
        if (auto s = shortcut(xs)) return *s;
        const int rho = gs_.r_class.at(image(xs.front()));
        Items chunks;
        std::size_t start = 0;
        for (std::size_t i = 1; i <= xs.size(); ++i) {
            if (i < xs.size() && gs_.r_class.at(image(xs[i])) != rho) continue;
            chunks.push_back(i - start == 1 ? xs[start] : binary(xs[start], smooth(slice(xs, start + 1, i), level + 1)));
            start = i;
        }
        return rsmooth(chunks, level + 1);
    }

    std::size_t rsmooth(const Items& ys, std::size_t level) {
        descend(level);
        if (auto s = shortcut(ys)) return *s;
        const int lambda = gs_.l_class.at(image(ys.back()));
        Items chunks;
        std::size_t start = 0;
        for (std::size_t i = 0; i < ys.size(); ++i) {
            if (gs_.l_class.at(image(ys[i])) != lambda) continue;
            chunks.push_back(i == start ? ys[i] : binary(rsmooth(slice(ys, start, i), level + 1), ys[i]));
            start = i + 1;
        }
        return group(chunks, level + 1);
    }

    std::size_t group(const Items& zs, std::size_t level) {
        descend(level);
        if (auto s = shortcut(zs)) return *s;
        std::vector<int> prefix;
        for (auto z : zs) prefix.push_back(prefix.empty() ? image(z) : sg_.multiply(prefix.back(), image(z)));
        const int g = prefix.back();
        std::vector<std::size_t> hits;
        for (std::size_t i = 0; i < zs.size(); ++i)
            if (prefix[i] == g) hits.push_back(i);

        auto closed = [&](std::size_t from, std::size_t last) {
            return from == last ? zs[last] : binary(group(slice(zs, from, last), level + 1), zs[last]);
        };
        std::size_t head = closed(0, hits.front());
        if (hits.size() == 1) return head;
        Items segments;
        for (std::size_t t = 1; t < hits.size(); ++t) segments.push_back(closed(hits[t - 1] + 1, hits[t]));
        return binary(head, segments.size() == 1 ? segments.front() : idem(segments));
    }
};

}  // namespace

GreenStructure green_structure(const std::vector<int>& letters, IdSemigroup& sg, std::size_t cap) {
    GreenStructure gs;
    auto gens = distinct(letters);
    gs.elements = closure(gens, sg, cap);
    const auto& el = gs.elements;
    std::unordered_map<int, std::size_t> pos;
    for (std::size_t i = 0; i < el.size(); ++i) pos.emplace(el[i], i);
    auto right = [&](std::size_t v) {
        std::vector<std::size_t> out;
        for (int g : gens) out.push_back(pos.at(sg.multiply(el[v], g)));
        return out;
    };
    auto left = [&](std::size_t v) {
        std::vector<std::size_t> out;
        for (int g : gens) out.push_back(pos.at(sg.multiply(g, el[v])));
        return out;
    };
    auto both = [&](std::size_t v) {
        auto out = right(v);
        auto l = left(v);
        out.insert(out.end(), l.begin(), l.end());
        return out;
    };
    auto r = scc_labels(el.size(), right);
    auto l = scc_labels(el.size(), left);
    auto j = scc_labels(el.size(), both);
    for (std::size_t i = 0; i < el.size(); ++i) {
        gs.r_class.emplace(el[i], r[i]);
        gs.l_class.emplace(el[i], l[i]);
        gs.j_class.emplace(el[i], j[i]);
    }
    return gs;
}

Forest build_forest(const std::vector<int>& letters, IdSemigroup& sg, std::size_t cap) {
    if (letters.empty()) throw InputError("factorisation of an empty sequence");
    auto gs = green_structure(letters, sg, cap);
    check_associative(gs.elements, sg);
    Forest f;
    f.generated_size = gs.elements.size();
    f.depth_bound = 5 * f.generated_size;
    Builder b(sg, gs, f.nodes, 4 * f.depth_bound + 16);
    Items leaves;
    for (std::size_t i = 0; i < letters.size(); ++i) leaves.push_back(b.leaf(i, letters[i]));
    f.root = b.run(leaves);
    return f;
}

ForestCheck verify_forest(const Forest& f, const std::vector<int>& letters, IdSemigroup& sg) {
    ForestCheck out;
    std::vector<bool> visited(f.nodes.size(), false);
    std::size_t next_leaf = 0;
    auto fail = [&](const std::string& path, const std::string& why) {
        if (out.ok) {
            out.ok = false;
            out.message = "at " + path + ": " + why;
        }
        return false;
    };
    // Returns false on the first violation; images are checked bottom-up.
    auto walk = [&](auto&& self, std::size_t id, const std::string& path) -> bool {
        if (id >= f.nodes.size()) return fail(path, "dangling node index");
        if (visited[id]) return fail(path, "node reached twice");
        visited[id] = true;
        const auto& n = f.nodes[id];
        for (std::size_t c = 0; c < n.children.size(); ++c)
            if (!self(self, n.children[c], path + "/" + std::to_string(c))) return false;
        switch (n.kind) {
            case ForestKind::Leaf:
                if (!n.children.empty()) return fail(path, "leaf with children");
                if (n.position != next_leaf) return fail(path, "leaf position " + std::to_string(n.position + 1) +
                                                                   " where " + std::to_string(next_leaf + 1) + " was expected");
                if (next_leaf >= letters.size()) return fail(path, "more leaves than letters");
                if (n.image != letters[next_leaf]) return fail(path, "leaf image differs from its letter");
                ++next_leaf;
                return true;
            case ForestKind::Binary: {
                if (n.children.size() != 2) return fail(path, "binary node without exactly two children");
                int p = sg.multiply(f.nodes[n.children[0]].image, f.nodes[n.children[1]].image);
                if (n.image != p) return fail(path, "binary image is not the product of its children");
                return true;
            }
            case ForestKind::Idempotent: {
                if (n.children.size() < 2) return fail(path, "idempotent node with fewer than two children");
                for (auto c : n.children)
                    if (f.nodes[c].image != n.image) return fail(path, "idempotent node with differing child images");
                if (sg.multiply(n.image, n.image) != n.image) return fail(path, "idempotent node image is not idempotent");
                return true;
            }
        }
        return fail(path, "unknown node kind");
    };
    if (!walk(walk, f.root, "root")) return out;
    if (next_leaf != letters.size()) fail("root", "forest covers " + std::to_string(next_leaf) + " of " +
                                                      std::to_string(letters.size()) + " letters");
    return out;
}

std::string element_hash(IdSemigroup& sg, int id) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : sg.describe(id)) h = (h ^ ch) * 0x100000001b3ULL;
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string forest_to_text(const Forest& f, IdSemigroup& sg) {
    std::string out;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{f.root, 0}};
    while (!stack.empty()) {
        auto [id, level] = stack.back();
        stack.pop_back();
        const auto& n = f.nodes.at(id);
        out.append(2 * level, ' ');
        switch (n.kind) {
            case ForestKind::Leaf:
                out += "L " + std::to_string(n.position + 1);
                break;
            case ForestKind::Binary:
                out += "B";
                break;
            case ForestKind::Idempotent:
                out += "I " + element_hash(sg, n.image);
                break;
        }
        out += '\n';
        for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back({*it, level + 1});
    }
    return out;
}

}  // namespace cwf
