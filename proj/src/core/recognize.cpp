#include "recognize.hpp"

#include <charconv>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "error.hpp"
#include "word.hpp"

namespace cwf {

std::string TermAutomaton::describe(const AutomatonState& s) const {
    std::ostringstream os;
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << s[i];
    return os.str();
}

namespace {

class ModCounter : public TermAutomaton {
public:
    explicit ModCounter(int p) : p_(static_cast<std::uint32_t>(p)) {}
    std::string name() const override { return "modp:" + std::to_string(p_); }
    int max_color() const override { return 1 << 30; }
    AutomatonState empty() const override { return {0}; }
    AutomatonState constant(int) const override { return {1 % p_}; }
    AutomatonState recolor(const std::vector<ColorPair>&, const AutomatonState& s) const override { return s; }
    AutomatonState join_unit(const std::vector<ColorPair>&) const override { return {0}; }
    AutomatonState join_step(const std::vector<ColorPair>&, const AutomatonState& acc,
                             const AutomatonState& child) const override {
        return {(acc[0] + child[0]) % p_};
    }
    bool accepting(const AutomatonState& s) const override { return s[0] == 0; }

private:
    std::uint32_t p_;
};

using Signatures = std::map<std::uint32_t, std::uint32_t>;  // color mask -> capped count

Signatures unpack(const AutomatonState& s) {
    Signatures m;
    for (std::size_t i = 0; i + 1 < s.size(); i += 2) m[s[i]] = s[i + 1];
    return m;
}

AutomatonState pack(const Signatures& m) {
    AutomatonState s;
    for (auto [mask, count] : m) {
        s.push_back(mask);
        s.push_back(count);
    }
    return s;
}

void add(Signatures& m, std::uint32_t mask, std::uint32_t count) {
    auto& c = m[mask];
    c = std::min<std::uint32_t>(2, c + count);
}

std::uint32_t bit(int color) { return std::uint32_t{1} << (color - 1); }

class Connectivity : public TermAutomaton {
public:
    explicit Connectivity(int k) : k_(k) {}
    std::string name() const override { return "connected"; }
    int max_color() const override { return k_; }
    AutomatonState empty() const override { return {}; }
    AutomatonState constant(int color) const override { return {bit(color), 1}; }

    AutomatonState recolor(const std::vector<ColorPair>& moves, const AutomatonState& s) const override {
        Signatures out;
        for (auto [mask, count] : unpack(s)) {
            std::uint32_t moved = 0;
            for (int c = 1; c <= k_; ++c)
                if (mask & bit(c)) moved |= bit(apply_moves(moves, c));
            add(out, moved, count);
        }
        return pack(out);
    }

    AutomatonState join_unit(const std::vector<ColorPair>&) const override { return {}; }

    AutomatonState join_step(const std::vector<ColorPair>& pairs, const AutomatonState& acc,
                             const AutomatonState& child) const override {
        auto a = unpack(acc), b = unpack(child);
        std::vector<std::pair<std::uint32_t, std::uint32_t>> nodes(a.begin(), a.end());
        const std::size_t split = nodes.size();
        nodes.insert(nodes.end(), b.begin(), b.end());
        std::vector<std::size_t> parent(nodes.size());
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        // Components merge only across the accumulated side and the new child.
        for (std::size_t i = 0; i < split; ++i)
            for (std::size_t j = split; j < nodes.size(); ++j) {
                bool linked = false;
                for (auto [x, y] : pairs) {
                    auto mi = nodes[i].first, mj = nodes[j].first;
                    linked |= ((mi & bit(x)) && (mj & bit(y))) || ((mi & bit(y)) && (mj & bit(x)));
                }
                if (linked) parent[find(i)] = find(j);
            }
        std::map<std::size_t, std::vector<std::size_t>> groups;
        for (std::size_t i = 0; i < nodes.size(); ++i) groups[find(i)].push_back(i);
        Signatures out;
        for (const auto& [root, members] : groups) {
            if (members.size() == 1) {
                add(out, nodes[members[0]].first, nodes[members[0]].second);
                continue;
            }
            std::uint32_t mask = 0;
            for (auto i : members) mask |= nodes[i].first;
            add(out, mask, 1);
        }
        return pack(out);
    }

    bool accepting(const AutomatonState& s) const override { return s.size() == 2 && s[1] == 1; }

    std::string describe(const AutomatonState& s) const override {
        std::ostringstream os;
        auto m = unpack(s);
        os << "{";
        bool first = true;
        for (auto [mask, count] : m) {
            os << (first ? "" : ", ") << profile_to_text(mask) << (count > 1 ? " x2+" : "");
            first = false;
        }
        os << "}";
        return os.str();
    }

private:
    int k_;
};

void check_color(const TermAutomaton& a, int c) {
    if (c < 1 || c > a.max_color())
        throw InputError("color " + std::to_string(c) + " is outside the automaton's range 1.." +
                         std::to_string(a.max_color()));
}

AutomatonState eval(const TermAutomaton& a, const Node& n, std::unordered_map<const Node*, AutomatonState>& memo) {
    if (auto it = memo.find(&n); it != memo.end()) return it->second;
    AutomatonState s;
    switch (n.kind) {
        case NodeKind::Empty:
            s = a.empty();
            break;
        case NodeKind::Const:
            check_color(a, n.color);
            s = a.constant(n.color);
            break;
        case NodeKind::Recolor:
            for (auto [x, y] : n.recolor) {
                check_color(a, x);
                check_color(a, y);
            }
            s = a.recolor(n.recolor, eval(a, *n.children[0], memo));
            break;
        case NodeKind::Join:
            for (auto [x, y] : n.pairs) {
                check_color(a, x);
                check_color(a, y);
            }
            s = a.join_unit(n.pairs);
            for (const auto& c : n.children) s = a.join_step(n.pairs, s, eval(a, *c, memo));
            s = a.join_finalize(n.pairs, s);
            break;
    }
    memo.emplace(&n, s);
    return s;
}

}  // namespace

RunResult run(const TermAutomaton& a, const CliqueTerm& t) {
    validate_term(t);
    std::unordered_map<const Node*, AutomatonState> memo;
    RunResult r;
    r.state = eval(a, *t.root, memo);
    r.accepted = a.accepting(r.state);
    return r;
}

std::unique_ptr<TermAutomaton> automaton_mod_p(int p) {
    if (p < 1) throw InputError("modulus p must be at least 1");
    return std::make_unique<ModCounter>(p);
}

std::unique_ptr<TermAutomaton> automaton_connectivity(int k) {
    if (k < 1 || k > 31) throw InputError("connectivity automaton needs 1 <= k <= 31");
    return std::make_unique<Connectivity>(k);
}

std::unique_ptr<TermAutomaton> automaton_from_spec(std::string_view spec, int k) {
    if (spec == "connected") return automaton_connectivity(k);
    if (spec.substr(0, 5) == "modp:") {
        auto digits = spec.substr(5);
        int p = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
        if (ec != std::errc() || ptr != digits.data() + digits.size())
            throw InputError("bad modulus in automaton '" + std::string(spec) + "'");
        return automaton_mod_p(p);
    }
    throw InputError("unknown automaton '" + std::string(spec) + "' (expected modp:<p> or connected)");
}

}  // namespace cwf
