#include "term.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>
#include <unordered_map>

#include "error.hpp"

namespace cwf {

NodePtr make_empty() {
    static const NodePtr empty = std::make_shared<const Node>();
    return empty;
}

NodePtr make_const(int color, VertexId id) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Const;
    n->color = color;
    n->id = id;
    return n;
}

NodePtr make_recolor(std::vector<ColorPair> moves, NodePtr child) {
    if (!child) throw InternalError("recolor without child");
    if (child->kind == NodeKind::Empty) return child;
    std::erase_if(moves, [](const ColorPair& m) { return m.first == m.second; });
    std::sort(moves.begin(), moves.end());
    for (std::size_t i = 1; i < moves.size(); ++i)
        if (moves[i].first == moves[i - 1].first) {
            if (moves[i] != moves[i - 1]) throw InputError("recolor map assigns two images to one color");
        }
    moves.erase(std::unique(moves.begin(), moves.end()), moves.end());
    if (moves.empty()) return child;
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Recolor;
    n->recolor = std::move(moves);
    n->children.push_back(std::move(child));
    return n;
}

NodePtr make_join(std::vector<ColorPair> pairs, std::vector<NodePtr> children) {
    if (children.empty()) throw InputError("join needs at least one child");
    for (auto& p : pairs)
        if (p.first > p.second) std::swap(p.first, p.second);
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Join;
    n->pairs = std::move(pairs);
    n->children = std::move(children);
    return n;
}

int apply_moves(const std::vector<ColorPair>& moves, int c) {
    auto it = std::lower_bound(moves.begin(), moves.end(), ColorPair{c, 0});
    if (it != moves.end() && it->first == c) return it->second;
    return c;
}

namespace {

template <typename F>
void visit(const NodePtr& n, F&& f) {
    f(*n);
    for (const auto& c : n->children) visit(c, f);
}

}  // namespace

int max_color(const NodePtr& n) {
    int m = 0;
    visit(n, [&](const Node& x) {
        m = std::max(m, x.color);
        for (auto [a, b] : x.recolor) m = std::max({m, a, b});
        for (auto [a, b] : x.pairs) m = std::max({m, a, b});
    });
    return m;
}

void validate_term(const CliqueTerm& t) {
    if (t.k < 1) throw InputError("term k must be positive");
    if (!t.root) throw InputError("term has no root");
    std::set<VertexId> ids;
    visit(t.root, [&](const Node& x) {
        auto in_range = [&](int c) { return c >= 1 && c <= t.k; };
        switch (x.kind) {
            case NodeKind::Empty:
                if (!x.children.empty()) throw InputError("empty node with children");
                break;
            case NodeKind::Const:
                if (!in_range(x.color)) throw InputError("constant color " + std::to_string(x.color) + " outside [1," + std::to_string(t.k) + "]");
                if (!ids.insert(x.id).second) throw InputError("vertex id " + std::to_string(x.id) + " used by two leaves");
                break;
            case NodeKind::Recolor:
                if (x.children.size() != 1) throw InputError("recolor must have exactly one child");
                for (auto [a, b] : x.recolor)
                    if (!in_range(a) || !in_range(b)) throw InputError("recolor entry outside [1,k]");
                break;
            case NodeKind::Join:
                if (x.children.empty()) throw InputError("join must have at least one child");
                for (auto [a, b] : x.pairs)
                    if (!in_range(a) || !in_range(b)) throw InputError("join pair color outside [1,k]");
                break;
        }
    });
}

namespace {

struct FlatGraph {
    std::vector<VertexId> ids;
    std::vector<int> colors;
    std::vector<std::pair<VertexId, VertexId>> edges;
};

void eval_into(const Node& n, FlatGraph& out) {
    switch (n.kind) {
        case NodeKind::Empty:
            return;
        case NodeKind::Const:
            out.ids.push_back(n.id);
            out.colors.push_back(n.color);
            return;
        case NodeKind::Recolor: {
            std::size_t start = out.ids.size();
            eval_into(*n.children[0], out);
            for (std::size_t i = start; i < out.ids.size(); ++i) out.colors[i] = apply_moves(n.recolor, out.colors[i]);
            return;
        }
        case NodeKind::Join: {
            std::vector<std::pair<std::size_t, std::size_t>> ranges;
            for (const auto& c : n.children) {
                std::size_t start = out.ids.size();
                eval_into(*c, out);
                ranges.emplace_back(start, out.ids.size());
            }
            if (n.pairs.empty() || ranges.size() < 2) return;
            // Per child, vertices bucketed by color.
            std::vector<std::unordered_map<int, std::vector<std::size_t>>> buckets(ranges.size());
            for (std::size_t ci = 0; ci < ranges.size(); ++ci)
                for (std::size_t v = ranges[ci].first; v < ranges[ci].second; ++v) buckets[ci][out.colors[v]].push_back(v);
            auto connect = [&](std::size_t ci, int a, std::size_t cj, int b) {
                auto ia = buckets[ci].find(a);
                auto jb = buckets[cj].find(b);
                if (ia == buckets[ci].end() || jb == buckets[cj].end()) return;
                for (auto u : ia->second)
                    for (auto v : jb->second) out.edges.emplace_back(out.ids[u], out.ids[v]);
            };
            for (std::size_t ci = 0; ci < ranges.size(); ++ci)
                for (std::size_t cj = ci + 1; cj < ranges.size(); ++cj)
                    for (auto [a, b] : n.pairs) {
                        connect(ci, a, cj, b);
                        if (a != b) connect(ci, b, cj, a);
                    }
            return;
        }
    }
}

}  // namespace

ColoredGraph eval_term(const CliqueTerm& t) {
    validate_term(t);
    FlatGraph flat;
    eval_into(*t.root, flat);
    GraphBuilder b(t.k);
    for (std::size_t i = 0; i < flat.ids.size(); ++i) b.add_vertex(flat.ids[i], flat.colors[i]);
    for (auto [a, c] : flat.edges) b.add_edge(a, c);
    return b.build();
}

int term_width(const NodePtr& n) {
    std::set<int> used;
    visit(n, [&](const Node& x) {
        if (x.kind == NodeKind::Const) used.insert(x.color);
        for (auto [a, b] : x.recolor) used.insert({a, b});
        for (auto [a, b] : x.pairs) used.insert({a, b});
    });
    return static_cast<int>(used.size());
}

std::size_t term_depth(const NodePtr& n) {
    std::size_t d = 0;
    for (const auto& c : n->children) d = std::max(d, term_depth(c));
    return d + 1;
}

std::size_t term_size(const NodePtr& n) {
    std::size_t s = 1;
    for (const auto& c : n->children) s += term_size(c);
    return s;
}

std::vector<VertexId> leaf_ids(const NodePtr& n) {
    std::vector<VertexId> ids;
    visit(n, [&](const Node& x) {
        if (x.kind == NodeKind::Const) ids.push_back(x.id);
    });
    return ids;
}

namespace {

// Memoised bottom-up sets keyed by node address.
template <typename T>
class NodeMemo {
public:
    explicit NodeMemo(std::function<T(const NodePtr&, NodeMemo&)> f) : f_(std::move(f)) {}
    const T& get(const NodePtr& n) {
        auto it = memo_.find(n.get());
        if (it != memo_.end()) return it->second;
        T value = f_(n, *this);
        return memo_.emplace(n.get(), std::move(value)).first->second;
    }

private:
    std::function<T(const NodePtr&, NodeMemo&)> f_;
    std::unordered_map<const Node*, T> memo_;
};

std::vector<int> live_of(const NodePtr& n, NodeMemo<std::vector<int>>& memo) {
    std::vector<int> out;
    switch (n->kind) {
        case NodeKind::Empty:
            break;
        case NodeKind::Const:
            out.push_back(n->color);
            break;
        case NodeKind::Recolor:
            for (int c : memo.get(n->children[0])) out.push_back(apply_moves(n->recolor, c));
            break;
        case NodeKind::Join:
            for (const auto& ch : n->children) {
                const auto& l = memo.get(ch);
                out.insert(out.end(), l.begin(), l.end());
            }
            break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Which join pairs can add an edge, given each child's set of present labels.
template <typename Label>
std::vector<std::pair<Label, Label>> firing_pairs(const std::vector<std::pair<Label, Label>>& candidates,
                                                  const std::vector<const std::vector<Label>*>& child_labels) {
    std::map<Label, std::pair<std::size_t, std::size_t>> seen;  // label -> (children containing it, first child)
    for (std::size_t i = 0; i < child_labels.size(); ++i)
        for (const auto& l : *child_labels[i]) {
            auto [it, fresh] = seen.try_emplace(l, 0, i);
            ++it->second.first;
        }
    std::vector<std::pair<Label, Label>> out;
    for (const auto& [a, b] : candidates) {
        auto ia = seen.find(a), ib = seen.find(b);
        if (ia == seen.end() || ib == seen.end()) continue;
        bool fires = a == b ? ia->second.first >= 2
                            : (ia->second.first >= 2 || ib->second.first >= 2 || ia->second.second != ib->second.second);
        if (fires) out.emplace_back(a, b);
    }
    return out;
}

}  // namespace

std::vector<int> live_colors(const NodePtr& n) {
    NodeMemo<std::vector<int>> memo(live_of);
    return memo.get(n);
}

CliqueTerm enforce_colors(const CliqueTerm& t, const std::map<VertexId, int>& parts) {
    validate_term(t);
    using Tag = std::pair<int, int>;  // (color, class)
    for (auto id : leaf_ids(t.root)) {
        auto it = parts.find(id);
        if (it == parts.end()) throw InputError("partition does not cover vertex " + std::to_string(id));
        if (it->second < 1) throw InputError("partition classes are numbered from 1");
    }
    NodeMemo<std::vector<Tag>> live([&](const NodePtr& n, NodeMemo<std::vector<Tag>>& memo) {
        std::vector<Tag> out;
        switch (n->kind) {
            case NodeKind::Empty:
                break;
            case NodeKind::Const:
                out.emplace_back(n->color, parts.at(n->id));
                break;
            case NodeKind::Recolor:
                for (auto [c, cls] : memo.get(n->children[0])) out.emplace_back(apply_moves(n->recolor, c), cls);
                break;
            case NodeKind::Join:
                for (const auto& ch : n->children) {
                    const auto& l = memo.get(ch);
                    out.insert(out.end(), l.begin(), l.end());
                }
                break;
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    });

    const auto& root_tags = live.get(t.root);
    if (std::all_of(root_tags.begin(), root_tags.end(), [](const Tag& x) { return x.first == x.second; })) {
        int top = 0;
        for (auto [c, cls] : root_tags) top = std::max(top, cls);
        return {std::max(t.k, top), t.root};
    }

    std::map<Tag, int> label;
    std::function<void(const NodePtr&)> collect = [&](const NodePtr& n) {
        for (const auto& tag : live.get(n)) label.emplace(tag, 0);
        for (const auto& c : n->children) collect(c);
    };
    collect(t.root);
    int next = 0;
    for (auto& [tag, l] : label) l = ++next;

    std::unordered_map<const Node*, NodePtr> built;
    std::function<NodePtr(const NodePtr&)> build = [&](const NodePtr& n) -> NodePtr {
        if (auto it = built.find(n.get()); it != built.end()) return it->second;
        NodePtr out;
        switch (n->kind) {
            case NodeKind::Empty:
                out = n;
                break;
            case NodeKind::Const:
                out = make_const(label.at({n->color, parts.at(n->id)}), n->id);
                break;
            case NodeKind::Recolor: {
                std::vector<ColorPair> moves;
                for (auto [c, cls] : live.get(n->children[0]))
                    moves.emplace_back(label.at({c, cls}), label.at({apply_moves(n->recolor, c), cls}));
                out = make_recolor(std::move(moves), build(n->children[0]));
                break;
            }
            case NodeKind::Join: {
                std::vector<const std::vector<Tag>*> child_tags;
                std::vector<NodePtr> kids;
                for (const auto& ch : n->children) {
                    child_tags.push_back(&live.get(ch));
                    kids.push_back(build(ch));
                }
                std::map<int, std::vector<int>> classes_of_color;
                for (const auto& tag : live.get(n)) classes_of_color[tag.first].push_back(tag.second);
                std::vector<std::pair<Tag, Tag>> candidates;
                for (auto [a, b] : n->pairs) {
                    auto ia = classes_of_color.find(a), ib = classes_of_color.find(b);
                    if (ia == classes_of_color.end() || ib == classes_of_color.end()) continue;
                    for (int x : ia->second)
                        for (int y : ib->second) candidates.push_back({{a, x}, {b, y}});
                }
                std::vector<ColorPair> pairs;
                for (auto [p, q] : firing_pairs(candidates, child_tags)) pairs.emplace_back(label.at(p), label.at(q));
                out = make_join(std::move(pairs), std::move(kids));
                break;
            }
        }
        built.emplace(n.get(), out);
        return out;
    };
    NodePtr body = build(t.root);
    std::vector<ColorPair> finish;
    int top = 0;
    for (auto [c, cls] : root_tags) {
        finish.emplace_back(label.at({c, cls}), cls);
        top = std::max(top, cls);
    }
    return {std::max(next, top), make_recolor(std::move(finish), body)};
}

CliqueTerm restrict_term(const CliqueTerm& t, const std::set<VertexId>& keep) {
    auto leaves = leaf_ids(t.root);
    std::set<VertexId> leaf_set(leaves.begin(), leaves.end());
    for (auto v : keep)
        if (!leaf_set.count(v)) throw InputError("restriction keeps vertex " + std::to_string(v) + " which is not a leaf");
    std::unordered_map<const Node*, NodePtr> memo;
    std::function<NodePtr(const NodePtr&)> go = [&](const NodePtr& n) -> NodePtr {
        if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
        NodePtr out;
        switch (n->kind) {
            case NodeKind::Empty:
                out = n;
                break;
            case NodeKind::Const:
                out = keep.count(n->id) ? n : make_empty();
                break;
            case NodeKind::Recolor: {
                auto c = go(n->children[0]);
                out = c == n->children[0] ? n : make_recolor(n->recolor, c);
                break;
            }
            case NodeKind::Join: {
                std::vector<NodePtr> kids;
                bool same = true;
                for (const auto& ch : n->children) {
                    auto c = go(ch);
                    same = same && c == ch;
                    if (c->kind != NodeKind::Empty) kids.push_back(c);
                }
                if (same) out = n;
                else if (kids.empty()) out = make_empty();
                else out = make_join(n->pairs, std::move(kids));
                break;
            }
        }
        memo.emplace(n.get(), out);
        return out;
    };
    return {t.k, go(t.root)};
}

namespace {

class Normalizer {
public:
    using Target = std::map<int, int>;  // old color -> new color, injective on the node's live colors

    NodePtr run(const NodePtr& n, const Target& target) {
        switch (n->kind) {
            case NodeKind::Empty:
                return n;
            case NodeKind::Const:
                return make_const(target.at(n->color), n->id);
            case NodeKind::Recolor:
                return recolor(n, target);
            case NodeKind::Join:
                return join(n, target);
        }
        throw InternalError("unknown node kind");
    }

    const std::vector<int>& live(const NodePtr& n) { return memo_.get(n); }

private:
    NodePtr recolor(const NodePtr& n, const Target& target) {
        // Collapse a chain of recolors into one map applied to the first non-recolor node.
        std::vector<const std::vector<ColorPair>*> chain;
        NodePtr base = n;
        while (base->kind == NodeKind::Recolor) {
            chain.push_back(&base->recolor);
            base = base->children[0];
        }
        auto image = [&](int c) {
            for (auto it = chain.rbegin(); it != chain.rend(); ++it) c = apply_moves(**it, c);
            return c;
        };
        const auto& colors = live(base);
        std::set<int> reserved;
        for (int c : colors) reserved.insert(target.at(image(c)));
        Target inner;
        std::set<int> fibers_started;
        std::set<int> taken;
        int next_free = 1;
        std::vector<int> deferred;
        for (int c : colors) {
            int out = image(c);
            if (fibers_started.insert(out).second) {
                inner[c] = target.at(out);
                taken.insert(inner[c]);
            } else {
                deferred.push_back(c);
            }
        }
        for (int c : deferred) {
            while (reserved.count(next_free) || taken.count(next_free)) ++next_free;
            inner[c] = next_free;
            taken.insert(next_free);
        }
        std::vector<ColorPair> moves;
        for (int c : colors) moves.emplace_back(inner[c], target.at(image(c)));
        return make_recolor(std::move(moves), run(base, inner));
    }

    NodePtr join(const NodePtr& n, const Target& target) {
        std::vector<NodePtr> kids;
        std::vector<const std::vector<int>*> child_live;
        for (const auto& ch : n->children) {
            const auto& l = live(ch);
            if (l.empty()) continue;
            child_live.push_back(&l);
            Target sub;
            for (int c : l) sub[c] = target.at(c);
            kids.push_back(run(ch, sub));
        }
        if (kids.empty()) return make_empty();
        if (kids.size() == 1) return kids[0];
        std::vector<ColorPair> pairs;
        for (auto [a, b] : firing_pairs(n->pairs, child_live)) pairs.emplace_back(target.at(a), target.at(b));
        return make_join(std::move(pairs), std::move(kids));
    }

    NodeMemo<std::vector<int>> memo_{live_of};
};

}  // namespace

CliqueTerm normalize(const CliqueTerm& t, bool compact) {
    validate_term(t);
    Normalizer norm;
    Normalizer::Target target;
    int next = 0;
    for (int c : norm.live(t.root)) target[c] = compact ? ++next : c;
    NodePtr root = norm.run(t.root, target);
    int k = compact ? std::max(1, std::max(next, max_color(root))) : std::max(t.k, max_color(root));
    return {k, root};
}

std::string term_to_text(const CliqueTerm& t) {
    std::string out;
    std::function<void(const Node&)> emit = [&](const Node& n) {
        switch (n.kind) {
            case NodeKind::Empty:
                out += "(empty)";
                break;
            case NodeKind::Const:
                out += "(const " + std::to_string(n.color) + " " + std::to_string(n.id) + ")";
                break;
            case NodeKind::Recolor:
                out += "(recolor (";
                for (int c = 1; c <= t.k; ++c) {
                    if (c > 1) out += ' ';
                    out += std::to_string(apply_moves(n.recolor, c));
                }
                out += ") ";
                emit(*n.children[0]);
                out += ')';
                break;
            case NodeKind::Join:
                out += "(join (";
                for (std::size_t i = 0; i < n.pairs.size(); ++i) {
                    if (i > 0) out += ' ';
                    out += "(" + std::to_string(n.pairs[i].first) + " " + std::to_string(n.pairs[i].second) + ")";
                }
                out += ")";
                for (const auto& c : n.children) {
                    out += ' ';
                    emit(*c);
                }
                out += ')';
                break;
        }
    };
    emit(*t.root);
    out += '\n';
    return out;
}

namespace {

struct Token {
    enum class Kind { Open, Close, Atom, End } kind;
    std::string_view text;
    std::size_t line;
};

class TermLexer {
public:
    explicit TermLexer(std::string_view s) : s_(s) {}

    Token next() {
        skip();
        if (pos_ >= s_.size()) return {Token::Kind::End, {}, line_};
        char ch = s_[pos_];
        if (ch == '(') return {Token::Kind::Open, s_.substr(pos_++, 1), line_};
        if (ch == ')') return {Token::Kind::Close, s_.substr(pos_++, 1), line_};
        std::size_t start = pos_;
        while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != '(' &&
               s_[pos_] != ')' && s_[pos_] != '#')
            ++pos_;
        return {Token::Kind::Atom, s_.substr(start, pos_ - start), line_};
    }

    Token peek() {
        auto save_pos = pos_;
        auto save_line = line_;
        auto t = next();
        pos_ = save_pos;
        line_ = save_line;
        return t;
    }

private:
    void skip() {
        while (pos_ < s_.size()) {
            char ch = s_[pos_];
            if (ch == '\n') {
                ++line_;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(ch))) {
                ++pos_;
            } else if (ch == '#') {
                while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
};

struct ParsedNode {
    NodeKind kind = NodeKind::Empty;
    int color = 0;
    std::optional<VertexId> id;
    std::vector<int> images;
    std::vector<ColorPair> pairs;
    std::vector<std::unique_ptr<ParsedNode>> children;
};

class TermParser {
public:
    explicit TermParser(std::string_view s) : lex_(s) {}

    std::unique_ptr<ParsedNode> parse_root() {
        auto root = parse_node();
        auto t = lex_.next();
        if (t.kind != Token::Kind::End) text::fail_at(t.line, "unexpected text after term");
        return root;
    }

private:
    Token expect(Token::Kind kind, const char* what) {
        auto t = lex_.next();
        if (t.kind != kind) text::fail_at(t.line, std::string("expected ") + what);
        return t;
    }

    int color_atom(const Token& t) {
        if (t.kind != Token::Kind::Atom) text::fail_at(t.line, "expected a color");
        int c = text::parse_int<int>(t.text, t.line, "color");
        if (c < 1) text::fail_at(t.line, "colors start at 1");
        return c;
    }

    std::unique_ptr<ParsedNode> parse_node() {
        expect(Token::Kind::Open, "'('");
        auto head = expect(Token::Kind::Atom, "operation name");
        auto node = std::make_unique<ParsedNode>();
        if (head.text == "empty") {
            node->kind = NodeKind::Empty;
        } else if (head.text == "const") {
            node->kind = NodeKind::Const;
            node->color = color_atom(lex_.next());
            if (lex_.peek().kind == Token::Kind::Atom) {
                auto t = lex_.next();
                node->id = text::parse_int<VertexId>(t.text, t.line, "vertex id");
            }
        } else if (head.text == "recolor") {
            node->kind = NodeKind::Recolor;
            expect(Token::Kind::Open, "'(' before recolor images");
            while (lex_.peek().kind == Token::Kind::Atom) node->images.push_back(color_atom(lex_.next()));
            expect(Token::Kind::Close, "')' after recolor images");
            if (node->images.empty()) text::fail_at(head.line, "recolor needs at least one image");
            node->children.push_back(parse_node());
        } else if (head.text == "join") {
            node->kind = NodeKind::Join;
            expect(Token::Kind::Open, "'(' before join pairs");
            while (lex_.peek().kind == Token::Kind::Open) {
                lex_.next();
                int a = color_atom(lex_.next());
                int b = color_atom(lex_.next());
                expect(Token::Kind::Close, "')' closing a join pair");
                node->pairs.emplace_back(a, b);
            }
            expect(Token::Kind::Close, "')' after join pairs");
            while (lex_.peek().kind == Token::Kind::Open) node->children.push_back(parse_node());
            if (node->children.empty()) text::fail_at(head.line, "join needs at least one child");
        } else {
            text::fail_at(head.line, "unknown operation '" + std::string(head.text) + "'");
        }
        expect(Token::Kind::Close, "')'");
        return node;
    }

    TermLexer lex_;
};

}  // namespace

CliqueTerm parse_term(std::string_view text) {
    TermParser parser(text);
    auto root = parser.parse_root();

    int k = 1;
    std::set<VertexId> explicit_ids;
    std::function<void(const ParsedNode&)> scan = [&](const ParsedNode& n) {
        k = std::max(k, n.color);
        k = std::max(k, static_cast<int>(n.images.size()));
        for (int c : n.images) k = std::max(k, c);
        for (auto [a, b] : n.pairs) k = std::max({k, a, b});
        if (n.id && !explicit_ids.insert(*n.id).second)
            throw InputError("vertex id " + std::to_string(*n.id) + " used by two leaves");
        for (const auto& c : n.children) scan(*c);
    };
    scan(*root);

    VertexId next_id = 0;
    std::function<NodePtr(const ParsedNode&)> build = [&](const ParsedNode& n) -> NodePtr {
        switch (n.kind) {
            case NodeKind::Empty:
                return make_empty();
            case NodeKind::Const: {
                VertexId id;
                if (n.id) {
                    id = *n.id;
                } else {
                    while (explicit_ids.count(next_id)) ++next_id;
                    id = next_id++;
                }
                return make_const(n.color, id);
            }
            case NodeKind::Recolor: {
                std::vector<ColorPair> moves;
                for (std::size_t i = 0; i < n.images.size(); ++i) moves.emplace_back(static_cast<int>(i) + 1, n.images[i]);
                return make_recolor(std::move(moves), build(*n.children[0]));
            }
            case NodeKind::Join: {
                std::vector<NodePtr> kids;
                for (const auto& c : n.children) kids.push_back(build(*c));
                return make_join(n.pairs, std::move(kids));
            }
        }
        throw InternalError("unknown node kind");
    };
    CliqueTerm t{k, build(*root)};
    validate_term(t);
    return t;
}

}  // namespace cwf
