#include "word.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "error.hpp"

namespace cwf {

std::vector<int> profile_colors(Profile x) {
    std::vector<int> out;
    for (int c = 1; x != 0; ++c, x >>= 1)
        if (x & 1u) out.push_back(c);
    return out;
}

std::string profile_to_text(Profile x) {
    if (x == 0) return "-";
    std::string out;
    for (int c : profile_colors(x)) {
        if (!out.empty()) out += ',';
        out += std::to_string(c);
    }
    return out;
}

ColorMap identity_map(int k) {
    ColorMap m(static_cast<std::size_t>(k));
    for (int c = 1; c <= k; ++c) m[c - 1] = c;
    return m;
}

ColorMap compose_maps(const ColorMap& outer, const ColorMap& inner) {
    ColorMap m(inner.size());
    for (std::size_t i = 0; i < inner.size(); ++i) m[i] = outer[inner[i] - 1];
    return m;
}

Profile preimage(const ColorMap& phi, Profile x) {
    Profile out = 0;
    for (std::size_t i = 0; i < phi.size(); ++i)
        if (profile_has(x, phi[i])) out |= Profile{1} << i;
    return out;
}

void validate_word(const LinearWord& w) {
    if (w.k < 1 || w.k > kMaxWordColors)
        throw InputError("word k must lie in [1," + std::to_string(kMaxWordColors) + "]");
    std::set<VertexId> ids;
    const Profile full = (Profile{1} << w.k) - 1;
    for (const auto& ins : w.items) {
        if (ins.kind == Instruction::Kind::AddVertex) {
            if (ins.color < 1 || ins.color > w.k) throw InputError("add-vertex color outside [1,k]");
            if (ins.profile & ~full) throw InputError("add-vertex profile outside [1,k]");
            if (!ids.insert(ins.id).second) throw InputError("vertex id " + std::to_string(ins.id) + " added twice");
        } else {
            if (static_cast<int>(ins.phi.size()) != w.k) throw InputError("recolor map must list k images");
            for (int c : ins.phi)
                if (c < 1 || c > w.k) throw InputError("recolor image outside [1,k]");
        }
    }
}

ColoredGraph eval_word(const LinearWord& w) {
    validate_word(w);
    GraphBuilder b(w.k);
    std::vector<VertexId> ids;
    std::vector<int> colors;
    for (const auto& ins : w.items) {
        if (ins.kind == Instruction::Kind::AddVertex) {
            for (std::size_t v = 0; v < ids.size(); ++v)
                if (profile_has(ins.profile, colors[v])) b.add_edge(ids[v], ins.id);
            ids.push_back(ins.id);
            colors.push_back(ins.color);
        } else {
            for (auto& c : colors) c = ins.phi[c - 1];
        }
    }
    for (std::size_t v = 0; v < ids.size(); ++v) b.add_vertex(ids[v], colors[v]);
    return b.build();
}

CliqueTerm linear_to_term(const LinearWord& w) {
    validate_word(w);
    const int fresh = w.k + 1;
    NodePtr t = make_empty();
    for (const auto& ins : w.items) {
        if (ins.kind == Instruction::Kind::Recolor) {
            std::vector<ColorPair> moves;
            for (int c = 1; c <= w.k; ++c) moves.emplace_back(c, ins.phi[c - 1]);
            t = make_recolor(std::move(moves), t);
            continue;
        }
        std::vector<ColorPair> pairs;
        for (int x : profile_colors(ins.profile)) pairs.emplace_back(fresh, x);
        std::vector<NodePtr> kids;
        if (t->kind != NodeKind::Empty) kids.push_back(t);
        kids.push_back(make_const(fresh, ins.id));
        t = make_recolor({{fresh, ins.color}}, make_join(std::move(pairs), std::move(kids)));
    }
    return {fresh, t};
}

std::string word_to_text(const LinearWord& w) {
    std::string out = "word k=" + std::to_string(w.k) + "\n";
    for (const auto& ins : w.items) {
        if (ins.kind == Instruction::Kind::AddVertex) {
            out += "a " + std::to_string(ins.color) + " " + profile_to_text(ins.profile) + " " + std::to_string(ins.id) + "\n";
        } else {
            out += "r";
            for (int c : ins.phi) out += " " + std::to_string(c);
            out += "\n";
        }
    }
    return out;
}

LinearWord parse_word(std::string_view text) {
    auto lines = text::tokenize_lines(text);
    LinearWord w;
    std::size_t pos = 0;
    std::optional<int> declared;
    if (!lines.empty() && lines[0].tokens[0] == "word") {
        if (lines[0].tokens.size() != 2) text::fail_at(lines[0].number, "expected header 'word k=<k>'");
        declared = text::parse_k_token(lines[0].tokens[1], lines[0].number);
        if (*declared > kMaxWordColors)
            text::fail_at(lines[0].number, "k above the supported maximum " + std::to_string(kMaxWordColors));
        pos = 1;
    }
    int inferred = 1;
    std::set<VertexId> ids;
    std::vector<std::size_t> line_of;
    for (; pos < lines.size(); ++pos) {
        const auto& l = lines[pos];
        auto check_color = [&](int c, const char* what) {
            if (c < 1 || c > kMaxWordColors) text::fail_at(l.number, std::string(what) + " outside [1," + std::to_string(kMaxWordColors) + "]");
            if (declared && c > *declared) text::fail_at(l.number, std::string(what) + " " + std::to_string(c) + " exceeds k=" + std::to_string(*declared));
            inferred = std::max(inferred, c);
        };
        if (l.tokens[0] == "a") {
            if (l.tokens.size() != 4) text::fail_at(l.number, "expected 'a <color> <profile> <id>'");
            int c = text::parse_int<int>(l.tokens[1], l.number, "color");
            check_color(c, "color");
            Profile x = 0;
            for (int y : text::parse_int_list(l.tokens[2], l.number, "profile color")) {
                check_color(y, "profile color");
                x |= Profile{1} << (y - 1);
            }
            auto id = text::parse_int<VertexId>(l.tokens[3], l.number, "vertex id");
            if (!ids.insert(id).second) text::fail_at(l.number, "vertex id " + std::to_string(id) + " added twice");
            w.items.push_back(Instruction::add(c, x, id));
        } else if (l.tokens[0] == "r") {
            if (l.tokens.size() < 2) text::fail_at(l.number, "expected 'r <images>'");
            ColorMap phi;
            for (std::size_t i = 1; i < l.tokens.size(); ++i) {
                int c = text::parse_int<int>(l.tokens[i], l.number, "recolor image");
                check_color(c, "recolor image");
                phi.push_back(c);
            }
            if (declared && static_cast<int>(phi.size()) != *declared)
                text::fail_at(l.number, "recolor must list exactly k=" + std::to_string(*declared) + " images");
            inferred = std::max(inferred, static_cast<int>(phi.size()));
            w.items.push_back(Instruction::recolor(std::move(phi)));
        } else {
            text::fail_at(l.number, "unknown instruction '" + std::string(l.tokens[0]) + "'");
        }
        line_of.push_back(l.number);
    }
    w.k = declared.value_or(inferred);
    for (std::size_t i = 0; i < w.items.size(); ++i) {
        auto& ins = w.items[i];
        if (ins.kind != Instruction::Kind::Recolor) continue;
        if (static_cast<int>(ins.phi.size()) != w.k)
            text::fail_at(line_of[i], "recolor lists " + std::to_string(ins.phi.size()) + " images but k=" + std::to_string(w.k));
    }
    return w;
}

}  // namespace cwf
