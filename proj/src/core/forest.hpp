#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "error.hpp"

namespace cwf {

// A finite semigroup seen through integer element ids. multiply() may mint new ids.
class IdSemigroup {
public:
    virtual ~IdSemigroup() = default;
    virtual int multiply(int a, int b) = 0;
    virtual std::size_t size() const = 0;
    // Stable text for an element; used for dumps and hashes.
    virtual std::string describe(int a) const = 0;
};

// Interns values of type E (ordered by operator<) and memoises products.
template <typename E>
class InternedSemigroup : public IdSemigroup {
public:
    using Mul = std::function<E(const E&, const E&)>;
    using Show = std::function<std::string(const E&)>;

    InternedSemigroup(Mul mul, Show show) : mul_(std::move(mul)), show_(std::move(show)) {}

    int intern(const E& e) {
        auto [it, fresh] = ids_.try_emplace(e, static_cast<int>(values_.size()));
        if (fresh) values_.push_back(e);
        return it->second;
    }

    const E& value(int id) const { return values_.at(static_cast<std::size_t>(id)); }

    int multiply(int a, int b) override {
        std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
        if (auto it = products_.find(key); it != products_.end()) return it->second;
        int c = intern(mul_(values_[static_cast<std::size_t>(a)], values_[static_cast<std::size_t>(b)]));
        products_.emplace(key, c);
        return c;
    }

    std::size_t size() const override { return values_.size(); }
    std::string describe(int a) const override { return show_(value(a)); }

private:
    Mul mul_;
    Show show_;
    std::map<E, int> ids_;
    std::vector<E> values_;
    std::unordered_map<std::uint64_t, int> products_;
};

enum class ForestKind { Leaf, Binary, Idempotent };

struct ForestNode {
    ForestKind kind = ForestKind::Leaf;
    std::size_t position = 0;          // Leaf: 0-based word position
    std::vector<std::size_t> children;  // Binary: 2; Idempotent: >= 2
    int image = 0;
};

struct Forest {
    std::vector<ForestNode> nodes;
    std::size_t root = 0;
    std::size_t generated_size = 0;  // |T'|, the subsemigroup generated by the letters
    std::size_t depth_bound = 0;     // 5 |T'|

    std::size_t depth() const;
    std::size_t depth_of(std::size_t node) const;
    // Leaf positions covered by a node, left to right.
    std::vector<std::size_t> leaves(std::size_t node) const;
};

// Green's relations of the subsemigroup generated by `letters`, computed as strongly connected
// components of its Cayley graphs. Class ids are dense per relation.
struct GreenStructure {
    std::vector<int> elements;  // ids of T'
    std::unordered_map<int, int> r_class, l_class, j_class;
};

GreenStructure green_structure(const std::vector<int>& letters, IdSemigroup& sg, std::size_t cap = 1000000);

// Factorisation forest of depth at most 5 |T'| (leaf depth 1). Throws InputError on an empty
// sequence, a closure above `cap` elements, or a detected associativity failure.
Forest build_forest(const std::vector<int>& letters, IdSemigroup& sg, std::size_t cap = 1000000);

struct ForestCheck {
    bool ok = true;
    std::string message;  // first violation, with the path of child indices from the root
};

ForestCheck verify_forest(const Forest& f, const std::vector<int>& letters, IdSemigroup& sg);

// Indented dump: `L <pos>` (1-based), `B`, `I <hash>`; two spaces per level.
std::string forest_to_text(const Forest& f, IdSemigroup& sg);

// 16 hex digits of a 64-bit FNV-1a hash of the element description.
std::string element_hash(IdSemigroup& sg, int id);

}  // namespace cwf
