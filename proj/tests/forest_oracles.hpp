#pragma once

#include <algorithm>
#include <array>
#include <climits>
#include <string>
#include <vector>

#include "forest.hpp"
#include "rng.hpp"

namespace cwf::testing {

using Table = std::array<std::array<int, 3>, 3>;

// Three-element semigroups given by multiplication tables over {0, 1, 2}.
inline const Table kGroupWithZero{{{0, 0, 0}, {0, 1, 2}, {0, 2, 1}}};  // {0} plus a group of order two
inline const Table kFlipFlop{{{0, 1, 2}, {1, 1, 2}, {2, 1, 2}}};       // identity plus two right zeros
inline const Table kCyclic{{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}};         // integers mod 3

class TableSemigroup : public IdSemigroup {
public:
    explicit TableSemigroup(const Table& t) : t_(t) {}
    int multiply(int a, int b) override { return t_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
    std::size_t size() const override { return 3; }
    std::string describe(int a) const override { return std::to_string(a); }

private:
    Table t_;
};

using Transformation = std::vector<int>;

inline InternedSemigroup<Transformation> transformations() {
    return InternedSemigroup<Transformation>(
        [](const Transformation& a, const Transformation& b) {
            Transformation c(a.size());
            for (std::size_t x = 0; x < a.size(); ++x) c[x] = b[static_cast<std::size_t>(a[x])];
            return c;
        },
        [](const Transformation& a) {
            std::string s;
            for (int x : a) s += std::to_string(x);
            return s;
        });
}

// Minimal depth over all factorisation forests, by interval dynamic programming.
inline std::size_t min_depth(const std::vector<int>& w, IdSemigroup& sg) {
    const std::size_t n = w.size();
    std::vector<std::vector<int>> image(n + 1, std::vector<int>(n + 1, -1));
    std::vector<std::vector<std::size_t>> best(n + 1, std::vector<std::size_t>(n + 1, SIZE_MAX));
    for (std::size_t i = 0; i < n; ++i) {
        image[i][i + 1] = w[i];
        best[i][i + 1] = 1;
    }
    for (std::size_t len = 2; len <= n; ++len)
        for (std::size_t i = 0; i + len <= n; ++i) {
            std::size_t j = i + len;
            image[i][j] = sg.multiply(image[i][j - 1], w[j - 1]);
            std::size_t b = SIZE_MAX;
            for (std::size_t m = i + 1; m < j; ++m) b = std::min(b, std::max(best[i][m], best[m][j]) + 1);
            int e = image[i][j];
            if (sg.multiply(e, e) == e) {
                // part[x]: cheapest split of [i, x) into pieces of image e; whole[x] counts pieces >= 2.
                std::vector<std::size_t> one(j + 1, SIZE_MAX), many(j + 1, SIZE_MAX);
                for (std::size_t x = i + 1; x <= j; ++x) {
                    if (image[i][x] == e) one[x] = best[i][x];
                    for (std::size_t y = i + 1; y < x; ++y) {
                        if (image[y][x] != e) continue;
                        std::size_t prev = std::min(one[y], many[y]);
                        if (prev != SIZE_MAX) many[x] = std::min(many[x], std::max(prev, best[y][x]));
                    }
                }
                if (many[j] != SIZE_MAX) b = std::min(b, many[j] + 1);
            }
            best[i][j] = b;
        }
    return best[0][n];
}

inline std::vector<int> random_letters(Rng& rng, std::size_t n, const std::vector<int>& alphabet) {
    std::vector<int> w(n);
    for (auto& x : w) x = alphabet[rng.below(alphabet.size())];
    return w;
}

}  // namespace cwf::testing
