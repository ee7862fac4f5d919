#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace veerkit {

// A permutation of {0,1,2,3}; img[i] is the image of i.
struct Perm4 {
    std::array<std::uint8_t, 4> img{0, 1, 2, 3};

    constexpr Perm4() = default;
    constexpr Perm4(int a, int b, int c, int d)
        : img{std::uint8_t(a), std::uint8_t(b), std::uint8_t(c), std::uint8_t(d)} {}

    constexpr int operator[](int i) const { return img[i]; }

    constexpr Perm4 inverse() const {
        Perm4 r;
        for (int i = 0; i < 4; ++i) r.img[img[i]] = std::uint8_t(i);
        return r;
    }

    // (*this * other)(i) = this(other(i))
    constexpr Perm4 operator*(const Perm4& other) const {
        Perm4 r;
        for (int i = 0; i < 4; ++i) r.img[i] = img[other.img[i]];
        return r;
    }

    constexpr int sign() const {
        int inv = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (img[i] > img[j]) ++inv;
        return inv % 2 == 0 ? 1 : -1;
    }

    constexpr bool is_valid() const {
        int seen = 0;
        for (int i = 0; i < 4; ++i) {
            if (img[i] > 3) return false;
            seen |= 1 << img[i];
        }
        return seen == 0xF;
    }

    constexpr bool operator==(const Perm4&) const = default;
    constexpr auto operator<=>(const Perm4&) const = default;

    std::string str() const {
        std::string s(4, '0');
        for (int i = 0; i < 4; ++i) s[i] = char('0' + img[i]);
        return s;
    }

    // Lexicographic index in S4, 0 = identity, 23 = 3210.
    int lex_index() const;
    static Perm4 from_lex_index(int k);
};

// Edge slot numbering inside a tetrahedron: 0:01 1:02 2:03 3:12 4:13 5:23.
// Opposite edges are k and 5-k; pi_pair d selects the pair {d, 5-d}.
constexpr std::array<std::array<int, 2>, 6> kEdgeVertices{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

constexpr int edge_slot(int a, int b) {
    if (a > b) { int t = a; a = b; b = t; }
    if (a == 0) return b - 1;
    if (a == 1) return b + 1;
    return 5;
}

}  // namespace veerkit
