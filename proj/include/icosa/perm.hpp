#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace icosa {

constexpr int kNumVertices = 12;

// Permutation of the 12 vertex labels. Internally 0-based; all text I/O
// (cycle notation, file formats) is 1-based.
struct Perm {
    std::array<std::uint8_t, kNumVertices> img{};

    Perm() {
        for (int i = 0; i < kNumVertices; ++i) img[i] = static_cast<std::uint8_t>(i);
    }

    int operator()(int i) const { return img[static_cast<std::size_t>(i)]; }

    bool operator==(const Perm& o) const { return img == o.img; }
    bool operator!=(const Perm& o) const { return img != o.img; }
    bool operator<(const Perm& o) const { return img < o.img; }

    // Function composition: (p*q)(i) = p(q(i)).
    Perm operator*(const Perm& q) const {
        Perm r;
        for (int i = 0; i < kNumVertices; ++i)
            r.img[i] = img[q.img[i]];
        return r;
    }

    Perm inverse() const {
        Perm r;
        for (int i = 0; i < kNumVertices; ++i)
            r.img[img[i]] = static_cast<std::uint8_t>(i);
        return r;
    }

    bool is_identity() const {
        for (int i = 0; i < kNumVertices; ++i)
            if (img[i] != i) return false;
        return true;
    }

    bool is_involution() const { return !is_identity() && (*this) * (*this) == Perm(); }

    int order() const {
        Perm p = *this;
        int n = 1;
        while (!p.is_identity()) {
            p = p * (*this);
            ++n;
            if (n > 120) throw std::logic_error("Perm::order: runaway");
        }
        return n;
    }

    bool valid() const {
        unsigned mask = 0;
        for (int i = 0; i < kNumVertices; ++i) mask |= 1u << img[i];
        return mask == 0xFFFu;
    }

    // Cycles of length >= 2, each cycle starting at its smallest element.
    std::vector<std::vector<int>> cycles() const;

    // "(1,2)(3,4)" style, 1-based; identity prints as "()".
    std::string cycle_string() const;

    // Builds a permutation from 1-based transposition/cycle notation.
    static Perm from_cycles(const std::vector<std::vector<int>>& cy);
    static Perm parse_cycle_string(const std::string& s);
};

}  // namespace icosa
