#include "icosa/perm.hpp"

#include <cstdlib>

namespace icosa {

std::vector<std::vector<int>> Perm::cycles() const {
    std::vector<std::vector<int>> out;
    std::array<bool, kNumVertices> seen{};
    for (int i = 0; i < kNumVertices; ++i) {
        if (seen[i] || img[i] == i) continue;
        std::vector<int> cy;
        int j = i;
        do {
            cy.push_back(j);
            seen[j] = true;
            j = img[j];
        } while (j != i);
        out.push_back(std::move(cy));
    }
    return out;
}

std::string Perm::cycle_string() const {
    auto cy = cycles();
    if (cy.empty()) return "()";
    std::string s;
    for (const auto& c : cy) {
        s += '(';
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (k) s += ',';
            s += std::to_string(c[k] + 1);
        }
        s += ')';
    }
    return s;
}

Perm Perm::from_cycles(const std::vector<std::vector<int>>& cy) {
    Perm p;
    for (const auto& c : cy) {
        for (std::size_t k = 0; k < c.size(); ++k) {
            int from = c[k] - 1;
            int to = c[(k + 1) % c.size()] - 1;
            if (from < 0 || from >= kNumVertices || to < 0 || to >= kNumVertices)
                throw std::invalid_argument("Perm::from_cycles: label out of range");
            p.img[from] = static_cast<std::uint8_t>(to);
        }
    }
    if (!p.valid()) throw std::invalid_argument("Perm::from_cycles: not a bijection");
    return p;
}

Perm Perm::parse_cycle_string(const std::string& s) {
    std::vector<std::vector<int>> cy;
    std::vector<int> cur;
    std::size_t i = 0;
    while (i < s.size()) {
        char ch = s[i];
        if (ch == '(') {
            cur.clear();
            ++i;
        } else if (ch == ')') {
            if (!cur.empty()) cy.push_back(cur);
            cur.clear();
            ++i;
        } else if (ch == ',' || ch == ' ') {
            ++i;
        } else if (ch >= '0' && ch <= '9') {
            char* end = nullptr;
            long v = std::strtol(s.c_str() + i, &end, 10);
            cur.push_back(static_cast<int>(v));
            i = static_cast<std::size_t>(end - s.c_str());
        } else {
            throw std::invalid_argument("Perm::parse_cycle_string: bad character");
        }
    }
    return from_cycles(cy);
}

}  // namespace icosa
