#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "icosa/group.hpp"

namespace icosa {

using VertexPair = std::array<int, 2>;    // sorted, 0-based
using VertexTriple = std::array<int, 3>;  // sorted, 0-based

// Labeled incidence structure of the icosahedron: the 20 faces, 30 edges and
// the two diagonal orbits, all generated as orbits under A from the seeds
// {1,2,3}, {1,2}, {3,4}, {1,12}.
class IcoGraph {
  public:
    explicit IcoGraph(const AutGroup& A);

    const std::vector<VertexTriple>& faces() const { return faces_; }
    const std::vector<VertexPair>& edges() const { return edges_; }     // lexicographic order
    const std::vector<VertexPair>& diag2() const { return diag2_; }
    const std::vector<VertexPair>& diag3() const { return diag3_; }

    bool is_edge(int i, int j) const { return dist(i, j) == 1; }
    // Combinatorial distance between distinct vertices: 1, 2 or 3.
    int dist(int i, int j) const { return dist_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }

    // The 5 neighbors of a vertex, ascending.
    const std::vector<int>& neighbors(int v) const { return nbrs_[static_cast<std::size_t>(v)]; }

    // Antipodal partner (the diag3 mate).
    int antipode(int v) const { return antipode_[static_cast<std::size_t>(v)]; }

    int edge_index(int i, int j) const;  // index into edges(), -1 if not an edge

    // Orthogonal diagonal of an edge: the unique diag2 pair {s,t} with
    // {i,j,s} and {i,j,t} both faces. Asserts uniqueness.
    VertexPair orthogonal_diagonal(const VertexPair& e) const;

    // Faces containing a given edge (exactly two).
    std::array<VertexTriple, 2> faces_of_edge(const VertexPair& e) const;

    // Image of an edge under a permutation, sorted.
    static VertexPair apply(const Perm& g, const VertexPair& e);
    static VertexTriple apply(const Perm& g, const VertexTriple& f);

  private:
    std::vector<VertexTriple> faces_;
    std::vector<VertexPair> edges_, diag2_, diag3_;
    std::array<std::array<int, kNumVertices>, kNumVertices> dist_{};
    std::array<std::vector<int>, kNumVertices> nbrs_;
    std::array<int, kNumVertices> antipode_{};
};

}  // namespace icosa
