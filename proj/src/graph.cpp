#include "icosa/graph.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace icosa {

namespace {

VertexPair sorted_pair(int i, int j) {
    if (i > j) std::swap(i, j);
    return {i, j};
}

std::vector<VertexPair> pair_orbit(const AutGroup& A, VertexPair seed) {
    std::set<VertexPair> orbit;
    for (const Perm& g : A.elements()) orbit.insert(IcoGraph::apply(g, seed));
    return std::vector<VertexPair>(orbit.begin(), orbit.end());
}

std::vector<VertexTriple> triple_orbit(const AutGroup& A, VertexTriple seed) {
    std::set<VertexTriple> orbit;
    for (const Perm& g : A.elements()) orbit.insert(IcoGraph::apply(g, seed));
    return std::vector<VertexTriple>(orbit.begin(), orbit.end());
}

}  // namespace

VertexPair IcoGraph::apply(const Perm& g, const VertexPair& e) {
    return sorted_pair(g(e[0]), g(e[1]));
}

VertexTriple IcoGraph::apply(const Perm& g, const VertexTriple& f) {
    VertexTriple t{g(f[0]), g(f[1]), g(f[2])};
    std::sort(t.begin(), t.end());
    return t;
}

IcoGraph::IcoGraph(const AutGroup& A) {
    faces_ = triple_orbit(A, {0, 1, 2});   // {1,2,3}
    edges_ = pair_orbit(A, {0, 1});        // {1,2}
    diag2_ = pair_orbit(A, {2, 3});        // {3,4}
    diag3_ = pair_orbit(A, {0, 11});       // {1,12}

    if (faces_.size() != 20 || edges_.size() != 30 || diag2_.size() != 30 || diag3_.size() != 6)
        throw std::logic_error("IcoGraph: unexpected orbit sizes");

    std::set<VertexPair> es(edges_.begin(), edges_.end());
    std::set<VertexPair> d2(diag2_.begin(), diag2_.end());
    std::set<VertexPair> d3(diag3_.begin(), diag3_.end());
    for (const auto& e : es)
        if (d2.count(e) || d3.count(e)) throw std::logic_error("IcoGraph: orbits overlap");
    for (const auto& e : d2)
        if (d3.count(e)) throw std::logic_error("IcoGraph: orbits overlap");

    // diag3 must match the 2-cycles of d.
    std::set<VertexPair> dcycles;
    for (const auto& cy : A.d().cycles()) dcycles.insert(sorted_pair(cy[0], cy[1]));
    if (dcycles != d3) throw std::logic_error("IcoGraph: diag3 differs from the cycles of d");

    for (int i = 0; i < kNumVertices; ++i)
        for (int j = 0; j < kNumVertices; ++j) dist_[i][j] = 0;
    for (const auto& e : edges_) dist_[e[0]][e[1]] = dist_[e[1]][e[0]] = 1;
    for (const auto& e : diag2_) dist_[e[0]][e[1]] = dist_[e[1]][e[0]] = 2;
    for (const auto& e : diag3_) dist_[e[0]][e[1]] = dist_[e[1]][e[0]] = 3;
    for (int i = 0; i < kNumVertices; ++i)
        for (int j = 0; j < kNumVertices; ++j)
            if (i != j && dist_[i][j] == 0)
                throw std::logic_error("IcoGraph: distance table incomplete");

    for (const auto& e : edges_) {
        nbrs_[e[0]].push_back(e[1]);
        nbrs_[e[1]].push_back(e[0]);
    }
    for (auto& nb : nbrs_) {
        std::sort(nb.begin(), nb.end());
        if (nb.size() != 5) throw std::logic_error("IcoGraph: vertex degree != 5");
    }
    for (const auto& p : diag3_) {
        antipode_[p[0]] = p[1];
        antipode_[p[1]] = p[0];
    }
}

int IcoGraph::edge_index(int i, int j) const {
    VertexPair e = sorted_pair(i, j);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it != edges_.end() && *it == e) return static_cast<int>(it - edges_.begin());
    return -1;
}

std::array<VertexTriple, 2> IcoGraph::faces_of_edge(const VertexPair& e) const {
    std::array<VertexTriple, 2> out{};
    int found = 0;
    for (const auto& f : faces_) {
        bool hi = std::find(f.begin(), f.end(), e[0]) != f.end();
        bool hj = std::find(f.begin(), f.end(), e[1]) != f.end();
        if (hi && hj) {
            if (found == 2) throw std::logic_error("faces_of_edge: more than two faces");
            out[found++] = f;
        }
    }
    if (found != 2) throw std::logic_error("faces_of_edge: edge not on two faces");
    return out;
}

VertexPair IcoGraph::orthogonal_diagonal(const VertexPair& e) const {
    if (edge_index(e[0], e[1]) < 0)
        throw std::invalid_argument("orthogonal_diagonal: not an edge");
    auto fs = faces_of_edge(e);
    std::vector<int> third;
    for (const auto& f : fs)
        for (int v : f)
            if (v != e[0] && v != e[1]) third.push_back(v);
    if (third.size() != 2) throw std::logic_error("orthogonal_diagonal: bad third vertices");
    VertexPair st = sorted_pair(third[0], third[1]);
    if (!std::binary_search(diag2_.begin(), diag2_.end(), st))
        throw std::logic_error("orthogonal_diagonal: result not in diag2");
    return st;
}

}  // namespace icosa
