#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "icosa/graph.hpp"

namespace icosa {

using Coord = Eigen::Matrix<double, 3, kNumVertices>;  // columns = vertices
using Gram = Eigen::Matrix<double, kNumVertices, kNumVertices>;
using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

struct NotPSD : std::runtime_error { using std::runtime_error::runtime_error; };
struct RankExceeded : std::runtime_error { using std::runtime_error::runtime_error; };
struct ToleranceAmbiguity : std::runtime_error { using std::runtime_error::runtime_error; };
struct NotAnAutomorphism : std::runtime_error { using std::runtime_error::runtime_error; };
struct RankDeficient : std::runtime_error { using std::runtime_error::runtime_error; };

// Default tolerances; surfaced in the CLI config.
struct Tolerances {
    double residual = 1e-8;       // accept a solved icosahedron
    double distinct = 1e-5;       // coincident-vertex threshold
    double psd = 1e-9;            // negative-eigenvalue slack
    double equivalence = 1e-6;    // Gram-matrix comparison under A
};

Gram gram_from_coords(const Coord& M);

// Conjugated Gram: result(i,j) = G(g(i), g(j)).
Gram gram_conjugate(const Gram& G, const Perm& g);

// Column permutation: result.col(i) = M.col(g(i)).
Coord coords_permute(const Coord& M, const Perm& g);

// Rank <= 3 PSD factorization, rows from the top-3 eigenpairs.
// Throws NotPSD / RankExceeded.
Coord coords_from_gram(const Gram& G, double psd_tol = 1e-9);

// Per-edge residual |Vi - Vj|^2 - 1, in the canonical (lexicographic) order.
Eigen::VectorXd edge_residuals(const Coord& M, const IcoGraph& graph);

struct IcosaCheck {
    bool ok = false;
    double max_edge_residual = 0.0;
    double min_pair_distance = 0.0;
    double center_norm = 0.0;
    int rank = 0;  // numerical rank of M
};

IcosaCheck check_icosahedron(const Coord& M, const IcoGraph& graph, const Tolerances& tol = {});
bool is_icosahedron(const Coord& M, const IcoGraph& graph, const Tolerances& tol = {});

// First g in table order with pi(g)^T G1 pi(g) == G2 entrywise within tol.
std::optional<Perm> gram_equivalent(const Gram& G1, const Gram& G2, const AutGroup& A,
                                    double tol = 1e-6);

// Stabilizer {g : pi(g)^T G pi(g) = G within tol}. Throws ToleranceAmbiguity
// if some deviation falls inside [tol, 10*tol).
std::vector<Perm> automorphism_group(const Gram& G, const AutGroup& A, double tol = 1e-6);

// The 3x3 orthogonal matrix delta(g) with delta(g) M = M pi(g), computed via
// the rank-3 pseudoinverse. Throws RankDeficient / NotAnAutomorphism.
Mat3 induced_rotation(const Coord& M, const Perm& g, double tol = 1e-6);

// Unit-edge regular icosahedron labeled compatibly with the combinatorial
// structure (deterministic labeling; center of mass at the origin).
Coord regular_icosahedron(const IcoGraph& graph);

}  // namespace icosa
