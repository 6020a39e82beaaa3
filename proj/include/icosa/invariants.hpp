#pragma once

#include <optional>
#include <vector>

#include "icosa/solver.hpp"

namespace icosa {

struct NotCoplanar : std::runtime_error { using std::runtime_error::runtime_error; };
struct DegenerateResult : std::runtime_error { using std::runtime_error::runtime_error; };

struct CentralPoint {
    Vec3 point;
    double vertex_radius = 0.0;    // distance to the six triangle vertices
    double midpoint_radius = 0.0;  // distance to the six edge midpoints
};

struct SignificantPoint {
    Vec3 point;
    int strength = 0;
    std::vector<int> faces;  // indices into graph.faces(), sorted
    double vertex_radius = 0.0;
    double midpoint_radius = 0.0;
    bool trivial = false;  // strength 2 with the two faces sharing an edge
};

struct InvariantTolerances {
    double triangle = 1e-6;       // unit equiangular validation
    double consistency = 1e-7;    // equidistance system residual
    double cluster_radius = 1e-6; // single-linkage spatial clustering
    double radius = 1e-7;         // radii grouping
    double coplanar = 1e-7;       // smallest singular value of centered points
    double dihedral = 1e-8;       // flat-pair detection (angle within tol of pi)
};

// Point equidistant from all six vertices of two unit equiangular triangles
// (and from their six edge midpoints). Coplanar pairs yield nullopt, as do
// inconsistent systems (e.g. parallel orthogonal middle lines).
std::optional<CentralPoint> central_point(const std::array<Vec3, 3>& t1,
                                          const std::array<Vec3, 3>& t2,
                                          const InvariantTolerances& tol = {});

// Scans all 190 face pairs, clusters the central points, and groups faces at
// a cluster point by common (vertex_radius, midpoint_radius). Each group of
// k >= 2 faces is one significant point of strength k.
std::vector<SignificantPoint> significant_points(const Coord& M, const IcoGraph& graph,
                                                 const InvariantTolerances& tol = {});

struct StrengthSum {
    int total = 0;
    bool partition = false;  // member-face sets partition the 20 faces
};

StrengthSum strength_sum(const std::vector<SignificantPoint>& points);

// Reflects vertex v across the plane of its five neighbors (which must be
// coplanar within tol), then recenters. Throws NotCoplanar / DegenerateResult.
Coord dent(const Coord& M, int v, const IcoGraph& graph,
           const InvariantTolerances& tol = {});

struct DentFamily {
    IcosaSolution single;       // one dent
    IcosaSolution double_d2;    // second dent at combinatorial distance 2
    IcosaSolution double_d3;    // second dent at the antipode
    IcosaSolution triple_d2;    // three dents, pairwise distance 2
};

// The four dent constructions rooted at a full-symmetry icosahedron.
DentFamily dent_family(const Coord& M_regular, const IcoGraph& graph, const AutGroup& A,
                       const Tolerances& tol = {});

// Number of face pairs sharing an edge with dihedral angle within tol of pi.
int coplanar_neighbor_pairs(const Coord& M, const IcoGraph& graph,
                            const InvariantTolerances& tol = {});

// Faces whose three neighbor dihedral angles are equal (within tol) and != pi.
std::vector<int> equiangular_neighbor_faces(const Coord& M, const IcoGraph& graph,
                                            double angle_tol = 1e-7);

}  // namespace icosa
