#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "icosa/geometry.hpp"

namespace icosa {

struct InfeasiblePins : std::runtime_error { using std::runtime_error::runtime_error; };
struct DimensionMismatch : std::runtime_error { using std::runtime_error::runtime_error; };

enum class CaseGen { A, D, AD };

// One of the nine symmetry cases (generator x, diagonal sign action), plus
// the sign sub-case split for the ad/(-1,1,1) family.
struct AnsatzCase {
    CaseGen gen = CaseGen::D;
    std::array<int, 3> signs{-1, -1, -1};
    int subcase = 0;  // 0 = none, 1/2 = sign of the pinned second edge entry

    std::string id() const;
    static AnsatzCase parse(const std::string& id);  // throws std::invalid_argument
    static std::vector<AnsatzCase> all_cases();      // the nine, sub-cases expanded for ad-++
};

// Expected outcome of a case (used by the CLI exit code and the report).
enum class CaseOutcome { Solutions, Empty, Curve };

struct CaseReport {
    AnsatzCase c;
    CaseOutcome expected;
    int expected_real_classes;  // -1 when infinite/unknown
    std::string note;
};

CaseReport case_expectation(const AnsatzCase& c);

// Linear parametrization M(y) = offset + sum_k y_k basis_k of coordinate
// matrices with delta(x) M = M pi(x), center of mass zero, and affine gauge
// pins applied. Basis matrices are orthonormal as 36-vectors and satisfy the
// intertwining relation exactly.
struct Ansatz {
    AnsatzCase case_id;
    Perm x;
    Mat3 delta;
    Coord offset;
    std::vector<Coord> basis;
    std::vector<std::array<double, 3>> pins;  // (row, col, value), 0-based rows/cols
    std::array<bool, 3> com_row{};            // rows with an explicit zero-sum constraint

    // Reduced system: one edge equation per <x>-orbit of edges.
    std::vector<VertexPair> edge_reps;             // canonical representatives
    std::vector<std::vector<int>> edge_orbit_idx;  // per rep: indices into graph.edges()

    int dim() const { return static_cast<int>(basis.size()); }

    Coord materialize(const Eigen::VectorXd& y) const;

    // Residuals of the orbit-representative edge equations at M(y).
    Eigen::VectorXd residuals(const Eigen::VectorXd& y) const;
    // Analytic Jacobian of residuals() (rows = edge reps, cols = parameters).
    Eigen::MatrixXd jacobian(const Eigen::VectorXd& y) const;
};

// Row-eigenspace basis vectors of pi(x) for the eigenvalue `sign`; entries
// are 0/+-1, one vector per 2-cycle (and per fixed point when sign = +1).
std::vector<Eigen::VectorXd> eigenspace_basis(const Perm& x, int sign);

// Least-squares parameters with materialize(y) == M, or nullopt when M lies
// outside the affine span of the ansatz.
std::optional<Eigen::VectorXd> fit_parameters(const Ansatz& az, const Coord& M,
                                              double tol = 1e-9);

// Raw intertwiner space for (x, signs): one 3x12 matrix per row-eigenvector.
std::vector<Coord> intertwiner_basis(const Perm& x, const std::array<int, 3>& signs);

Ansatz build_ansatz(const AnsatzCase& c, const AutGroup& A, const IcoGraph& graph);

}  // namespace icosa
