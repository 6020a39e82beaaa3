#pragma once

#include <vector>

#include "icosa/solver.hpp"

namespace icosa {

struct DegeneratePoint : std::runtime_error { using std::runtime_error::runtime_error; };
struct StepFailure : std::runtime_error { using std::runtime_error::runtime_error; };
struct InsufficientSpread : std::runtime_error { using std::runtime_error::runtime_error; };

struct CurveState {
    double t = 0.0;
    Eigen::VectorXd y;
    double residual = 0.0;  // max |p_i(y)|
    double trace = 0.0;
    bool distinct = true;   // min pairwise vertex distance above threshold
};

enum class CurveMode { Raw, Arclength, Projected };
CurveMode parse_curve_mode(const std::string& s);
const char* to_string(CurveMode m);

// Tangent field of the reduced quadratic system for the d/(1,-1,-1) ansatz:
// tau_i = (-1)^(i-1) det(Dp with column i removed). Kernel property
// tau * Dp^T = 0 is checked on every evaluation.
class TangentField {
  public:
    explicit TangentField(const Ansatz& az);

    const Ansatz& ansatz() const { return *az_; }
    Eigen::VectorXd residuals(const Eigen::VectorXd& y) const { return az_->residuals(y); }
    Eigen::MatrixXd jacobian(const Eigen::VectorXd& y) const { return az_->jacobian(y); }

    // Throws DegeneratePoint when the Jacobian drops below full row rank.
    Eigen::VectorXd tangent(const Eigen::VectorXd& y) const;

    // |tau Dp^T| / (|tau| |Dp|); recomputed for diagnostics and tests.
    double kernel_defect(const Eigen::VectorXd& y) const;

  private:
    const Ansatz* az_;
};

struct CurveRun {
    std::vector<CurveState> states;  // one per step, including the start
    CurveMode mode = CurveMode::Raw;
    double t_end = 0.0;
};

// Classical fixed-step RK4 on phi' = tau(phi) (raw), tau/|tau| (arclength),
// or tau/|tau| with a Gauss-Newton projection back to the variety after each
// step (projected). Every state records its actual residual.
CurveRun trace_curve(const TangentField& field, const Eigen::VectorXd& y0, double t_end,
                     int n_steps, CurveMode mode, const IcoGraph& graph,
                     const Tolerances& tol = {});

struct CurveCertificate {
    std::vector<Coord> members;
    std::vector<double> traces;
    std::vector<double> residuals;
};

// Selects k >= k_min states with pairwise trace gaps above `trace_gap`,
// verifies each is a d-invariant icosahedron, and checks pairwise
// inequivalence under A by exhaustive scan.
CurveCertificate curve_certificate(const CurveRun& run, const TangentField& field,
                                   const IcoGraph& graph, const AutGroup& A,
                                   std::size_t k_min = 5, double trace_gap = 1e-5,
                                   const Tolerances& tol = {});

// Multistarts the d+-- ansatz and returns the found solution with the largest
// tangent magnitude (farthest from rank-degenerate points).
Eigen::VectorXd find_curve_start(const Ansatz& az, const SolveConfig& cfg,
                                 const IcoGraph& graph, const AutGroup& A);

}  // namespace icosa
