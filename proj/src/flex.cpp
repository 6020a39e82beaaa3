#include "icosa/flex.hpp"

#include <algorithm>
#include <cmath>

namespace icosa {

CurveMode parse_curve_mode(const std::string& s) {
    if (s == "raw") return CurveMode::Raw;
    if (s == "arclength") return CurveMode::Arclength;
    if (s == "projected") return CurveMode::Projected;
    throw std::invalid_argument("unknown curve mode: " + s);
}

const char* to_string(CurveMode m) {
    switch (m) {
        case CurveMode::Raw: return "raw";
        case CurveMode::Arclength: return "arclength";
        case CurveMode::Projected: return "projected";
    }
    return "?";
}

TangentField::TangentField(const Ansatz& az) : az_(&az) {
    if (az.case_id.gen != CaseGen::D || az.case_id.signs != std::array<int, 3>{1, -1, -1})
        throw std::invalid_argument("TangentField: requires the d+-- ansatz");
    if (az.dim() != 16 || az.edge_reps.size() != 15)
        throw std::logic_error("TangentField: expected 15 equations in 16 parameters");
}

Eigen::VectorXd TangentField::tangent(const Eigen::VectorXd& y) const {
    Eigen::MatrixXd J = az_->jacobian(y);
    const int m = static_cast<int>(J.rows());   // 15
    const int n = static_cast<int>(J.cols());   // 16

    Eigen::VectorXd tau(n);
    Eigen::MatrixXd minor(m, m);
    for (int skip = 0; skip < n; ++skip) {
        int c = 0;
        for (int j = 0; j < n; ++j) {
            if (j == skip) continue;
            minor.col(c++) = J.col(j);
        }
        double det = Eigen::PartialPivLU<Eigen::MatrixXd>(minor).determinant();
        tau(skip) = (skip % 2 == 0) ? det : -det;
    }

    // Hadamard-style scale for the degeneracy threshold: product of the m
    // largest column norms.
    std::vector<double> norms(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) norms[static_cast<std::size_t>(j)] = J.col(j).norm();
    std::sort(norms.begin(), norms.end(), std::greater<double>());
    double scale = 1.0;
    for (int k = 0; k < m; ++k) scale *= norms[static_cast<std::size_t>(k)];
    if (!(tau.cwiseAbs().maxCoeff() > 1e-14 * scale))
        throw DegeneratePoint("tangent: Jacobian rank below 15 (|tau| ~ 0)");

    double defect = (J * tau).cwiseAbs().maxCoeff() / (tau.norm() * J.norm());
    if (defect > 1e-8)
        throw std::logic_error("tangent: kernel defect " + std::to_string(defect));
    return tau;
}

double TangentField::kernel_defect(const Eigen::VectorXd& y) const {
    Eigen::MatrixXd J = az_->jacobian(y);
    Eigen::VectorXd tau = tangent(y);
    return (J * tau).cwiseAbs().maxCoeff() / (tau.norm() * J.norm());
}

namespace {

CurveState snapshot(const Ansatz& az, double t, const Eigen::VectorXd& y,
                    const IcoGraph& graph, const Tolerances& tol) {
    (void)graph;
    CurveState st;
    st.t = t;
    st.y = y;
    st.residual = az.residuals(y).cwiseAbs().maxCoeff();
    Coord M = az.materialize(y);
    st.trace = (M.transpose() * M).trace();
    double mind = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kNumVertices; ++i)
        for (int j = i + 1; j < kNumVertices; ++j)
            mind = std::min(mind, (M.col(i) - M.col(j)).norm());
    st.distinct = mind > tol.distinct;
    return st;
}

// Full-step Gauss-Newton pullback onto the variety.
void project_to_variety(const Ansatz& az, Eigen::VectorXd& y, double target) {
    for (int iter = 0; iter < 12; ++iter) {
        Eigen::VectorXd r = az.residuals(y);
        if (r.cwiseAbs().maxCoeff() < target) return;
        Eigen::MatrixXd J = az.jacobian(y);
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(J);
        cod.setThreshold(1e-10);
        y += cod.solve(-r);
    }
    Eigen::VectorXd r = az.residuals(y);
    if (r.cwiseAbs().maxCoeff() > 1e-10)
        throw StepFailure("project_to_variety: projection stalled at residual " +
                          std::to_string(r.cwiseAbs().maxCoeff()));
}

}  // namespace

CurveRun trace_curve(const TangentField& field, const Eigen::VectorXd& y0, double t_end,
                     int n_steps, CurveMode mode, const IcoGraph& graph,
                     const Tolerances& tol) {
    const Ansatz& az = field.ansatz();
    if (az.residuals(y0).cwiseAbs().maxCoeff() > tol.residual)
        throw std::invalid_argument("trace_curve: start point does not solve the system");

    auto velocity = [&](const Eigen::VectorXd& y) -> Eigen::VectorXd {
        Eigen::VectorXd tau = field.tangent(y);
        if (mode == CurveMode::Raw) return tau;
        return tau / tau.norm();
    };

    CurveRun run;
    run.mode = mode;
    run.t_end = t_end;
    double h = t_end / n_steps;
    Eigen::VectorXd y = y0;
    if (mode == CurveMode::Projected) project_to_variety(az, y, 1e-12);
    run.states.push_back(snapshot(az, 0.0, y, graph, tol));
    for (int s = 1; s <= n_steps; ++s) {
        Eigen::VectorXd k1 = velocity(y);
        Eigen::VectorXd k2 = velocity(y + 0.5 * h * k1);
        Eigen::VectorXd k3 = velocity(y + 0.5 * h * k2);
        Eigen::VectorXd k4 = velocity(y + h * k3);
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (mode == CurveMode::Projected) project_to_variety(az, y, 1e-12);

        CurveState st = snapshot(az, s * h, y, graph, tol);
        if (st.residual > 1e-3)
            throw StepFailure("trace_curve: residual " + std::to_string(st.residual) +
                              " at step " + std::to_string(s));
        run.states.push_back(std::move(st));
    }
    return run;
}

Eigen::VectorXd find_curve_start(const Ansatz& az, const SolveConfig& cfg,
                                 const IcoGraph& graph, const AutGroup& A) {
    TangentField field(az);
    ClassCatalog cat = multistart(az, cfg, graph, A);
    Eigen::VectorXd best;
    double best_tau = -1.0;
    for (const auto& sol : cat.classes) {
        auto y = fit_parameters(az, sol.coords, 1e-8);
        if (!y || az.residuals(*y).cwiseAbs().maxCoeff() > cfg.residual_tol) continue;
        try {
            double tn = field.tangent(*y).norm();
            if (tn > best_tau) {
                best_tau = tn;
                best = *y;
            }
        } catch (const DegeneratePoint&) {
        }
    }
    if (best_tau < 0)
        throw StepFailure("find_curve_start: no nondegenerate starting solution found");
    return best;
}

CurveCertificate curve_certificate(const CurveRun& run, const TangentField& field,
                                   const IcoGraph& graph, const AutGroup& A,
                                   std::size_t k_min, double trace_gap,
                                   const Tolerances& tol) {
    const Ansatz& az = field.ansatz();
    std::vector<const CurveState*> kept;
    for (const CurveState& st : run.states) {
        if (!st.distinct || st.residual > tol.residual) continue;
        bool far = true;
        for (const CurveState* k : kept)
            if (std::abs(k->trace - st.trace) <= trace_gap) { far = false; break; }
        if (far) kept.push_back(&st);
    }
    if (kept.size() < k_min)
        throw InsufficientSpread("curve_certificate: only " + std::to_string(kept.size()) +
                                 " states with trace gaps > " + std::to_string(trace_gap));

    CurveCertificate cert;
    for (const CurveState* st : kept) {
        Coord M = az.materialize(st->y);
        if (!is_icosahedron(M, graph, tol))
            throw InsufficientSpread("curve_certificate: selected state fails validation");
        Gram G = gram_from_coords(M);
        double dev = (gram_conjugate(G, A.d()) - G).cwiseAbs().maxCoeff();
        if (dev > tol.equivalence)
            throw InsufficientSpread("curve_certificate: state not d-invariant");
        cert.members.push_back(M);
        cert.traces.push_back(st->trace);
        cert.residuals.push_back(st->residual);
    }
    for (std::size_t i = 0; i < cert.members.size(); ++i) {
        Gram Gi = gram_from_coords(cert.members[i]);
        for (std::size_t j = i + 1; j < cert.members.size(); ++j) {
            Gram Gj = gram_from_coords(cert.members[j]);
            if (gram_equivalent(Gi, Gj, A, tol.equivalence))
                throw InsufficientSpread("curve_certificate: members " + std::to_string(i) +
                                         " and " + std::to_string(j) + " are equivalent");
        }
    }
    return cert;
}

}  // namespace icosa
