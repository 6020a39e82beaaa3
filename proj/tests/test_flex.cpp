#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "icosa/flex.hpp"
#include "icosa/rng.hpp"

using namespace icosa;

namespace {

const Ansatz& flex_ansatz() {
    static const Ansatz az =
        build_ansatz(AnsatzCase::parse("d+--"), test::group(), test::graph());
    return az;
}

Eigen::VectorXd curve_start() {
    static const Eigen::VectorXd y0 = [] {
        SolveConfig cfg;
        cfg.n_starts = 200;
        cfg.rng_seed = 7;
        return find_curve_start(flex_ansatz(), cfg, test::graph(), test::group());
    }();
    return y0;
}

}  // namespace

TEST_CASE("tangent field requires the flex ansatz") {
    Ansatz other = build_ansatz(AnsatzCase::parse("d---"), test::group(), test::graph());
    CHECK_THROWS_AS(TangentField{other}, std::invalid_argument);
    CHECK_NOTHROW(TangentField{flex_ansatz()});
}

TEST_CASE("jacobian has full row rank at the starting solution") {
    const Ansatz& az = flex_ansatz();
    Eigen::VectorXd y0 = curve_start();
    Eigen::MatrixXd J = az.jacobian(y0);
    CHECK(J.rows() == 15);
    CHECK(J.cols() == 16);
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(J);
    cod.setThreshold(1e-10);
    CHECK(cod.rank() == 15);
}

TEST_CASE("kernel property of the minor tangent") {
    TangentField field(flex_ansatz());
    Eigen::VectorXd y0 = curve_start();
    CHECK(field.kernel_defect(y0) < 1e-8);

    // The alternating signs are essential: uniform signs leave the kernel.
    Eigen::MatrixXd J = field.jacobian(y0);
    Eigen::VectorXd tau = field.tangent(y0);
    Eigen::VectorXd unsigned_tau = tau;
    for (int i = 1; i < unsigned_tau.size(); i += 2) unsigned_tau(i) = -unsigned_tau(i);
    double good = (J * tau).cwiseAbs().maxCoeff() / (tau.norm() * J.norm());
    double bad = (J * unsigned_tau).cwiseAbs().maxCoeff() / (tau.norm() * J.norm());
    CHECK(good < 1e-8);
    CHECK(bad > 1e-4);
}

TEST_CASE("tangent degenerates at the zero matrix") {
    TangentField field(flex_ansatz());
    Eigen::VectorXd y = Eigen::VectorXd::Zero(16);
    CHECK_THROWS_AS(field.tangent(y), DegeneratePoint);
}

TEST_CASE("jacobian scales linearly on the homogeneous system") {
    // The a--- ansatz has a zero offset, so its residual quadratic part is
    // homogeneous and the Jacobian is linear in y.
    Ansatz az = build_ansatz(AnsatzCase::parse("a---"), test::group(), test::graph());
    CHECK(az.offset.cwiseAbs().maxCoeff() == 0.0);
    Eigen::VectorXd y(az.dim());
    for (int k = 0; k < az.dim(); ++k)
        y(k) = uniform_sym(3, 1, static_cast<std::uint64_t>(k), 1.0);
    Eigen::MatrixXd J1 = az.jacobian(y);
    Eigen::MatrixXd J2 = az.jacobian(2.0 * y);
    CHECK((J2 - 2.0 * J1).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("raw trace gives small residual drift over the short window") {
    TangentField field(flex_ansatz());
    Eigen::VectorXd y0 = curve_start();
    CurveRun run = trace_curve(field, y0, 0.00018, 1000, CurveMode::Raw, test::graph());
    REQUIRE(run.states.size() == 1001);
    CHECK(run.states.front().t == 0.0);
    CHECK(run.states.front().residual < 1e-10);
    double max_res = 0.0;
    for (const auto& st : run.states) max_res = std::max(max_res, st.residual);
    CHECK(max_res <= 1e-6);
}

TEST_CASE("trace_curve rejects a non-solution start") {
    TangentField field(flex_ansatz());
    Eigen::VectorXd y = Eigen::VectorXd::Constant(16, 0.3);
    CHECK_THROWS_AS(trace_curve(field, y, 1e-4, 10, CurveMode::Raw, test::graph()),
                    std::invalid_argument);
}

TEST_CASE("projected mode keeps the residual at projection accuracy") {
    TangentField field(flex_ansatz());
    Eigen::VectorXd y0 = curve_start();
    CurveRun run = trace_curve(field, y0, 1.0, 150, CurveMode::Projected, test::graph());
    for (const auto& st : run.states) CHECK(st.residual < 1e-10);

    // Trace moves: the family is genuinely flexible.
    double lo = run.states.front().trace, hi = lo;
    for (const auto& st : run.states) {
        lo = std::min(lo, st.trace);
        hi = std::max(hi, st.trace);
    }
    CHECK(hi - lo > 1e-4);
}

TEST_CASE("certificate of pairwise inequivalent d-invariant icosahedra") {
    TangentField field(flex_ansatz());
    Eigen::VectorXd y0 = curve_start();
    CurveRun run = trace_curve(field, y0, 2.0, 250, CurveMode::Projected, test::graph());
    CurveCertificate cert =
        curve_certificate(run, field, test::graph(), test::group(), 5, 1e-5);
    CHECK(cert.members.size() >= 5);
    for (double r : cert.residuals) CHECK(r < 1e-8);
    for (std::size_t i = 0; i < cert.traces.size(); ++i)
        for (std::size_t j = i + 1; j < cert.traces.size(); ++j)
            CHECK(std::abs(cert.traces[i] - cert.traces[j]) > 1e-5);
}

TEST_CASE("certificate demands enough spread") {
    TangentField field(flex_ansatz());
    Eigen::VectorXd y0 = curve_start();
    CurveRun run = trace_curve(field, y0, 1e-6, 5, CurveMode::Arclength, test::graph());
    CHECK_THROWS_AS(curve_certificate(run, field, test::graph(), test::group(), 5, 1e-5),
                    InsufficientSpread);
}

TEST_CASE("the V4-symmetric class lies on the flex variety; tangent recorded") {
    const AutGroup& A = test::group();
    const IcoGraph& g = test::graph();
    SolveConfig cfg;
    cfg.n_starts = 300;
    Ansatz a3 = build_ansatz(AnsatzCase::parse("a---"), A, g);
    ClassCatalog cat = multistart(a3, cfg, g, A);
    REQUIRE(cat.classes.size() == 1);
    Coord M = cat.classes[0].coords;

    // Rotate into the frame where d acts as diag(1,-1,-1).
    Mat3 dd = induced_rotation(M, A.d());
    Eigen::SelfAdjointEigenSolver<Mat3> es(0.5 * (dd + dd.transpose()));
    Mat3 O;
    O.row(0) = es.eigenvectors().col(2).transpose();  // eigenvalue +1
    O.row(1) = es.eigenvectors().col(0).transpose();
    O.row(2) = es.eigenvectors().col(1).transpose();
    Coord Mr = O * M;

    // Spend the remaining planar gauge on the M(3,1) = 0 pin.
    double r = std::hypot(Mr(1, 0), Mr(2, 0));
    REQUIRE(r > 1e-8);
    double cth = Mr(1, 0) / r, sth = Mr(2, 0) / r;
    Mat3 R = Mat3::Identity();
    R(1, 1) = cth;
    R(1, 2) = sth;
    R(2, 1) = -sth;
    R(2, 2) = cth;
    Mr = R * Mr;

    const Ansatz& az = flex_ansatz();
    auto y = fit_parameters(az, Mr, 1e-6);
    REQUIRE(y.has_value());
    CHECK(az.residuals(*y).cwiseAbs().maxCoeff() < 1e-7);

    TangentField field(az);
    bool degenerate = false;
    double tau_norm = 0.0;
    try {
        tau_norm = field.tangent(*y).norm();
    } catch (const DegeneratePoint&) {
        degenerate = true;
    }
    INFO("V4 point: degenerate=", degenerate, " |tau|=", tau_norm);
    CHECK((degenerate || tau_norm > 0.0));
}

TEST_CASE("curve mode parsing") {
    CHECK(parse_curve_mode("raw") == CurveMode::Raw);
    CHECK(parse_curve_mode("arclength") == CurveMode::Arclength);
    CHECK(parse_curve_mode("projected") == CurveMode::Projected);
    CHECK_THROWS_AS(parse_curve_mode("euler"), std::invalid_argument);
}
