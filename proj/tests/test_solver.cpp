#include <doctest.h>

#include <cmath>
#include <set>

#include "fixtures.hpp"
#include "icosa/rng.hpp"
#include "icosa/solver.hpp"

using namespace icosa;

namespace {

// Rotate M so column 1 lies on the x-axis and column 2 in the xy-plane,
// matching the d--- gauge pins.
Coord align_first_two_columns(const Coord& M) {
    Vec3 u1 = M.col(0).normalized();
    Vec3 v2 = M.col(1) - M.col(1).dot(u1) * u1;
    Vec3 u2 = v2.normalized();
    Vec3 u3 = u1.cross(u2);
    Mat3 O;
    O.row(0) = u1.transpose();
    O.row(1) = u2.transpose();
    O.row(2) = u3.transpose();
    return O * M;
}

const Ansatz& dminus_ansatz() {
    static const Ansatz az =
        build_ansatz(AnsatzCase::parse("d---"), test::group(), test::graph());
    return az;
}

}  // namespace

TEST_CASE("solve_once converges immediately from an exact solution") {
    const Ansatz& az = dminus_ansatz();
    Coord aligned = align_first_two_columns(test::regular());
    auto y0 = fit_parameters(az, aligned, 1e-9);
    REQUIRE(y0.has_value());

    SolveConfig cfg;
    SolveResult r = solve_once(az, *y0, cfg);
    CHECK(r.ok);
    CHECK(r.iterations <= 2);
    CHECK(r.max_residual < 1e-12);
}

TEST_CASE("solve_once reconverges from a small perturbation to an equivalent Gram") {
    const Ansatz& az = dminus_ansatz();
    const AutGroup& A = test::group();
    Coord aligned = align_first_two_columns(test::regular());
    auto y0 = fit_parameters(az, aligned, 1e-9);
    REQUIRE(y0.has_value());

    Eigen::VectorXd noise(az.dim());
    for (int k = 0; k < az.dim(); ++k)
        noise(k) = uniform_sym(31, 0, static_cast<std::uint64_t>(k), 1.0);
    noise *= 1e-2 / noise.norm();

    SolveConfig cfg;
    SolveResult r = solve_once(az, *y0 + noise, cfg);
    REQUIRE(r.ok);
    Gram G0 = gram_from_coords(aligned);
    Gram G1 = gram_from_coords(az.materialize(r.y));
    CHECK(gram_equivalent(G0, G1, A).has_value());
}

TEST_CASE("solve_once rejects a start of the wrong dimension") {
    SolveConfig cfg;
    CHECK_THROWS_AS(solve_once(dminus_ansatz(), Eigen::VectorXd::Zero(3), cfg),
                    DimensionMismatch);
}

TEST_CASE("solve_once never accepts a point violating the full edge system") {
    const Ansatz& az = dminus_ansatz();
    const IcoGraph& g = test::graph();
    SolveConfig cfg;
    for (int i = 0; i < 40; ++i) {
        Eigen::VectorXd y0(az.dim());
        for (int k = 0; k < az.dim(); ++k)
            y0(k) = uniform_sym(5, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(k), 1.5);
        SolveResult r = solve_once(az, y0, cfg);
        if (!r.ok) continue;
        Coord M = az.materialize(r.y);
        CHECK(edge_residuals(M, g).cwiseAbs().maxCoeff() < cfg.residual_tol);
    }
}

TEST_CASE("trace oracle evaluation") {
    const TraceOracle& reg = oracle_by_label("C2xA5");
    double root = (15.0 + 3.0 * std::sqrt(5.0)) / 2.0;
    CHECK(verify_trace(reg, root) < 1e-12);
    CHECK(verify_trace(reg, 10.0) == 5.0);

    CHECK(trace_oracle_table().size() == 14);
    int certified = 0;
    for (const auto& o : trace_oracle_table())
        if (o.certified) ++certified;
    CHECK(certified == 9);
    CHECK_THROWS_AS(verify_trace(oracle_by_label("C2(a)-deg172"), 5.0), std::invalid_argument);

    // Contributions across all rows sum to the 35 real classes.
    int total = 0;
    for (const auto& o : trace_oracle_table()) total += o.contribution;
    CHECK(total == 35);
}

TEST_CASE("single-dent trace satisfies its minimal polynomial") {
    double dent_trace = 22.0 / 3.0 + 17.0 * std::sqrt(5.0) / 15.0;
    CHECK(verify_trace(oracle_by_label("D10-deg2"), dent_trace) < 1e-9);
}

TEST_CASE("multistart on d--- finds the four antipodally symmetric classes") {
    const AutGroup& A = test::group();
    const IcoGraph& g = test::graph();
    const Ansatz& az = dminus_ansatz();
    SolveConfig cfg;
    cfg.n_starts = 400;
    cfg.rng_seed = 7;
    ClassCatalog cat = multistart(az, cfg, g, A);
    REQUIRE(cat.classes.size() == 4);

    std::multiset<std::string> oracles;
    for (const auto& sol : cat.classes) {
        REQUIRE(sol.matched_oracle.has_value());
        oracles.insert(*sol.matched_oracle);
        CHECK(verify_trace(oracle_by_label(*sol.matched_oracle), sol.trace) < 1e-9);
    }
    CHECK(oracles.count("C2xA5") == 2);
    CHECK(oracles.count("C2xD10-deg2") == 2);

    // Galois pairs: the two C2xA5 traces are the two distinct roots.
    std::vector<double> reg_traces;
    for (const auto& sol : cat.classes)
        if (*sol.matched_oracle == "C2xA5") reg_traces.push_back(sol.trace);
    REQUIRE(reg_traces.size() == 2);
    CHECK(std::abs(reg_traces[0] - reg_traces[1]) > 1.0);

    // Catalog classes are pairwise inequivalent.
    for (std::size_t i = 0; i < cat.classes.size(); ++i)
        for (std::size_t j = i + 1; j < cat.classes.size(); ++j)
            CHECK(!gram_equivalent(cat.classes[i].gram, cat.classes[j].gram, A));
}

TEST_CASE("multistart determinism and monotonicity") {
    const AutGroup& A = test::group();
    const IcoGraph& g = test::graph();
    const Ansatz& az = dminus_ansatz();

    SolveConfig small;
    small.n_starts = 150;
    small.rng_seed = 11;
    SolveConfig big = small;
    big.n_starts = 300;

    ClassCatalog c1 = multistart(az, small, g, A);
    ClassCatalog c2 = multistart(az, small, g, A);
    REQUIRE(c1.classes.size() == c2.classes.size());
    for (std::size_t k = 0; k < c1.classes.size(); ++k) {
        CHECK(c1.classes[k].trace == c2.classes[k].trace);
        CHECK(c1.classes[k].count_found == c2.classes[k].count_found);
        CHECK((c1.classes[k].gram - c2.classes[k].gram).cwiseAbs().maxCoeff() == 0.0);
    }

    // A longer run never loses a class.
    ClassCatalog c3 = multistart(az, big, g, A);
    for (const auto& sol : c1.classes) {
        bool found = false;
        for (const auto& other : c3.classes)
            if (gram_equivalent(sol.gram, other.gram, A)) { found = true; break; }
        CHECK(found);
    }
}

TEST_CASE("automorphism data on the a--- class") {
    const AutGroup& A = test::group();
    const IcoGraph& g = test::graph();
    SolveConfig cfg;
    cfg.n_starts = 400;
    Ansatz az = build_ansatz(AnsatzCase::parse("a---"), A, g);
    ClassCatalog cat = multistart(az, cfg, g, A);
    REQUIRE(cat.classes.size() == 1);
    const IcosaSolution& sol = cat.classes[0];
    CHECK(sol.aut.size() == 4);
    CHECK(std::find(sol.aut.begin(), sol.aut.end(), A.a()) != sol.aut.end());
    CHECK(std::find(sol.aut.begin(), sol.aut.end(), A.d()) != sol.aut.end());

    // Linear actions: a maps to the point reflection; d and ad carry traces
    // -1 and +1.
    CHECK(sol.delta_traces.at(A.a().cycle_string()) == doctest::Approx(-3.0).epsilon(1e-8));
    CHECK(sol.delta_traces.at(A.d().cycle_string()) == doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(sol.delta_traces.at((A.a() * A.d()).cycle_string()) ==
          doctest::Approx(1.0).epsilon(1e-8));

    // Classes fixed by a sit in centralizer orbits of length dividing 4.
    std::vector<Gram> orbit{sol.gram};
    for (const Perm& c : A.centralizer(A.a())) {
        Gram Gc = gram_conjugate(sol.gram, c);
        bool seen = false;
        for (const Gram& G : orbit)
            if ((G - Gc).cwiseAbs().maxCoeff() < 1e-6) { seen = true; break; }
        if (!seen) orbit.push_back(Gc);
    }
    CHECK(4 % orbit.size() == 0);
}

TEST_CASE("classification report rows") {
    const AutGroup& A = test::group();
    const IcoGraph& g = test::graph();
    SolveConfig cfg;
    cfg.n_starts = 400;
    ClassCatalog cat = multistart(dminus_ansatz(), cfg, g, A);
    ClassificationReport rep = classification_report({cat}, g, A);

    int found_rows = 0;
    for (const auto& row : rep.rows) {
        if (row.group_name == "C2xA5") {
            CHECK(row.observed == 2);
            CHECK(row.expected_count == 2);
            CHECK(row.count_certified);
            ++found_rows;
        }
        if (row.group_name == "C2xD10") {
            CHECK(row.observed == 2);  // only the antipodal pair arises here
            CHECK(row.expected_count == 4);
            ++found_rows;
        }
    }
    CHECK(found_rows == 2);
    CHECK(rep.merged_classes.size() == 4);

    std::string text = render_report(rep);
    CHECK(text.find("C2xA5") != std::string::npos);
    CHECK(text.find("infinite") != std::string::npos);
}

TEST_CASE("cross-case dedup merges recurring classes") {
    const AutGroup& A = test::group();
    const IcoGraph& g = test::graph();
    SolveConfig cfg;
    cfg.n_starts = 300;
    ClassCatalog cd = multistart(dminus_ansatz(), cfg, g, A);
    ClassCatalog ca = multistart(build_ansatz(AnsatzCase::parse("a---"), A, g), cfg, g, A);
    ClassCatalog cd2 = multistart(dminus_ansatz(), cfg, g, A);

    ClassificationReport rep = classification_report({cd, ca, cd2}, g, A);
    // Duplicated d--- catalogs collapse: 4 distinct classes plus the a--- one.
    CHECK(rep.merged_classes.size() == 5);
}
