#include "icosa/ansatz.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace icosa {

std::string AnsatzCase::id() const {
    std::string s;
    switch (gen) {
        case CaseGen::A: s = "a"; break;
        case CaseGen::D: s = "d"; break;
        case CaseGen::AD: s = "ad"; break;
    }
    for (int v : signs) s += (v > 0 ? '+' : '-');
    if (subcase) s += "/" + std::to_string(subcase);
    return s;
}

AnsatzCase AnsatzCase::parse(const std::string& id) {
    AnsatzCase c;
    std::string s = id;
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string tail = s.substr(slash + 1);
        if (tail == "1") c.subcase = 1;
        else if (tail == "2") c.subcase = 2;
        else throw std::invalid_argument("bad sub-case suffix: " + id);
        s = s.substr(0, slash);
    }
    std::string gen, sig;
    for (char ch : s) {
        if (ch == 'a' || ch == 'd') gen += ch;
        else if (ch == '+' || ch == '-') sig += ch;
        else throw std::invalid_argument("bad case id: " + id);
    }
    if (gen == "a") c.gen = CaseGen::A;
    else if (gen == "d") c.gen = CaseGen::D;
    else if (gen == "ad") c.gen = CaseGen::AD;
    else throw std::invalid_argument("bad generator in case id: " + id);
    if (sig != "+--" && sig != "-++" && sig != "---")
        throw std::invalid_argument("bad signature in case id: " + id);
    for (int i = 0; i < 3; ++i) c.signs[static_cast<std::size_t>(i)] = (sig[static_cast<std::size_t>(i)] == '+') ? 1 : -1;
    if (c.subcase && !(c.gen == CaseGen::AD && sig == "-++"))
        throw std::invalid_argument("sub-case suffix only applies to ad-++: " + id);
    return c;
}

std::vector<AnsatzCase> AnsatzCase::all_cases() {
    std::vector<AnsatzCase> out;
    for (CaseGen g : {CaseGen::A, CaseGen::D, CaseGen::AD}) {
        for (const char* sig : {"+--", "-++", "---"}) {
            AnsatzCase c;
            c.gen = g;
            for (int i = 0; i < 3; ++i) c.signs[static_cast<std::size_t>(i)] = (sig[i] == '+') ? 1 : -1;
            if (g == CaseGen::AD && std::string(sig) == "-++") {
                c.subcase = 1;
                out.push_back(c);
                c.subcase = 2;
                out.push_back(c);
            } else {
                out.push_back(c);
            }
        }
    }
    return out;
}

CaseReport case_expectation(const AnsatzCase& c) {
    std::string sig;
    for (int v : c.signs) sig += (v > 0 ? '+' : '-');
    std::string key;
    switch (c.gen) {
        case CaseGen::A: key = "a"; break;
        case CaseGen::D: key = "d"; break;
        case CaseGen::AD: key = "ad"; break;
    }
    key += sig;

    CaseReport r{c, CaseOutcome::Solutions, 0, ""};
    if (key == "a+--") { r.expected_real_classes = 19; r.note = "largest involution case"; }
    else if (key == "a-++") { r.expected = CaseOutcome::Empty; r.note = "all candidates collapse to three distinct columns"; }
    else if (key == "a---") { r.expected_real_classes = 1; r.note = "single class, Klein four-group symmetry"; }
    else if (key == "d+--") { r.expected = CaseOutcome::Curve; r.expected_real_classes = -1; r.note = "one-dimensional solution set"; }
    else if (key == "d-++") { r.expected_real_classes = 4; }
    else if (key == "d---") { r.expected_real_classes = 4; r.note = "antipodal-midpoint symmetry"; }
    else if (key == "ad+--") { r.expected = CaseOutcome::Empty; r.note = "no real solutions"; }
    else if (key == "ad-++") { r.expected_real_classes = 29; r.note = "counts cover both sign sub-cases"; }
    else if (key == "ad---") { r.expected = CaseOutcome::Empty; r.note = "orientation-reversing action fixes no nonzero vector, but ad fixes 4 vertices"; }
    return r;
}

std::vector<Eigen::VectorXd> eigenspace_basis(const Perm& x, int sign) {
    if (!x.is_involution()) throw std::invalid_argument("eigenspace_basis: x must be an involution");
    std::vector<Eigen::VectorXd> out;
    std::array<bool, kNumVertices> seen{};
    for (int i = 0; i < kNumVertices; ++i) {
        if (seen[static_cast<std::size_t>(i)]) continue;
        int j = x(i);
        if (j == i) {
            if (sign == +1) {
                Eigen::VectorXd v = Eigen::VectorXd::Zero(kNumVertices);
                v(i) = 1.0;
                out.push_back(v);
            }
            seen[static_cast<std::size_t>(i)] = true;
        } else {
            Eigen::VectorXd v = Eigen::VectorXd::Zero(kNumVertices);
            v(i) = 1.0;
            v(j) = (sign == +1) ? 1.0 : -1.0;
            out.push_back(v);
            seen[static_cast<std::size_t>(i)] = seen[static_cast<std::size_t>(j)] = true;
        }
    }
    return out;
}

std::vector<Coord> intertwiner_basis(const Perm& x, const std::array<int, 3>& signs) {
    std::vector<Coord> out;
    for (int r = 0; r < 3; ++r) {
        for (const auto& v : eigenspace_basis(x, signs[static_cast<std::size_t>(r)])) {
            Coord B = Coord::Zero();
            B.row(r) = v.transpose();
            out.push_back(B);
        }
    }
    return out;
}

namespace {

Perm case_generator(const AnsatzCase& c, const AutGroup& A) {
    switch (c.gen) {
        case CaseGen::A: return A.a();
        case CaseGen::D: return A.d();
        case CaseGen::AD: return A.a() * A.d();
    }
    throw std::logic_error("case_generator: unreachable");
}

// Gauge and edge pins per case; see build_ansatz below for the counting.
std::vector<std::array<double, 3>> case_pins(const AnsatzCase& c) {
    std::string sig;
    for (int v : c.signs) sig += (v > 0 ? '+' : '-');
    std::string key;
    switch (c.gen) {
        case CaseGen::A: key = "a"; break;
        case CaseGen::D: key = "d"; break;
        case CaseGen::AD: key = "ad"; break;
    }
    key += sig;

    // Entries are (row, col, value), 0-based.
    if (key == "a+--")
        return {{1, 0, 0.5}, {2, 0, 0.0}, {1, 2, 0.0}};
    if (key == "a-++")
        return {{0, 0, 0.5}};
    if (key == "a---")
        return {{1, 0, 0.0}, {2, 0, 0.0}, {2, 2, 0.0}};
    if (key == "d+--")
        return {{2, 0, 0.0}};
    if (key == "d-++")
        return {{2, 0, 0.0}};
    if (key == "d---")
        return {{1, 0, 0.0}, {2, 0, 0.0}, {2, 1, 0.0}};
    if (key == "ad+--")
        return {{2, 0, 0.0}};
    if (key == "ad-++") {
        double x4 = (c.subcase == 2) ? -0.5 : 0.5;
        // Column 5 (a fixed point of ad) carries the surviving planar gauge;
        // its first entry vanishes automatically.
        return {{2, 4, 0.0}, {0, 2, 0.5}, {0, 3, x4}};
    }
    if (key == "ad---")
        return {{1, 0, 0.0}, {2, 0, 0.0}, {2, 1, 0.0}};
    throw std::logic_error("case_pins: unreachable");
}

}  // namespace

Ansatz build_ansatz(const AnsatzCase& c, const AutGroup& A, const IcoGraph& graph) {
    if (c.gen == CaseGen::AD && c.signs == std::array<int, 3>{-1, 1, 1} && c.subcase == 0)
        throw std::invalid_argument("build_ansatz: ad-++ requires sub-case /1 or /2");

    Ansatz az;
    az.case_id = c;
    az.x = case_generator(c, A);
    az.delta = Mat3::Zero();
    for (int r = 0; r < 3; ++r) az.delta(r, r) = c.signs[static_cast<std::size_t>(r)];
    az.pins = case_pins(c);

    // Row-block structure of the raw parameter space.
    std::array<std::vector<Eigen::VectorXd>, 3> row_basis;
    std::array<int, 3> row_off{};
    int D = 0;
    for (int r = 0; r < 3; ++r) {
        row_basis[static_cast<std::size_t>(r)] = eigenspace_basis(az.x, c.signs[static_cast<std::size_t>(r)]);
        row_off[static_cast<std::size_t>(r)] = D;
        D += static_cast<int>(row_basis[static_cast<std::size_t>(r)].size());
    }

    // Center of mass: -1 eigenvectors of an involution sum to zero entrywise,
    // so only +1 rows need an explicit zero-sum condition.
    for (int r = 0; r < 3; ++r) az.com_row[static_cast<std::size_t>(r)] = (c.signs[static_cast<std::size_t>(r)] == +1);

    std::size_t ncons = az.pins.size();
    for (bool f : az.com_row)
        if (f) ++ncons;

    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(static_cast<int>(ncons), D);
    Eigen::VectorXd bvec = Eigen::VectorXd::Zero(static_cast<int>(ncons));
    int row = 0;
    for (int r = 0; r < 3; ++r) {
        if (!az.com_row[static_cast<std::size_t>(r)]) continue;
        for (std::size_t k = 0; k < row_basis[static_cast<std::size_t>(r)].size(); ++k)
            C(row, row_off[static_cast<std::size_t>(r)] + static_cast<int>(k)) = row_basis[static_cast<std::size_t>(r)][k].sum();
        ++row;
    }
    for (const auto& pin : az.pins) {
        int pr = static_cast<int>(pin[0]), pc = static_cast<int>(pin[1]);
        for (std::size_t k = 0; k < row_basis[static_cast<std::size_t>(pr)].size(); ++k)
            C(row, row_off[static_cast<std::size_t>(pr)] + static_cast<int>(k)) = row_basis[static_cast<std::size_t>(pr)][k](pc);
        bvec(row) = pin[2];
        ++row;
    }

    Eigen::VectorXd p0;
    int rank = 0;
    if (ncons > 0) {
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(C);
        cod.setThreshold(1e-12);
        p0 = cod.solve(bvec);
        rank = static_cast<int>(cod.rank());
        if ((C * p0 - bvec).cwiseAbs().maxCoeff() > 1e-10)
            throw InfeasiblePins("build_ansatz: inconsistent pin system for case " + c.id());
    } else {
        p0 = Eigen::VectorXd::Zero(D);
    }

    auto to_coord = [&](const Eigen::VectorXd& p) {
        Coord M = Coord::Zero();
        for (int r = 0; r < 3; ++r)
            for (std::size_t k = 0; k < row_basis[static_cast<std::size_t>(r)].size(); ++k)
                M.row(r) += p(row_off[static_cast<std::size_t>(r)] + static_cast<int>(k)) *
                            row_basis[static_cast<std::size_t>(r)][k].transpose();
        return M;
    };
    az.offset = to_coord(p0);

    // Nullspace of the constraint matrix = the free directions.
    if (ncons > 0) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(C, Eigen::ComputeFullV);
        for (int k = rank; k < D; ++k) {
            Eigen::VectorXd dir = svd.matrixV().col(k);
            int imax = 0;
            for (int i = 1; i < D; ++i)
                if (std::abs(dir(i)) > std::abs(dir(imax))) imax = i;
            if (dir(imax) < 0) dir = -dir;
            az.basis.push_back(to_coord(dir));
        }
    } else {
        for (int k = 0; k < D; ++k)
            az.basis.push_back(to_coord(Eigen::VectorXd::Unit(D, k)));
    }

    // Edge orbits under <x>, keyed by canonical representatives.
    const auto& edges = graph.edges();
    std::set<int> done;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (done.count(static_cast<int>(e))) continue;
        VertexPair im = IcoGraph::apply(az.x, edges[e]);
        int other = graph.edge_index(im[0], im[1]);
        if (other < 0) throw std::logic_error("build_ansatz: x does not preserve edges");
        az.edge_reps.push_back(edges[e]);
        std::vector<int> orbit{static_cast<int>(e)};
        done.insert(static_cast<int>(e));
        if (other != static_cast<int>(e)) {
            orbit.push_back(other);
            done.insert(other);
        }
        az.edge_orbit_idx.push_back(orbit);
    }
    return az;
}

Coord Ansatz::materialize(const Eigen::VectorXd& y) const {
    if (y.size() != dim())
        throw DimensionMismatch("materialize: expected " + std::to_string(dim()) +
                                " parameters, got " + std::to_string(y.size()));
    Coord M = offset;
    for (int k = 0; k < dim(); ++k) M += y(k) * basis[static_cast<std::size_t>(k)];
    return M;
}

Eigen::VectorXd Ansatz::residuals(const Eigen::VectorXd& y) const {
    Coord M = materialize(y);
    Eigen::VectorXd r(static_cast<int>(edge_reps.size()));
    for (std::size_t k = 0; k < edge_reps.size(); ++k)
        r(static_cast<int>(k)) =
            (M.col(edge_reps[k][0]) - M.col(edge_reps[k][1])).squaredNorm() - 1.0;
    return r;
}

std::optional<Eigen::VectorXd> fit_parameters(const Ansatz& az, const Coord& M, double tol) {
    Eigen::MatrixXd B(36, az.dim());
    for (int k = 0; k < az.dim(); ++k)
        B.col(k) = Eigen::Map<const Eigen::VectorXd>(az.basis[static_cast<std::size_t>(k)].data(), 36);
    Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(M.data(), 36) -
                          Eigen::Map<const Eigen::VectorXd>(az.offset.data(), 36);
    Eigen::VectorXd y = B.colPivHouseholderQr().solve(rhs);
    if ((az.materialize(y) - M).cwiseAbs().maxCoeff() > tol) return std::nullopt;
    return y;
}

Eigen::MatrixXd Ansatz::jacobian(const Eigen::VectorXd& y) const {
    Coord M = materialize(y);
    Eigen::MatrixXd J(static_cast<int>(edge_reps.size()), dim());
    for (std::size_t e = 0; e < edge_reps.size(); ++e) {
        Vec3 diff = M.col(edge_reps[e][0]) - M.col(edge_reps[e][1]);
        for (int k = 0; k < dim(); ++k) {
            const Coord& B = basis[static_cast<std::size_t>(k)];
            J(static_cast<int>(e), k) =
                2.0 * diff.dot(B.col(edge_reps[e][0]) - B.col(edge_reps[e][1]));
        }
    }
    return J;
}

}  // namespace icosa
