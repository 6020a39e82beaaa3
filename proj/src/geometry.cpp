#include "icosa/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace icosa {

Gram gram_from_coords(const Coord& M) { return M.transpose() * M; }

Gram gram_conjugate(const Gram& G, const Perm& g) {
    Gram out;
    for (int i = 0; i < kNumVertices; ++i)
        for (int j = 0; j < kNumVertices; ++j) out(i, j) = G(g(i), g(j));
    return out;
}

Coord coords_permute(const Coord& M, const Perm& g) {
    Coord out;
    for (int i = 0; i < kNumVertices; ++i) out.col(i) = M.col(g(i));
    return out;
}

Coord coords_from_gram(const Gram& G, double psd_tol) {
    Gram S = 0.5 * (G + G.transpose());
    Eigen::SelfAdjointEigenSolver<Gram> es(S);
    const auto& vals = es.eigenvalues();  // ascending
    if (vals(0) < -psd_tol)
        throw NotPSD("coords_from_gram: eigenvalue " + std::to_string(vals(0)) + " below -tol");
    if (vals(kNumVertices - 4) > psd_tol)
        throw RankExceeded("coords_from_gram: 4th eigenvalue " +
                           std::to_string(vals(kNumVertices - 4)) + " above tol");
    Coord M = Coord::Zero();
    for (int r = 0; r < 3; ++r) {
        int k = kNumVertices - 1 - r;  // descending
        double lam = std::max(vals(k), 0.0);
        Eigen::VectorXd v = es.eigenvectors().col(k);
        // Deterministic sign: largest-magnitude component positive.
        int imax = 0;
        for (int i = 1; i < kNumVertices; ++i)
            if (std::abs(v(i)) > std::abs(v(imax))) imax = i;
        if (v(imax) < 0) v = -v;
        M.row(r) = std::sqrt(lam) * v.transpose();
    }
    return M;
}

Eigen::VectorXd edge_residuals(const Coord& M, const IcoGraph& graph) {
    const auto& edges = graph.edges();
    Eigen::VectorXd r(edges.size());
    for (std::size_t k = 0; k < edges.size(); ++k)
        r(static_cast<int>(k)) = (M.col(edges[k][0]) - M.col(edges[k][1])).squaredNorm() - 1.0;
    return r;
}

IcosaCheck check_icosahedron(const Coord& M, const IcoGraph& graph, const Tolerances& tol) {
    IcosaCheck out;
    out.max_edge_residual = edge_residuals(M, graph).cwiseAbs().maxCoeff();
    out.min_pair_distance = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kNumVertices; ++i)
        for (int j = i + 1; j < kNumVertices; ++j)
            out.min_pair_distance = std::min(out.min_pair_distance, (M.col(i) - M.col(j)).norm());
    out.center_norm = (M.rowwise().sum()).norm();
    Eigen::JacobiSVD<Eigen::Matrix<double, 3, kNumVertices>> svd(M);
    out.rank = 0;
    for (int i = 0; i < 3; ++i)
        if (svd.singularValues()(i) > 1e-7 * std::max(1.0, svd.singularValues()(0))) ++out.rank;
    out.ok = out.max_edge_residual < tol.residual && out.min_pair_distance > tol.distinct &&
             out.center_norm < tol.residual * kNumVertices + 1e-9;
    return out;
}

bool is_icosahedron(const Coord& M, const IcoGraph& graph, const Tolerances& tol) {
    return check_icosahedron(M, graph, tol).ok;
}

std::optional<Perm> gram_equivalent(const Gram& G1, const Gram& G2, const AutGroup& A,
                                    double tol) {
    for (const Perm& g : A.elements()) {
        double dev = 0.0;
        for (int i = 0; i < kNumVertices && dev < tol; ++i)
            for (int j = 0; j < kNumVertices; ++j) {
                double d = std::abs(G1(g(i), g(j)) - G2(i, j));
                if (d > dev) dev = d;
                if (dev >= tol) break;
            }
        if (dev < tol) return g;
    }
    return std::nullopt;
}

std::vector<Perm> automorphism_group(const Gram& G, const AutGroup& A, double tol) {
    std::vector<Perm> aut;
    for (const Perm& g : A.elements()) {
        double dev = 0.0;
        for (int i = 0; i < kNumVertices; ++i)
            for (int j = 0; j < kNumVertices; ++j)
                dev = std::max(dev, std::abs(G(g(i), g(j)) - G(i, j)));
        if (dev < tol)
            aut.push_back(g);
        else if (dev < 10.0 * tol)
            throw ToleranceAmbiguity("automorphism_group: deviation " + std::to_string(dev) +
                                     " within ambiguity band for " + g.cycle_string());
    }
    // Stabilizers are closed; anything else means the tolerance split a group.
    std::vector<Perm> sorted = aut;
    std::sort(sorted.begin(), sorted.end());
    for (const Perm& g : aut)
        for (const Perm& h : aut)
            if (!std::binary_search(sorted.begin(), sorted.end(), g * h))
                throw ToleranceAmbiguity("automorphism_group: computed set not closed");
    return aut;
}

Mat3 induced_rotation(const Coord& M, const Perm& g, double tol) {
    Mat3 MMt = M * M.transpose();
    Eigen::SelfAdjointEigenSolver<Mat3> es(MMt);
    if (es.eigenvalues()(0) < 1e-10 * std::max(1.0, es.eigenvalues()(2)))
        throw RankDeficient("induced_rotation: coordinate matrix has rank < 3");
    Coord Mg = coords_permute(M, g);
    Mat3 delta = (Mg * M.transpose()) * MMt.inverse();
    double defect = (delta * M - Mg).cwiseAbs().maxCoeff();
    if (defect > tol)
        throw NotAnAutomorphism("induced_rotation: intertwining defect " + std::to_string(defect) +
                                " for " + g.cycle_string());
    double orth = (delta.transpose() * delta - Mat3::Identity()).cwiseAbs().maxCoeff();
    if (orth > tol)
        throw NotAnAutomorphism("induced_rotation: non-orthogonal action, defect " +
                                std::to_string(orth));
    return delta;
}

Coord regular_icosahedron(const IcoGraph& graph) {
    const double phi = 0.5 * (1.0 + std::sqrt(5.0));
    // Half of the classical (0, +-1, +-phi) family: unit edges.
    std::vector<Vec3> pts;
    for (double s1 : {1.0, -1.0})
        for (double s2 : {1.0, -1.0}) {
            pts.emplace_back(0.0, 0.5 * s1, 0.5 * phi * s2);
            pts.emplace_back(0.5 * s1, 0.5 * phi * s2, 0.0);
            pts.emplace_back(0.5 * phi * s2, 0.0, 0.5 * s1);
        }

    // Geometric adjacency: squared distance 1 within rounding.
    auto adjacent = [&](int i, int j) {
        return std::abs((pts[static_cast<std::size_t>(i)] - pts[static_cast<std::size_t>(j)]).squaredNorm() - 1.0) < 1e-9;
    };

    // Assign point indices to vertex labels so combinatorial edges match
    // geometric adjacency. Deterministic first solution via backtracking.
    std::array<int, kNumVertices> assign;
    assign.fill(-1);
    std::array<bool, kNumVertices> used{};
    auto compatible = [&](int v, int p) {
        for (int w = 0; w < v; ++w) {
            bool e = graph.is_edge(v, w);
            if (e != adjacent(p, assign[static_cast<std::size_t>(w)])) return false;
        }
        return true;
    };
    std::function<bool(int)> place = [&](int v) -> bool {
        if (v == kNumVertices) return true;
        for (int p = 0; p < kNumVertices; ++p) {
            if (used[static_cast<std::size_t>(p)] || !compatible(v, p)) continue;
            assign[static_cast<std::size_t>(v)] = p;
            used[static_cast<std::size_t>(p)] = true;
            if (place(v + 1)) return true;
            used[static_cast<std::size_t>(p)] = false;
            assign[static_cast<std::size_t>(v)] = -1;
        }
        return false;
    };
    if (!place(0)) throw std::logic_error("regular_icosahedron: labeling search failed");

    Coord M;
    for (int v = 0; v < kNumVertices; ++v) M.col(v) = pts[static_cast<std::size_t>(assign[static_cast<std::size_t>(v)])];
    Vec3 center = M.rowwise().mean();
    M.colwise() -= center;  // exact zero already, but keep the contract explicit
    return M;
}

}  // namespace icosa
