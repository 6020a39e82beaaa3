#include "icosa/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>

namespace icosa {

namespace {

bool is_unit_equiangular(const std::array<Vec3, 3>& t, double tol) {
    for (int i = 0; i < 3; ++i) {
        double len = (t[static_cast<std::size_t>(i)] - t[static_cast<std::size_t>((i + 1) % 3)]).norm();
        if (std::abs(len - 1.0) > tol) return false;
    }
    return true;
}

}  // namespace

std::optional<CentralPoint> central_point(const std::array<Vec3, 3>& t1,
                                          const std::array<Vec3, 3>& t2,
                                          const InvariantTolerances& tol) {
    if (!is_unit_equiangular(t1, tol.triangle) || !is_unit_equiangular(t2, tol.triangle))
        throw std::invalid_argument("central_point: triangles must be unit equiangular");

    std::array<Vec3, 6> v{t1[0], t1[1], t1[2], t2[0], t2[1], t2[2]};

    // Coplanar six points: by convention no central point (shared-edge
    // coplanar pairs and coinciding-circumcircle pairs both land here).
    Vec3 centroid = Vec3::Zero();
    for (const Vec3& p : v) centroid += p;
    centroid /= 6.0;
    Eigen::Matrix<double, 3, 6> centered;
    for (int i = 0; i < 6; ++i) centered.col(i) = v[static_cast<std::size_t>(i)] - centroid;
    Eigen::JacobiSVD<Eigen::Matrix<double, 3, 6>> svd(centered);
    if (svd.singularValues()(2) < tol.coplanar) return std::nullopt;

    // |P - v_i|^2 = |P - v_0|^2 linearized: 2 (v_i - v_0) . P = |v_i|^2 - |v_0|^2.
    Eigen::Matrix<double, 5, 3> Amat;
    Eigen::Matrix<double, 5, 1> rhs;
    for (int i = 1; i < 6; ++i) {
        Amat.row(i - 1) = 2.0 * (v[static_cast<std::size_t>(i)] - v[0]).transpose();
        rhs(i - 1) = v[static_cast<std::size_t>(i)].squaredNorm() - v[0].squaredNorm();
    }
    Vec3 P = Amat.jacobiSvd(Eigen::ComputeFullU | Eigen::ComputeFullV).solve(rhs);
    if ((Amat * P - rhs).cwiseAbs().maxCoeff() > tol.consistency) return std::nullopt;

    CentralPoint cp;
    cp.point = P;
    double rv = 0.0;
    for (const Vec3& p : v) rv += (P - p).norm();
    cp.vertex_radius = rv / 6.0;

    std::array<Vec3, 6> mids{0.5 * (t1[0] + t1[1]), 0.5 * (t1[1] + t1[2]),
                             0.5 * (t1[2] + t1[0]), 0.5 * (t2[0] + t2[1]),
                             0.5 * (t2[1] + t2[2]), 0.5 * (t2[2] + t2[0])};
    double rm_min = std::numeric_limits<double>::infinity(), rm_max = 0.0, rm_sum = 0.0;
    for (const Vec3& m : mids) {
        double r = (P - m).norm();
        rm_min = std::min(rm_min, r);
        rm_max = std::max(rm_max, r);
        rm_sum += r;
    }
    if (rm_max - rm_min > tol.consistency * 10.0) return std::nullopt;
    cp.midpoint_radius = rm_sum / 6.0;
    return cp;
}

std::vector<SignificantPoint> significant_points(const Coord& M, const IcoGraph& graph,
                                                 const InvariantTolerances& tol) {
    const auto& faces = graph.faces();
    auto face_coords = [&](int f) {
        std::array<Vec3, 3> t;
        for (int k = 0; k < 3; ++k) t[static_cast<std::size_t>(k)] = M.col(faces[static_cast<std::size_t>(f)][static_cast<std::size_t>(k)]);
        return t;
    };

    struct Hit {
        Vec3 point;
        int f1, f2;
        double rv, rm;
    };
    std::vector<Hit> hits;
    for (int f1 = 0; f1 < static_cast<int>(faces.size()); ++f1)
        for (int f2 = f1 + 1; f2 < static_cast<int>(faces.size()); ++f2)
            if (auto cp = central_point(face_coords(f1), face_coords(f2), tol))
                hits.push_back({cp->point, f1, f2, cp->vertex_radius, cp->midpoint_radius});

    // Single-linkage clustering of the hit points.
    std::vector<int> parent(hits.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    for (std::size_t i = 0; i < hits.size(); ++i)
        for (std::size_t j = i + 1; j < hits.size(); ++j)
            if ((hits[i].point - hits[j].point).norm() < tol.cluster_radius)
                parent[static_cast<std::size_t>(find(static_cast<int>(i)))] = find(static_cast<int>(j));

    std::map<int, std::vector<int>> clusters;
    for (std::size_t i = 0; i < hits.size(); ++i)
        clusters[find(static_cast<int>(i))].push_back(static_cast<int>(i));

    std::vector<SignificantPoint> out;
    for (const auto& [root, members] : clusters) {
        Vec3 P = Vec3::Zero();
        for (int i : members) P += hits[static_cast<std::size_t>(i)].point;
        P /= static_cast<double>(members.size());

        // Radii per incident face at this location.
        std::map<int, std::pair<double, double>> face_radii;
        for (int i : members) {
            const Hit& h = hits[static_cast<std::size_t>(i)];
            face_radii[h.f1] = {h.rv, h.rm};
            face_radii[h.f2] = {h.rv, h.rm};
        }

        // Group faces by common radii.
        std::vector<std::pair<std::pair<double, double>, std::vector<int>>> groups;
        for (const auto& [f, radii] : face_radii) {
            bool placed = false;
            for (auto& g : groups) {
                if (std::abs(g.first.first - radii.first) < tol.radius &&
                    std::abs(g.first.second - radii.second) < tol.radius) {
                    g.second.push_back(f);
                    placed = true;
                    break;
                }
            }
            if (!placed) groups.push_back({radii, {f}});
        }

        for (const auto& g : groups) {
            if (g.second.size() < 2) continue;
            SignificantPoint sp;
            sp.point = P;
            sp.strength = static_cast<int>(g.second.size());
            sp.faces = g.second;
            std::sort(sp.faces.begin(), sp.faces.end());
            sp.vertex_radius = g.first.first;
            sp.midpoint_radius = g.first.second;
            if (sp.strength == 2) {
                const auto& fa = faces[static_cast<std::size_t>(sp.faces[0])];
                const auto& fb = faces[static_cast<std::size_t>(sp.faces[1])];
                int shared = 0;
                for (int x : fa)
                    if (std::find(fb.begin(), fb.end(), x) != fb.end()) ++shared;
                sp.trivial = (shared == 2);
            }
            out.push_back(std::move(sp));
        }
    }
    std::sort(out.begin(), out.end(),
              [](const SignificantPoint& x, const SignificantPoint& y) { return x.faces < y.faces; });
    return out;
}

StrengthSum strength_sum(const std::vector<SignificantPoint>& points) {
    StrengthSum s;
    std::multiset<int> covered;
    for (const auto& p : points) {
        s.total += p.strength;
        for (int f : p.faces) covered.insert(f);
    }
    s.partition = covered.size() == 20;
    if (s.partition)
        for (int f = 0; f < 20; ++f)
            if (covered.count(f) != 1) { s.partition = false; break; }
    return s;
}

Coord dent(const Coord& M, int v, const IcoGraph& graph, const InvariantTolerances& tol) {
    const auto& nb = graph.neighbors(v);
    Eigen::Matrix<double, 3, 5> N;
    for (int k = 0; k < 5; ++k) N.col(k) = M.col(nb[static_cast<std::size_t>(k)]);
    Vec3 centroid = N.rowwise().mean();
    Eigen::Matrix<double, 3, 5> centered = N.colwise() - centroid;
    Eigen::JacobiSVD<Eigen::Matrix<double, 3, 5>> svd(centered, Eigen::ComputeFullU);
    if (svd.singularValues()(2) >= tol.coplanar)
        throw NotCoplanar("dent: neighbor plane residual " +
                          std::to_string(svd.singularValues()(2)) + " at vertex " +
                          std::to_string(v + 1));
    Vec3 normal = svd.matrixU().col(2);

    Vec3 p = M.col(v);
    Vec3 reflected = p - 2.0 * normal.dot(p - centroid) * normal;
    if ((reflected - p).norm() < 1e-9)
        throw DegenerateResult("dent: vertex " + std::to_string(v + 1) +
                               " lies in its neighbor plane");
    Coord out = M;
    out.col(v) = reflected;
    Vec3 shift = out.rowwise().mean();
    out.colwise() -= shift;
    return out;
}

DentFamily dent_family(const Coord& M_regular, const IcoGraph& graph, const AutGroup& A,
                       const Tolerances& tol) {
    InvariantTolerances itol;
    DentFamily fam;

    const int v0 = 0;
    Coord single = dent(M_regular, v0, graph, itol);
    fam.single = make_solution(single, "dent:1", graph, A, tol);

    int v2 = -1;
    for (int w = 0; w < kNumVertices; ++w)
        if (graph.dist(v0, w) == 2) { v2 = w; break; }
    Coord dd2 = dent(single, v2, graph, itol);
    fam.double_d2 = make_solution(dd2, "dent:1,2", graph, A, tol);

    Coord dd3 = dent(single, graph.antipode(v0), graph, itol);
    fam.double_d3 = make_solution(dd3, "dent:1,3", graph, A, tol);

    // Three vertices at pairwise combinatorial distance 2.
    int u = -1, w = -1;
    for (int x = 0; x < kNumVertices && u < 0; ++x) {
        if (graph.dist(v0, x) != 2) continue;
        for (int y = x + 1; y < kNumVertices; ++y) {
            if (graph.dist(v0, y) == 2 && graph.dist(x, y) == 2) {
                u = x;
                w = y;
                break;
            }
        }
    }
    if (u < 0) throw std::logic_error("dent_family: no pairwise-distance-2 triple found");
    Coord triple = dent(dent(dent(M_regular, v0, graph, itol), u, graph, itol), w, graph, itol);
    fam.triple_d2 = make_solution(triple, "dent:1,2,2", graph, A, tol);
    return fam;
}

namespace {

// Dihedral angle at the shared edge of two faces, in [0, pi].
double dihedral_angle(const Coord& M, const VertexTriple& f1, const VertexTriple& f2) {
    std::vector<int> shared;
    for (int x : f1)
        if (std::find(f2.begin(), f2.end(), x) != f2.end()) shared.push_back(x);
    if (shared.size() != 2) throw std::invalid_argument("dihedral_angle: faces not adjacent");
    int a1 = -1, a2 = -1;
    for (int x : f1)
        if (x != shared[0] && x != shared[1]) a1 = x;
    for (int x : f2)
        if (x != shared[0] && x != shared[1]) a2 = x;

    Vec3 e0 = M.col(shared[0]), e1 = M.col(shared[1]);
    Vec3 axis = (e1 - e0).normalized();
    auto wing = [&](int apex) {
        Vec3 w = M.col(apex) - e0;
        return (w - w.dot(axis) * axis).normalized();
    };
    double c = std::clamp(wing(a1).dot(wing(a2)), -1.0, 1.0);
    return std::acos(c);
}

}  // namespace

int coplanar_neighbor_pairs(const Coord& M, const IcoGraph& graph,
                            const InvariantTolerances& tol) {
    int count = 0;
    for (const auto& e : graph.edges()) {
        auto fs = graph.faces_of_edge(e);
        if (std::abs(dihedral_angle(M, fs[0], fs[1]) - M_PI) < tol.dihedral) ++count;
    }
    return count;
}

std::vector<int> equiangular_neighbor_faces(const Coord& M, const IcoGraph& graph,
                                            double angle_tol) {
    std::vector<int> out;
    const auto& faces = graph.faces();
    for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
        const auto& tri = faces[static_cast<std::size_t>(f)];
        std::vector<double> angles;
        for (int k = 0; k < 3; ++k) {
            VertexPair e{tri[static_cast<std::size_t>(k)], tri[static_cast<std::size_t>((k + 1) % 3)]};
            if (e[0] > e[1]) std::swap(e[0], e[1]);
            auto fs = graph.faces_of_edge(e);
            const VertexTriple& other = (fs[0] == tri) ? fs[1] : fs[0];
            angles.push_back(dihedral_angle(M, tri, other));
        }
        double lo = *std::min_element(angles.begin(), angles.end());
        double hi = *std::max_element(angles.begin(), angles.end());
        if (hi - lo < angle_tol && std::abs(hi - M_PI) > 1e-6) out.push_back(f);
    }
    return out;
}

}  // namespace icosa
