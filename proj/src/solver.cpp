#include "icosa/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "icosa/parallel.hpp"
#include "icosa/rng.hpp"

namespace icosa {

SolveResult solve_once(const Ansatz& az, const Eigen::VectorXd& y0, const SolveConfig& cfg) {
    if (y0.size() != az.dim())
        throw DimensionMismatch("solve_once: start vector has wrong length");
    SolveResult res;
    Eigen::VectorXd y = y0;
    Eigen::VectorXd r = az.residuals(y);
    double rnorm = r.norm();
    for (int iter = 0; iter <= cfg.max_iters; ++iter) {
        res.max_residual = r.cwiseAbs().maxCoeff();
        if (res.max_residual < cfg.residual_tol) {
            res.ok = true;
            res.y = y;
            res.iterations = iter;
            return res;
        }
        if (iter == cfg.max_iters) break;

        Eigen::MatrixXd J = az.jacobian(y);
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(J);
        cod.setThreshold(cfg.jacobian_threshold);
        Eigen::VectorXd step = cod.solve(-r);
        if (!step.allFinite()) break;

        double alpha = 1.0;
        bool accepted = false;
        for (int h = 0; h < cfg.max_halvings; ++h) {
            Eigen::VectorXd y2 = y + alpha * step;
            Eigen::VectorXd r2 = az.residuals(y2);
            double rn2 = r2.norm();
            if (rn2 < rnorm) {
                y = y2;
                r = r2;
                rnorm = rn2;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) break;                  // stalled at a nonzero residual
        if (y.norm() > 1e3) break;             // diverging
    }
    res.ok = false;
    res.y = y;
    res.max_residual = r.cwiseAbs().maxCoeff();
    return res;
}

namespace {

// Error-free transformations for the compensated Horner scheme.
inline void two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    double z = s - a;
    e = (a - (s - z)) + (b - z);
}

inline void two_prod(double a, double b, double& p, double& e) {
    p = a * b;
    e = std::fma(a, b, -p);
}

double compensated_horner(const std::vector<double>& coeffs, double x) {
    double s = coeffs.front();
    double comp = 0.0;
    for (std::size_t k = 1; k < coeffs.size(); ++k) {
        double p, pe, t, te;
        two_prod(s, x, p, pe);
        two_sum(p, coeffs[k], t, te);
        s = t;
        comp = comp * x + (pe + te);
    }
    return s + comp;
}

std::vector<TraceOracle> make_oracle_table() {
    auto certified = [](std::string label, std::string stab, int dG, int r1, int r, int rf,
                        std::vector<double> coeffs) {
        TraceOracle o;
        o.label = std::move(label);
        o.stabilizer = std::move(stab);
        o.degree = static_cast<int>(coeffs.size()) - 1;
        o.field_degree = dG;
        o.real_embeddings = r1;
        o.relevant_embeddings = r;
        o.contribution = rf;
        o.certified = true;
        o.coeffs = std::move(coeffs);
        return o;
    };
    auto metadata = [](std::string label, std::string stab, int deg, int dG, int r1, int r,
                       int rf) {
        TraceOracle o;
        o.label = std::move(label);
        o.stabilizer = std::move(stab);
        o.degree = deg;
        o.field_degree = dG;
        o.real_embeddings = r1;
        o.relevant_embeddings = r;
        o.contribution = rf;
        o.certified = false;
        return o;
    };

    std::vector<TraceOracle> t;
    t.push_back(certified("C2^2(a,d)-deg8", "C2^2", 8, 4, 2, 1,
                          {1.0, -76.0 / 3.0, 238.0, -4964.0 / 5.0, 23767.0 / 15.0}));
    t.push_back(certified("C2xA5", "C2xA5", 2, 2, 2, 2, {1.0, -15.0, 45.0}));
    t.push_back(certified("C2xD10-deg2", "C2xD10", 2, 2, 2, 2, {1.0, -15.0, 269.0 / 5.0}));
    t.push_back(certified("C2^2(a,bd)-deg2", "C2^2", 2, 2, 2, 2,
                          {1.0, -71.0 / 5.0, 10561.0 / 225.0}));
    t.push_back(certified("C2xD10-deg4", "C2xD10", 4, 2, 2, 2,
                          {1.0, -18.0, 583.0 / 5.0, -1658.0 / 5.0, 9101.0 / 25.0}));
    t.push_back(certified("C2xD6-deg4", "C2xD6", 4, 4, 2, 2,
                          {1.0, -26.0, 243.0, -970.0, 1397.0}));
    t.push_back(metadata("C2^2(a,bd)-deg24", "C2^2", 12, 24, 10, 6, 3));
    t.push_back(metadata("C2^2(a,b)-deg30", "C2^2", 5, 30, 18, 6, 1));
    t.push_back(metadata("C2(a)-deg172", "C2", 43, 172, 48, 20, 5));
    t.push_back(certified("D10-deg2", "D10", 2, 2, 2, 2, {1.0, -44.0 / 3.0, 2131.0 / 45.0}));
    t.push_back(certified("D6-deg2", "D6", 2, 2, 2, 2, {1.0, -68.0 / 5.0, 1111.0 / 25.0}));
    t.push_back(metadata("C2(ad)-deg36", "C2", 18, 36, 12, 8, 4));
    t.push_back(metadata("C2(ad)-deg168", "C2", 42, 168, 40, 24, 6));
    t.push_back(certified("D10-deg4", "D10", 4, 2, 2, 1, {1.0, -26.0 / 3.0, 149.0 / 9.0}));
    return t;
}

}  // namespace

const std::vector<TraceOracle>& trace_oracle_table() {
    static const std::vector<TraceOracle> table = make_oracle_table();
    return table;
}

double verify_trace(const TraceOracle& oracle, double t) {
    if (!oracle.certified)
        throw std::invalid_argument("verify_trace: relation for " + oracle.label +
                                    " is recorded but not evaluable");
    return std::abs(compensated_horner(oracle.coeffs, t));
}

std::optional<std::string> match_trace(double t, double tol) {
    for (const auto& o : trace_oracle_table())
        if (o.certified && verify_trace(o, t) < tol) return o.label;
    return std::nullopt;
}

const TraceOracle& oracle_by_label(const std::string& label) {
    for (const auto& o : trace_oracle_table())
        if (o.label == label) return o;
    throw std::invalid_argument("oracle_by_label: unknown label " + label);
}

std::vector<Perm> automorphism_scan(const Gram& G, const AutGroup& A, double tol,
                                    bool* ambiguous) {
    if (ambiguous) *ambiguous = false;
    std::vector<Perm> aut;
    for (const Perm& g : A.elements()) {
        double dev = 0.0;
        for (int i = 0; i < kNumVertices; ++i)
            for (int j = 0; j < kNumVertices; ++j)
                dev = std::max(dev, std::abs(G(g(i), g(j)) - G(i, j)));
        if (dev < tol)
            aut.push_back(g);
        else if (dev < 10.0 * tol && ambiguous)
            *ambiguous = true;
    }
    return aut;
}

IcosaSolution make_solution(const Coord& M, const std::string& tag, const IcoGraph& graph,
                            const AutGroup& A, const Tolerances& tol) {
    IcosaSolution sol;
    sol.coords = M;
    sol.gram = gram_from_coords(M);
    sol.trace = sol.gram.trace();
    sol.ansatz_tag = tag;
    sol.count_found = 1;

    IcosaCheck chk = check_icosahedron(M, graph, tol);
    sol.max_edge_residual = chk.max_edge_residual;
    sol.min_pair_distance = chk.min_pair_distance;
    sol.degenerate_rank = chk.rank < 3;

    sol.aut = automorphism_scan(sol.gram, A, tol.equivalence, &sol.aut_ambiguous);
    if (!sol.degenerate_rank) {
        for (const Perm& g : sol.aut)
            sol.delta_traces[g.cycle_string()] = induced_rotation(M, g, 1e-5).trace();
    }
    sol.matched_oracle = match_trace(sol.trace);
    return sol;
}

ClassCatalog multistart(const Ansatz& az, const SolveConfig& cfg, const IcoGraph& graph,
                        const AutGroup& A) {
    ClassCatalog cat;
    cat.ansatz_tag = az.case_id.id();
    cat.config = cfg;
    cat.n_starts = cfg.n_starts;

    struct Hit {
        bool converged = false;
        bool accepted = false;
        bool coincident = false;
        bool residual_fail = false;
        Coord M;
        Gram G;
        double trace = 0.0;
    };
    std::vector<Hit> hits(static_cast<std::size_t>(cfg.n_starts));

    parallel_for(cfg.n_starts, [&](int i) {
        Eigen::VectorXd y0(az.dim());
        for (int k = 0; k < az.dim(); ++k)
            y0(k) = uniform_sym(cfg.rng_seed, static_cast<std::uint64_t>(i),
                                static_cast<std::uint64_t>(k), cfg.start_box);
        SolveResult r = solve_once(az, y0, cfg);
        if (!r.ok) return;
        Hit& h = hits[static_cast<std::size_t>(i)];
        h.converged = true;
        h.M = az.materialize(r.y);
        IcosaCheck chk = check_icosahedron(h.M, graph, cfg.tol);
        if (chk.max_edge_residual >= cfg.tol.residual) {
            h.residual_fail = true;  // reduced system passed but the full one did not
            return;
        }
        if (chk.min_pair_distance <= cfg.tol.distinct || chk.center_norm > 1e-6) {
            h.coincident = true;
            return;
        }
        h.accepted = true;
        h.G = gram_from_coords(h.M);
        h.trace = h.G.trace();
    });

    std::vector<const Hit*> accepted;
    for (const Hit& h : hits) {
        if (h.converged) ++cat.n_converged;
        if (h.coincident) ++cat.n_rejected_coincident;
        if (h.residual_fail) ++cat.n_rejected_residual;
        if (h.accepted) accepted.push_back(&h);
    }
    cat.n_accepted = static_cast<int>(accepted.size());

    // Deterministic order before dedup: by trace, then lexicographic Gram.
    std::sort(accepted.begin(), accepted.end(), [](const Hit* x, const Hit* y) {
        if (x->trace != y->trace) return x->trace < y->trace;
        for (int i = 0; i < kNumVertices; ++i)
            for (int j = 0; j < kNumVertices; ++j)
                if (x->G(i, j) != y->G(i, j)) return x->G(i, j) < y->G(i, j);
        return false;
    });

    std::vector<std::pair<Gram, int>> reps;  // representative Gram -> class index
    for (const Hit* h : accepted) {
        bool matched = false;
        for (auto& [G, idx] : reps) {
            if (std::abs(G.trace() - h->trace) > cfg.tol.equivalence * kNumVertices) continue;
            if (gram_equivalent(G, h->G, A, cfg.tol.equivalence)) {
                cat.classes[static_cast<std::size_t>(idx)].count_found++;
                matched = true;
                break;
            }
        }
        if (!matched) {
            IcosaSolution sol = make_solution(h->M, cat.ansatz_tag, graph, A, cfg.tol);
            reps.emplace_back(h->G, static_cast<int>(cat.classes.size()));
            cat.classes.push_back(std::move(sol));
        }
    }
    return cat;
}

namespace {

struct RowKey {
    std::string name;
    bool has_d;
    bool in_a5;
    bool operator<(const RowKey& o) const {
        if (name != o.name) return name < o.name;
        if (has_d != o.has_d) return has_d < o.has_d;
        return in_a5 < o.in_a5;
    }
};

}  // namespace

ClassificationReport classification_report(const std::vector<ClassCatalog>& catalogs,
                                           const IcoGraph& graph, const AutGroup& A,
                                           double equiv_tol) {
    (void)graph;
    ClassificationReport rep;

    // Cross-case dedup; classes recur across cases whenever the stabilizer
    // contains several involution types.
    for (const auto& cat : catalogs) {
        for (const auto& sol : cat.classes) {
            bool matched = false;
            for (std::size_t k = 0; k < rep.merged_classes.size(); ++k) {
                if (std::abs(rep.merged_classes[k].trace - sol.trace) >
                    equiv_tol * kNumVertices)
                    continue;
                if (gram_equivalent(rep.merged_classes[k].gram, sol.gram, A, equiv_tol)) {
                    rep.merged_classes[k].count_found += sol.count_found;
                    rep.provenance[k].insert(sol.ansatz_tag);
                    matched = true;
                    break;
                }
            }
            if (!matched) {
                rep.merged_classes.push_back(sol);
                rep.provenance.push_back({sol.ansatz_tag});
            }
        }
    }

    // Known stabilizer rows with their class counts.
    std::vector<ReportRow> rows = {
        {"C2xA5", true, false, 2, true, 0, {}},
        {"C2xD10", true, false, 4, true, 0, {}},
        {"C2xD6", true, false, 2, true, 0, {}},
        {"D10", false, false, 3, true, 0, {}},
        {"D6", false, false, 2, true, 0, {}},
        {"C2^2", true, false, 1, true, 0, {}},
        {"C2^2", false, false, 5, false, 0, {}},
        {"C2^2", false, true, 1, false, 0, {}},
        {"C2", false, true, 5, false, 0, {}},
        {"C2", false, false, 10, false, 0, {}},
        {"C2", true, false, -1, false, 0, {}},  // the <d> curve
    };

    std::map<RowKey, int> row_index;
    for (std::size_t i = 0; i < rows.size(); ++i)
        row_index[{rows[i].group_name, rows[i].has_d, rows[i].in_a5}] = static_cast<int>(i);

    for (const auto& sol : rep.merged_classes) {
        if (sol.aut.size() <= 1) continue;  // no nontrivial symmetry observed
        RowKey key{A.subgroup_name(sol.aut), A.contains_d(sol.aut), A.subset_of_a5(sol.aut)};
        auto it = row_index.find(key);
        if (it == row_index.end()) {
            ReportRow extra{key.name, key.has_d, key.in_a5, 0, false, 0, {}};
            rows.push_back(extra);
            it = row_index.emplace(key, static_cast<int>(rows.size() - 1)).first;
        }
        rows[static_cast<std::size_t>(it->second)].observed++;
        rows[static_cast<std::size_t>(it->second)].observed_traces.push_back(sol.trace);
        if (key.name == "C2" && key.has_d) rep.curve_samples++;
    }
    rep.rows = std::move(rows);
    return rep;
}

std::string render_report(const ClassificationReport& rep) {
    std::ostringstream os;
    os << "Automorphism group      d?  A5?  observed  expected\n";
    os << "----------------------------------------------------\n";
    for (const auto& row : rep.rows) {
        std::string expected;
        if (row.expected_count < 0)
            expected = "infinite (curve; " + std::to_string(rep.curve_samples) + " samples)";
        else if (row.count_certified)
            expected = std::to_string(row.expected_count);
        else
            expected = ">= consistent with " + std::to_string(row.expected_count);
        std::string name = row.group_name;
        name.resize(22, ' ');
        os << name << "  " << (row.has_d ? "y" : "n") << "   " << (row.in_a5 ? "y" : "n")
           << "    " << row.observed << "         " << expected << "\n";
    }
    return os.str();
}

}  // namespace icosa
