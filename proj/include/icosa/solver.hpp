#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "icosa/ansatz.hpp"

namespace icosa {

struct SolveConfig {
    int n_starts = 2000;
    double start_box = 1.5;      // half-width of the uniform start sampling box
    int max_iters = 120;
    double residual_tol = 1e-8;
    std::uint64_t rng_seed = 7;
    double jacobian_threshold = 1e-10;  // rank-revealing cutoff for Gauss-Newton steps
    int max_halvings = 30;
    Tolerances tol{};
};

struct SolveResult {
    bool ok = false;
    Eigen::VectorXd y;
    int iterations = 0;
    double max_residual = 0.0;
};

// Damped Gauss-Newton on the reduced residual system; least-squares steps via
// a rank-revealing decomposition, with a halving line search on the 2-norm.
SolveResult solve_once(const Ansatz& az, const Eigen::VectorXd& y0, const SolveConfig& cfg);

// Minimal polynomial of the Gram trace for one stabilizer row; rows with
// field degree > 4 carry the head of the relation only and cannot be
// evaluated (certified = false).
struct TraceOracle {
    std::string label;
    std::string stabilizer;
    int degree = 0;
    int field_degree = 0;      // degree of the full field of definition
    int real_embeddings = 0;
    int relevant_embeddings = 0;
    int contribution = 0;      // number of inequivalent real classes from this row
    bool certified = false;
    std::vector<double> coeffs;  // monic, descending powers (certified rows only)
};

const std::vector<TraceOracle>& trace_oracle_table();

// |p(t)| via compensated Horner evaluation. Throws if the row is not certified.
double verify_trace(const TraceOracle& oracle, double t);

// First certified oracle with |p(t)| < tol.
std::optional<std::string> match_trace(double t, double tol = 1e-6);
const TraceOracle& oracle_by_label(const std::string& label);

struct IcosaSolution {
    Coord coords;
    Gram gram;
    double trace = 0.0;
    std::vector<Perm> aut;
    std::map<std::string, double> delta_traces;  // cycle string -> tr(delta(g))
    std::string ansatz_tag;
    int count_found = 0;
    bool degenerate_rank = false;  // rank of coords < 3
    bool aut_ambiguous = false;
    std::optional<std::string> matched_oracle;
    double max_edge_residual = 0.0;
    double min_pair_distance = 0.0;
};

struct ClassCatalog {
    std::string ansatz_tag;
    SolveConfig config;
    std::vector<IcosaSolution> classes;  // pairwise inequivalent under A
    int n_starts = 0;
    int n_converged = 0;
    int n_accepted = 0;
    int n_rejected_coincident = 0;
    int n_rejected_residual = 0;
};

// Runs n_starts seeded solves, filters, dedupes under A, and attaches
// automorphism data plus matched trace oracles. Deterministic for a fixed
// seed regardless of thread count.
ClassCatalog multistart(const Ansatz& az, const SolveConfig& cfg, const IcoGraph& graph,
                        const AutGroup& A);

// Builds a full solution record (automorphisms, induced traces, oracle) from
// one coordinate matrix; used by multistart and by the denting constructions.
IcosaSolution make_solution(const Coord& M, const std::string& tag, const IcoGraph& graph,
                            const AutGroup& A, const Tolerances& tol = {});

// Membership scan that reports tolerance ambiguity instead of throwing.
std::vector<Perm> automorphism_scan(const Gram& G, const AutGroup& A, double tol,
                                    bool* ambiguous);

struct ReportRow {
    std::string group_name;
    bool has_d = false;
    bool in_a5 = false;
    int expected_count = 0;        // -1 for the infinite row
    bool count_certified = false;  // expected count backed by degree <= 4 relations
    int observed = 0;
    std::vector<double> observed_traces;
};

struct ClassificationReport {
    std::vector<ReportRow> rows;
    std::vector<IcosaSolution> merged_classes;  // cross-case deduplicated
    std::vector<std::set<std::string>> provenance;  // per merged class: case tags
    int curve_samples = 0;  // classes with stabilizer exactly <d>
};

ClassificationReport classification_report(const std::vector<ClassCatalog>& catalogs,
                                           const IcoGraph& graph, const AutGroup& A,
                                           double equiv_tol = 1e-6);

std::string render_report(const ClassificationReport& rep);

}  // namespace icosa
