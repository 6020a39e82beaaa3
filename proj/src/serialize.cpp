#include "icosa/serialize.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace icosa {

std::string content_hash(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
    return buf;
}

std::string file_hash(const std::string& path) { return content_hash(read_text(path)); }

void write_text(const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << text;
}

std::string read_text(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

Json to_json(const SolveConfig& cfg) {
    Json j;
    j["n_starts"] = cfg.n_starts;
    j["start_box"] = cfg.start_box;
    j["max_iters"] = cfg.max_iters;
    j["residual_tol"] = cfg.residual_tol;
    j["rng_seed"] = cfg.rng_seed;
    j["jacobian_threshold"] = cfg.jacobian_threshold;
    j["max_halvings"] = cfg.max_halvings;
    j["distinct_tol"] = cfg.tol.distinct;
    j["psd_tol"] = cfg.tol.psd;
    j["equivalence_tol"] = cfg.tol.equivalence;
    return j;
}

SolveConfig solve_config_from_json(const Json& j) {
    SolveConfig cfg;
    cfg.n_starts = j.at("n_starts").get<int>();
    cfg.start_box = j.at("start_box").get<double>();
    cfg.max_iters = j.at("max_iters").get<int>();
    cfg.residual_tol = j.at("residual_tol").get<double>();
    cfg.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    cfg.jacobian_threshold = j.at("jacobian_threshold").get<double>();
    cfg.max_halvings = j.at("max_halvings").get<int>();
    cfg.tol.residual = cfg.residual_tol;
    cfg.tol.distinct = j.at("distinct_tol").get<double>();
    cfg.tol.psd = j.at("psd_tol").get<double>();
    cfg.tol.equivalence = j.at("equivalence_tol").get<double>();
    return cfg;
}

Json to_json(const IcosaSolution& sol) {
    Json j;
    std::vector<double> gram;
    gram.reserve(144);
    for (int i = 0; i < kNumVertices; ++i)
        for (int k = 0; k < kNumVertices; ++k) gram.push_back(sol.gram(i, k));
    j["trace"] = sol.trace;
    j["aut_order"] = sol.aut.size();
    Json dt = Json::object();
    for (const auto& [cyc, tr] : sol.delta_traces) dt[cyc] = tr;
    j["delta_traces"] = dt;
    j["gram"] = gram;
    std::vector<double> coords;
    coords.reserve(36);
    for (int i = 0; i < kNumVertices; ++i)
        for (int r = 0; r < 3; ++r) coords.push_back(sol.coords(r, i));
    j["coords"] = coords;
    j["ansatz_tag"] = sol.ansatz_tag;
    j["count_found"] = sol.count_found;
    j["degenerate_rank"] = sol.degenerate_rank;
    j["aut_ambiguous"] = sol.aut_ambiguous;
    j["matched_oracle"] = sol.matched_oracle ? Json(*sol.matched_oracle) : Json(nullptr);
    j["max_edge_residual"] = sol.max_edge_residual;
    j["min_pair_distance"] = sol.min_pair_distance;
    return j;
}

IcosaSolution solution_from_json(const Json& j, const IcoGraph& graph, const AutGroup& A) {
    const auto& coords = j.at("coords");
    if (coords.size() != 36) throw SchemaMismatch("solution: bad coords length");
    Coord M;
    std::size_t k = 0;
    for (int i = 0; i < kNumVertices; ++i)
        for (int r = 0; r < 3; ++r) M(r, i) = coords.at(k++).get<double>();
    Tolerances tol;
    IcosaSolution sol = make_solution(M, j.at("ansatz_tag").get<std::string>(), graph, A, tol);
    sol.count_found = j.at("count_found").get<int>();
    // Cross-check the stored Gram against the recomputed one.
    const auto& gram = j.at("gram");
    if (gram.size() != 144) throw SchemaMismatch("solution: bad gram length");
    k = 0;
    for (int i = 0; i < kNumVertices; ++i)
        for (int c = 0; c < kNumVertices; ++c) {
            if (std::abs(gram.at(k++).get<double>() - sol.gram(i, c)) > 1e-9)
                throw SchemaMismatch("solution: gram/coords mismatch");
        }
    return sol;
}

Json catalog_to_json(const ClassCatalog& cat) {
    Json j;
    j["format"] = kCatalogFormat;
    j["case"] = cat.ansatz_tag;
    j["config"] = to_json(cat.config);
    j["n_starts"] = cat.n_starts;
    j["n_converged"] = cat.n_converged;
    j["n_accepted"] = cat.n_accepted;
    j["n_rejected_coincident"] = cat.n_rejected_coincident;
    j["n_rejected_residual"] = cat.n_rejected_residual;
    Json classes = Json::array();
    for (const auto& sol : cat.classes) {
        Json cj = to_json(sol);
        // Generators in cycle notation for readability; full group order kept.
        // (Recomputed on load from the coordinates.)
        classes.push_back(std::move(cj));
    }
    j["classes"] = classes;
    return j;
}

ClassCatalog catalog_from_json(const Json& j, const IcoGraph& graph, const AutGroup& A) {
    if (!j.contains("format") || j.at("format").get<std::string>() != kCatalogFormat)
        throw SchemaMismatch("catalog: wrong or missing format tag");
    ClassCatalog cat;
    cat.ansatz_tag = j.at("case").get<std::string>();
    cat.config = solve_config_from_json(j.at("config"));
    cat.n_starts = j.at("n_starts").get<int>();
    cat.n_converged = j.at("n_converged").get<int>();
    cat.n_accepted = j.at("n_accepted").get<int>();
    cat.n_rejected_coincident = j.at("n_rejected_coincident").get<int>();
    cat.n_rejected_residual = j.at("n_rejected_residual").get<int>();
    for (const auto& cj : j.at("classes"))
        cat.classes.push_back(solution_from_json(cj, graph, A));
    return cat;
}

void write_catalog(const ClassCatalog& cat, const std::string& path) {
    Json j = catalog_to_json(cat);
    // Aut generators rendered alongside each class for human consumption.
    AutGroup A;
    for (std::size_t k = 0; k < cat.classes.size(); ++k) {
        Json gens = Json::array();
        for (const Perm& g : A.generating_set(cat.classes[k].aut)) gens.push_back(g.cycle_string());
        j["classes"][k]["aut_generators"] = gens;
    }
    write_text(path, j.dump(2) + "\n");
}

ClassCatalog read_catalog(const std::string& path, const IcoGraph& graph, const AutGroup& A) {
    Json j;
    try {
        j = Json::parse(read_text(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaMismatch(std::string("catalog: parse error: ") + e.what());
    }
    return catalog_from_json(j, graph, A);
}

Json to_json(const SignificantPoint& p, const IcoGraph& graph) {
    Json j;
    j["point"] = {p.point(0), p.point(1), p.point(2)};
    j["strength"] = p.strength;
    Json faces = Json::array();
    for (int f : p.faces) {
        const auto& tri = graph.faces()[static_cast<std::size_t>(f)];
        faces.push_back({tri[0] + 1, tri[1] + 1, tri[2] + 1});
    }
    j["faces"] = faces;
    j["vertex_radius"] = p.vertex_radius;
    j["midpoint_radius"] = p.midpoint_radius;
    j["trivial"] = p.trivial;
    return j;
}

std::string coords_to_obj(const Coord& M, const IcoGraph& graph, const std::string& comment) {
    std::ostringstream os;
    if (!comment.empty()) os << "# " << comment << "\n";
    char buf[96];
    for (int i = 0; i < kNumVertices; ++i) {
        std::snprintf(buf, sizeof(buf), "v %.17g %.17g %.17g\n", M(0, i), M(1, i), M(2, i));
        os << buf;
    }
    for (const auto& f : graph.faces())
        os << "f " << f[0] + 1 << " " << f[1] + 1 << " " << f[2] + 1 << "\n";
    return os.str();
}

Coord coords_from_obj(const std::string& text) {
    Coord M;
    int n = 0;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.rfind("v ", 0) != 0) continue;
        if (n >= kNumVertices) throw SchemaMismatch("obj: more than 12 vertices");
        double x, y, z;
        if (std::sscanf(line.c_str(), "v %lf %lf %lf", &x, &y, &z) != 3)
            throw SchemaMismatch("obj: bad vertex line");
        M.col(n++) = Vec3(x, y, z);
    }
    if (n != kNumVertices) throw SchemaMismatch("obj: expected 12 vertices");
    return M;
}

void write_obj(const Coord& M, const IcoGraph& graph, const std::string& path,
               const std::string& comment) {
    write_text(path, coords_to_obj(M, graph, comment));
}

Coord read_obj(const std::string& path) { return coords_from_obj(read_text(path)); }

std::string curve_state_line(const CurveState& st) {
    Json j;
    j["t"] = st.t;
    std::vector<double> y(st.y.data(), st.y.data() + st.y.size());
    j["y"] = y;
    j["residual"] = st.residual;
    j["trace"] = st.trace;
    j["distinct"] = st.distinct;
    return j.dump();
}

}  // namespace icosa
