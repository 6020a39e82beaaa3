#include "icosa/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "icosa/serialize.hpp"

namespace icosa {

namespace {

struct Context {
    AutGroup A;
    IcoGraph graph;
    Context() : A(), graph(A) {}
};

const Context& ctx() {
    static const Context c;
    return c;
}

ClassCatalog run_case(const std::string& case_id, const SolveConfig& cfg) {
    AnsatzCase c = AnsatzCase::parse(case_id);
    // Bare ad-++ runs both sign sub-cases and merges them into one catalog.
    std::vector<AnsatzCase> cases;
    if (c.gen == CaseGen::AD && c.signs == std::array<int, 3>{-1, 1, 1} && c.subcase == 0) {
        AnsatzCase c1 = c, c2 = c;
        c1.subcase = 1;
        c2.subcase = 2;
        cases = {c1, c2};
    } else {
        cases = {c};
    }

    std::vector<ClassCatalog> parts;
    for (const auto& cc : cases) {
        Ansatz az = build_ansatz(cc, ctx().A, ctx().graph);
        parts.push_back(multistart(az, cfg, ctx().graph, ctx().A));
    }
    if (parts.size() == 1) return parts[0];

    ClassificationReport merged = classification_report(parts, ctx().graph, ctx().A,
                                                        cfg.tol.equivalence);
    ClassCatalog cat;
    cat.ansatz_tag = case_id;
    cat.config = cfg;
    for (const auto& p : parts) {
        cat.n_starts += p.n_starts;
        cat.n_converged += p.n_converged;
        cat.n_accepted += p.n_accepted;
        cat.n_rejected_coincident += p.n_rejected_coincident;
        cat.n_rejected_residual += p.n_rejected_residual;
    }
    cat.classes = merged.merged_classes;
    return cat;
}

int cmd_solve(const std::string& case_id, SolveConfig cfg, const std::string& out) {
    AnsatzCase c = AnsatzCase::parse(case_id);  // validates; throws on bad id
    ClassCatalog cat = run_case(case_id, cfg);

    Json j = catalog_to_json(cat);
    j["input_hash"] = content_hash(to_json(cfg).dump());
    for (std::size_t k = 0; k < cat.classes.size(); ++k) {
        Json gens = Json::array();
        for (const Perm& g : ctx().A.generating_set(cat.classes[k].aut))
            gens.push_back(g.cycle_string());
        j["classes"][k]["aut_generators"] = gens;
    }

    CaseReport expect = case_expectation(c);
    std::cerr << "case " << case_id << ": " << cat.classes.size() << " classes from "
              << cat.n_accepted << " accepted solutions (" << cat.n_converged
              << " converged, " << cat.n_rejected_coincident << " coincident-vertex rejects)\n";
    if (!out.empty()) write_text(out, j.dump(2) + "\n");

    if (cat.classes.empty() && expect.expected == CaseOutcome::Solutions) {
        std::cerr << "no classes found, but this case is expected to have solutions\n";
        return kExitUnexpectedEmpty;
    }
    if (cat.classes.empty() && expect.expected == CaseOutcome::Empty)
        std::cerr << "empty catalog (expected for this case)\n";
    return kExitOk;
}

int cmd_report(const std::vector<std::string>& inputs, bool paper_table,
               const std::string& out) {
    std::vector<ClassCatalog> cats;
    std::string hash_src;
    for (const auto& path : inputs) {
        cats.push_back(read_catalog(path, ctx().graph, ctx().A));
        hash_src += read_text(path);
    }
    ClassificationReport rep = classification_report(cats, ctx().graph, ctx().A);
    std::cout << render_report(rep);
    if (paper_table) {
        std::cout << "\nmerged classes: " << rep.merged_classes.size() << "\n";
        for (std::size_t k = 0; k < rep.merged_classes.size(); ++k) {
            const auto& sol = rep.merged_classes[k];
            std::cout << "  trace " << sol.trace << "  |aut| " << sol.aut.size()
                      << "  oracle " << (sol.matched_oracle ? *sol.matched_oracle : "-")
                      << "  cases:";
            for (const auto& tag : rep.provenance[k]) std::cout << " " << tag;
            std::cout << "\n";
        }
    }
    if (!out.empty()) {
        Json j;
        j["format"] = "icosa-report/1";
        j["input_hash"] = content_hash(hash_src);
        Json rows = Json::array();
        for (const auto& row : rep.rows) {
            Json r;
            r["group"] = row.group_name;
            r["contains_d"] = row.has_d;
            r["inside_a5"] = row.in_a5;
            r["observed"] = row.observed;
            r["expected"] = row.expected_count;
            r["expected_certified"] = row.count_certified;
            rows.push_back(r);
        }
        j["rows"] = rows;
        j["curve_samples"] = rep.curve_samples;
        write_text(out, j.dump(2) + "\n");
    }
    return kExitOk;
}

int cmd_curve(int steps, double t_end, const std::string& mode_str, const std::string& out,
              int starts, std::uint64_t seed, int obj_every, const std::string& obj_prefix) {
    CurveMode mode = parse_curve_mode(mode_str);
    AnsatzCase c = AnsatzCase::parse("d+--");
    Ansatz az = build_ansatz(c, ctx().A, ctx().graph);
    SolveConfig cfg;
    cfg.n_starts = starts;
    cfg.rng_seed = seed;

    TangentField field(az);
    Eigen::VectorXd y0;
    try {
        y0 = find_curve_start(az, cfg, ctx().graph, ctx().A);
    } catch (const StepFailure& e) {
        std::cerr << "curve: " << e.what() << "\n";
        return kExitUnexpectedEmpty;
    }

    CurveRun run = trace_curve(field, y0, t_end, steps, mode, ctx().graph);

    // Header line carries the run configuration; states follow one per line.
    Json header;
    header["format"] = kCurveFormat;
    header["mode"] = to_string(mode);
    header["steps"] = steps;
    header["t_end"] = t_end;
    header["solve_config"] = to_json(cfg);
    header["input_hash"] = content_hash(to_json(cfg).dump());
    std::string text = header.dump() + "\n";
    double max_res = 0.0;
    for (const auto& st : run.states) {
        text += curve_state_line(st);
        text += "\n";
        max_res = std::max(max_res, st.residual);
    }
    if (!out.empty()) write_text(out, text);
    std::cerr << "curve: " << run.states.size() << " states, max residual " << max_res
              << ", trace range [" << run.states.front().trace << ", "
              << run.states.back().trace << "]\n";

    if (obj_every > 0 && !obj_prefix.empty()) {
        for (std::size_t s = 0; s < run.states.size(); s += static_cast<std::size_t>(obj_every)) {
            Coord M = az.materialize(run.states[s].y);
            write_obj(M, ctx().graph, obj_prefix + std::to_string(s) + ".obj",
                      "curve state t=" + std::to_string(run.states[s].t));
        }
    }
    return kExitOk;
}

int cmd_invariants(const std::string& in, const std::string& out) {
    ClassCatalog cat = read_catalog(in, ctx().graph, ctx().A);
    InvariantTolerances itol;
    Json j;
    j["format"] = kInvariantsFormat;
    j["input_hash"] = file_hash(in);
    j["config"] = Json{{"cluster_radius", itol.cluster_radius},
                       {"radius_tol", itol.radius},
                       {"consistency_tol", itol.consistency},
                       {"coplanar_tol", itol.coplanar}};
    Json classes = Json::array();
    for (const auto& sol : cat.classes) {
        auto pts = significant_points(sol.coords, ctx().graph);
        StrengthSum s = strength_sum(pts);
        Json cj;
        cj["trace"] = sol.trace;
        cj["aut_order"] = sol.aut.size();
        Json pj = Json::array();
        for (const auto& p : pts) pj.push_back(to_json(p, ctx().graph));
        cj["significant_points"] = pj;
        cj["strength_sum"] = s.total;
        cj["partition"] = s.partition;
        cj["coplanar_neighbor_pairs"] = coplanar_neighbor_pairs(sol.coords, ctx().graph);
        classes.push_back(cj);
    }
    j["classes"] = classes;
    if (!out.empty()) write_text(out, j.dump(2) + "\n");
    std::cerr << "invariants: " << cat.classes.size() << " classes processed\n";
    return kExitOk;
}

int cmd_dent(int vertex1, std::vector<int> then, bool then_antipodal, bool family,
             const std::string& in, const std::string& out) {
    Coord M = in.empty() ? regular_icosahedron(ctx().graph) : read_obj(in);

    if (family) {
        DentFamily fam = dent_family(M, ctx().graph, ctx().A);
        ClassCatalog cat;
        cat.ansatz_tag = "dent-family";
        cat.classes = {fam.single, fam.double_d2, fam.double_d3, fam.triple_d2};
        cat.n_accepted = 4;
        if (!out.empty()) write_catalog(cat, out);
        for (const auto& sol : cat.classes)
            std::cerr << sol.ansatz_tag << ": |aut| " << sol.aut.size() << " trace "
                      << sol.trace << "\n";
        return kExitOk;
    }

    int v = vertex1 - 1;
    if (v < 0 || v >= kNumVertices) {
        std::cerr << "dent: vertex must be 1..12\n";
        return kExitUsage;
    }
    std::string tag = "dent:" + std::to_string(vertex1);
    Coord cur = dent(M, v, ctx().graph);
    int last = v;
    for (int w1 : then) {
        int w = w1 - 1;
        if (w < 0 || w >= kNumVertices) {
            std::cerr << "dent: --then vertex must be 1..12\n";
            return kExitUsage;
        }
        cur = dent(cur, w, ctx().graph);
        tag += "," + std::to_string(w1);
        last = w;
    }
    if (then_antipodal) {
        int w = ctx().graph.antipode(last);
        cur = dent(cur, w, ctx().graph);
        tag += ",~" + std::to_string(w + 1);
    }
    IcosaSolution sol = make_solution(cur, tag, ctx().graph, ctx().A);
    ClassCatalog cat;
    cat.ansatz_tag = tag;
    cat.classes = {sol};
    cat.n_accepted = 1;
    if (!out.empty()) write_catalog(cat, out);
    std::cerr << tag << ": |aut| " << sol.aut.size() << " trace " << sol.trace << " oracle "
              << (sol.matched_oracle ? *sol.matched_oracle : "-") << "\n";
    return kExitOk;
}

int cmd_export(const std::vector<std::string>& inputs, const std::string& obj_dir,
               const std::string& summary, const std::string& group_table) {
    if (!group_table.empty()) write_text(group_table, ctx().A.dump_table());

    std::vector<ClassCatalog> cats;
    for (const auto& path : inputs) cats.push_back(read_catalog(path, ctx().graph, ctx().A));

    if (!obj_dir.empty()) {
        std::filesystem::create_directories(obj_dir);
        int idx = 0;
        for (std::size_t ci = 0; ci < cats.size(); ++ci) {
            std::string hash = file_hash(inputs[ci]);
            for (const auto& sol : cats[ci].classes) {
                std::string name = obj_dir + "/class_" + std::to_string(idx++) + ".obj";
                write_obj(sol.coords, ctx().graph, name,
                          "trace=" + std::to_string(sol.trace) +
                              " aut=" + std::to_string(sol.aut.size()) + " source=" + hash);
            }
        }
    }
    if (!inputs.empty()) {
        ClassificationReport rep = classification_report(cats, ctx().graph, ctx().A);
        std::string table = render_report(rep);
        if (!summary.empty()) write_text(summary, table);
        std::cout << table;
    }
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"numerical classification and deformation of unit-edge icosahedra"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "multistart search over one symmetry case");
    std::string case_id, out;
    SolveConfig cfg;
    solve->add_option("--case", case_id, "case id (a+--, d---, ad-++/2, ...)")->required();
    solve->add_option("--starts", cfg.n_starts, "number of starts");
    solve->add_option("--seed", cfg.rng_seed, "rng seed");
    solve->add_option("--box", cfg.start_box, "half-width of the start box");
    solve->add_option("--tol", cfg.residual_tol, "residual acceptance tolerance");
    solve->add_option("--max-iters", cfg.max_iters, "Gauss-Newton iteration cap");
    solve->add_option("--out", out, "catalog JSON path");

    // report
    auto* report = app.add_subcommand("report", "observed-vs-expected classification table");
    std::vector<std::string> report_in;
    bool paper_table = false;
    std::string report_out;
    report->add_option("--in", report_in, "catalog JSON files")->required()->expected(-1);
    report->add_flag("--paper-table", paper_table, "also list merged classes");
    report->add_option("--out", report_out, "report JSON path");

    // curve
    auto* curve = app.add_subcommand("curve", "trace the curve of d-invariant icosahedra");
    int steps = 1000;
    double t_end = 0.00018;
    std::string mode = "raw", curve_out;
    int curve_starts = 300;
    std::uint64_t curve_seed = 7;
    int obj_every = 0;
    std::string obj_prefix;
    curve->add_option("--steps", steps, "RK4 step count");
    curve->add_option("--t-end", t_end, "integration end time");
    curve->add_option("--mode", mode, "raw | arclength | projected");
    curve->add_option("--out", curve_out, "JSON-lines output path");
    curve->add_option("--starts", curve_starts, "multistart budget for the initial solve");
    curve->add_option("--seed", curve_seed, "rng seed for the initial solve");
    curve->add_option("--export-obj-every", obj_every, "dump an OBJ mesh every N states");
    curve->add_option("--obj-prefix", obj_prefix, "prefix for exported OBJ files");

    // invariants
    auto* inv = app.add_subcommand("invariants", "significant points per catalog class");
    std::string inv_in, inv_out;
    inv->add_option("--in", inv_in, "catalog JSON")->required();
    inv->add_option("--out", inv_out, "invariants JSON path");

    // dent
    auto* dent_cmd = app.add_subcommand("dent", "reflect a vertex across its neighbor plane");
    int vertex = 1;
    std::vector<int> then;
    bool then_antipodal = false, family = false;
    std::string dent_in, dent_out;
    dent_cmd->add_option("--vertex", vertex, "vertex to dent (1..12)");
    dent_cmd->add_option("--then", then, "further vertices to dent, in order");
    dent_cmd->add_flag("--then-antipodal", then_antipodal, "dent the antipode of the last vertex");
    dent_cmd->add_flag("--family", family, "produce all four dent constructions");
    dent_cmd->add_option("--in", dent_in, "input OBJ (default: regular icosahedron)");
    dent_cmd->add_option("--out", dent_out, "catalog JSON path");

    // export
    auto* exp = app.add_subcommand("export", "OBJ meshes and a summary table from catalogs");
    std::vector<std::string> exp_in;
    std::string exp_obj_dir, exp_summary, exp_group_table;
    exp->add_option("--in", exp_in, "catalog JSON files")->expected(-1);
    exp->add_option("--obj-dir", exp_obj_dir, "directory for per-class OBJ meshes");
    exp->add_option("--summary", exp_summary, "summary table path");
    exp->add_option("--group-table", exp_group_table, "dump the automorphism group, one cycle string per line");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(solve)) {
            cfg.tol.residual = cfg.residual_tol;
            return cmd_solve(case_id, cfg, out);
        }
        if (app.got_subcommand(report)) return cmd_report(report_in, paper_table, report_out);
        if (app.got_subcommand(curve))
            return cmd_curve(steps, t_end, mode, curve_out, curve_starts, curve_seed,
                             obj_every, obj_prefix);
        if (app.got_subcommand(inv)) return cmd_invariants(inv_in, inv_out);
        if (app.got_subcommand(dent_cmd))
            return cmd_dent(vertex, then, then_antipodal, family, dent_in, dent_out);
        if (app.got_subcommand(exp))
            return cmd_export(exp_in, exp_obj_dir, exp_summary, exp_group_table);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SchemaMismatch& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}

}  // namespace icosa
