#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "fixtures.hpp"
#include "icosa/cli.hpp"
#include "icosa/serialize.hpp"

using namespace icosa;

namespace {

std::string tmp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

ClassCatalog small_catalog() {
    SolveConfig cfg;
    cfg.n_starts = 200;
    Ansatz az = build_ansatz(AnsatzCase::parse("d---"), test::group(), test::graph());
    return multistart(az, cfg, test::graph(), test::group());
}

int run(std::vector<std::string> args) {
    std::vector<const char*> argv{"icosa"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("content hash is stable") {
    CHECK(content_hash("") == "cbf29ce484222325");
    CHECK(content_hash("icosa") != content_hash("icosb"));
}

TEST_CASE("solve config round trip") {
    SolveConfig cfg;
    cfg.n_starts = 321;
    cfg.rng_seed = 99;
    cfg.tol.equivalence = 2e-6;
    SolveConfig back = solve_config_from_json(to_json(cfg));
    CHECK(back.n_starts == 321);
    CHECK(back.rng_seed == 99);
    CHECK(back.tol.equivalence == 2e-6);
}

TEST_CASE("catalog json round trip preserves classes") {
    ClassCatalog cat = small_catalog();
    std::string path = tmp_path("icosa_cat_test.json");
    write_catalog(cat, path);
    ClassCatalog back = read_catalog(path, test::graph(), test::group());
    REQUIRE(back.classes.size() == cat.classes.size());
    for (std::size_t k = 0; k < cat.classes.size(); ++k) {
        CHECK(back.classes[k].trace == doctest::Approx(cat.classes[k].trace).epsilon(1e-14));
        CHECK((back.classes[k].gram - cat.classes[k].gram).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(back.classes[k].aut.size() == cat.classes[k].aut.size());
        CHECK(back.classes[k].count_found == cat.classes[k].count_found);
    }
    std::remove(path.c_str());
}

TEST_CASE("catalog dumps are byte-identical across repeated runs") {
    ClassCatalog c1 = small_catalog();
    ClassCatalog c2 = small_catalog();
    CHECK(catalog_to_json(c1).dump() == catalog_to_json(c2).dump());
}

TEST_CASE("schema mismatch raises") {
    std::string path = tmp_path("icosa_bad_cat.json");
    write_text(path, "{\"format\": \"something-else/9\", \"classes\": []}\n");
    CHECK_THROWS_AS(read_catalog(path, test::graph(), test::group()), SchemaMismatch);
    write_text(path, "this is not json");
    CHECK_THROWS_AS(read_catalog(path, test::graph(), test::group()), SchemaMismatch);
    std::remove(path.c_str());
}

TEST_CASE("obj export round trips to full precision") {
    const Coord& M = test::regular();
    std::string text = coords_to_obj(M, test::graph(), "regular");
    Coord back = coords_from_obj(text);
    CHECK((back - M).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(text.find("f ") != std::string::npos);

    // All 20 face lines present, 1-based indices.
    int faces = 0;
    for (std::size_t pos = 0; (pos = text.find("\nf ", pos)) != std::string::npos; ++pos)
        ++faces;
    CHECK(faces == 20);
}

TEST_CASE("curve state lines are valid json") {
    CurveState st;
    st.t = 0.25;
    st.y = Eigen::VectorXd::LinSpaced(16, 0.0, 1.5);
    st.residual = 1e-12;
    st.trace = 7.5;
    Json j = Json::parse(curve_state_line(st));
    CHECK(j.at("t").get<double>() == 0.25);
    CHECK(j.at("y").size() == 16);
    CHECK(j.at("distinct").get<bool>());
}

TEST_CASE("cli exit codes") {
    // Usage error: unknown case id.
    CHECK(run({"solve", "--case", "z+--", "--starts", "10"}) == kExitUsage);

    // Data error: malformed catalog.
    std::string bad = tmp_path("icosa_cli_bad.json");
    write_text(bad, "{}");
    CHECK(run({"report", "--in", bad}) == kExitData);
    std::remove(bad.c_str());

    // Happy path: tiny solve writes a loadable catalog.
    std::string out = tmp_path("icosa_cli_cat.json");
    CHECK(run({"solve", "--case", "d---", "--starts", "150", "--seed", "7", "--out", out}) ==
          kExitOk);
    ClassCatalog cat = read_catalog(out, test::graph(), test::group());
    CHECK(cat.classes.size() >= 2);

    // Report over it.
    CHECK(run({"report", "--in", out}) == kExitOk);

    // Expected-empty case exits 0.
    CHECK(run({"solve", "--case", "ad---", "--starts", "50", "--seed", "1"}) == kExitOk);

    // Finding nothing where solutions exist exits 2 (iteration-starved run).
    CHECK(run({"solve", "--case", "d---", "--starts", "2", "--seed", "1", "--max-iters",
               "1"}) == kExitUnexpectedEmpty);
    std::remove(out.c_str());
}

TEST_CASE("cli curve writes a header line, states and obj snapshots") {
    std::string out = tmp_path("icosa_cli_curve.jsonl");
    std::string prefix = tmp_path("icosa_cli_curve_");
    CHECK(run({"curve", "--steps", "40", "--t-end", "0.2", "--mode", "projected", "--out",
               out, "--starts", "120", "--seed", "7", "--export-obj-every", "20",
               "--obj-prefix", prefix}) == kExitOk);

    std::istringstream is(read_text(out));
    std::string line;
    REQUIRE(std::getline(is, line));
    Json header = Json::parse(line);
    CHECK(header.at("format").get<std::string>() == std::string(kCurveFormat));
    CHECK(header.at("mode").get<std::string>() == "projected");
    CHECK(header.contains("solve_config"));
    int states = 0;
    while (std::getline(is, line)) {
        Json st = Json::parse(line);
        CHECK(st.at("residual").get<double>() < 1e-10);
        ++states;
    }
    CHECK(states == 41);
    CHECK(std::filesystem::exists(prefix + "0.obj"));
    CHECK(std::filesystem::exists(prefix + "40.obj"));

    std::remove(out.c_str());
    for (int s = 0; s <= 40; s += 20) std::remove((prefix + std::to_string(s) + ".obj").c_str());
}

TEST_CASE("cli dent family writes a catalog with four classes") {
    std::string out = tmp_path("icosa_cli_dents.json");
    CHECK(run({"dent", "--family", "--out", out}) == kExitOk);
    ClassCatalog cat = read_catalog(out, test::graph(), test::group());
    CHECK(cat.classes.size() == 4);
    std::remove(out.c_str());
}

TEST_CASE("cli dent with antipodal chain reproduces the C2xD10 class") {
    std::string out = tmp_path("icosa_cli_dent13.json");
    CHECK(run({"dent", "--vertex", "1", "--then-antipodal", "--out", out}) == kExitOk);
    ClassCatalog cat = read_catalog(out, test::graph(), test::group());
    REQUIRE(cat.classes.size() == 1);
    CHECK(cat.classes[0].aut.size() == 20);
    REQUIRE(cat.classes[0].matched_oracle.has_value());
    CHECK(*cat.classes[0].matched_oracle == "C2xD10-deg2");
    std::remove(out.c_str());
}

TEST_CASE("cli export writes obj meshes, summary and the group table") {
    std::string cat_path = tmp_path("icosa_exp_cat.json");
    REQUIRE(run({"dent", "--family", "--out", cat_path}) == kExitOk);

    std::string dir = tmp_path("icosa_exp_objs");
    std::string summary = tmp_path("icosa_exp_summary.txt");
    std::string table = tmp_path("icosa_exp_group.txt");
    CHECK(run({"export", "--in", cat_path, "--obj-dir", dir, "--summary", summary,
               "--group-table", table}) == kExitOk);

    CHECK(std::filesystem::exists(dir + "/class_0.obj"));
    Coord back = read_obj(dir + "/class_0.obj");
    CHECK(is_icosahedron(back, test::graph()));

    std::string tbl = read_text(table);
    CHECK(std::count(tbl.begin(), tbl.end(), '\n') == 120);
    CHECK(read_text(summary).find("observed") != std::string::npos);

    std::filesystem::remove_all(dir);
    std::remove(cat_path.c_str());
    std::remove(summary.c_str());
    std::remove(table.c_str());
}
