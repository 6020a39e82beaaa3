#include <doctest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"

using namespace icosa;

TEST_CASE("cycle notation round trip") {
    Perm a = Perm::parse_cycle_string("(1,2)(3,4)(5,7)(6,8)(9,11)(10,12)");
    CHECK(a.cycle_string() == "(1,2)(3,4)(5,7)(6,8)(9,11)(10,12)");
    CHECK(Perm::parse_cycle_string(a.cycle_string()) == a);
    CHECK(Perm().cycle_string() == "()");
    CHECK(a.is_involution());
    CHECK(a.inverse() == a);
}

TEST_CASE("group has order 120 with center {id, d}") {
    const AutGroup& A = test::group();
    CHECK(A.size() == 120);
    CHECK(A.contains(Perm()));

    auto z = A.center();
    REQUIRE(z.size() == 2);
    CHECK((z[0] == A.d() || z[1] == A.d()));

    // d multiplied against all 120 elements commutes and squares to identity.
    CHECK((A.d() * A.d()).is_identity());
    for (const Perm& g : A.elements()) CHECK(g * A.d() == A.d() * g);
}

TEST_CASE("ad has four fixed points") {
    const AutGroup& A = test::group();
    Perm ad = A.a() * A.d();
    CHECK(ad.cycle_string() == "(1,10)(2,12)(3,11)(4,9)");
    int fixed = 0;
    for (int i = 0; i < kNumVertices; ++i)
        if (ad(i) == i) ++fixed;
    CHECK(fixed == 4);
}

TEST_CASE("orbit sizes are 20/30/30/6") {
    const IcoGraph& g = test::graph();
    CHECK(g.faces().size() == 20);
    CHECK(g.edges().size() == 30);
    CHECK(g.diag2().size() == 30);
    CHECK(g.diag3().size() == 6);

    // {1,12} seeds its own orbit; applying a to {1,2,3} gives {1,2,4}.
    CHECK(g.dist(0, 11) == 3);
    VertexTriple f{0, 1, 3};
    CHECK(std::find(g.faces().begin(), g.faces().end(), f) != g.faces().end());
}

TEST_CASE("incidence counts") {
    const IcoGraph& g = test::graph();
    for (const auto& e : g.edges()) CHECK_NOTHROW(g.faces_of_edge(e));
    std::array<int, kNumVertices> face_count{}, edge_count{};
    for (const auto& f : g.faces())
        for (int v : f) face_count[static_cast<std::size_t>(v)]++;
    for (const auto& e : g.edges())
        for (int v : e) edge_count[static_cast<std::size_t>(v)]++;
    for (int v = 0; v < kNumVertices; ++v) {
        CHECK(face_count[static_cast<std::size_t>(v)] == 5);
        CHECK(edge_count[static_cast<std::size_t>(v)] == 5);
    }
    // Every face induces 3 edges.
    for (const auto& f : g.faces()) {
        CHECK(g.is_edge(f[0], f[1]));
        CHECK(g.is_edge(f[1], f[2]));
        CHECK(g.is_edge(f[0], f[2]));
    }
}

TEST_CASE("orthogonal diagonal is an equivariant bijection") {
    const AutGroup& A = test::group();
    const IcoGraph& g = test::graph();

    CHECK(g.orthogonal_diagonal({0, 1}) == VertexPair{2, 3});  // {1,2} -> {3,4}

    std::set<VertexPair> images;
    for (const auto& e : g.edges()) images.insert(g.orthogonal_diagonal(e));
    CHECK(images.size() == 30);  // bijective onto diag2

    // omega(e^g) = omega(e)^g over all 30 x 120 cases.
    for (const auto& e : g.edges())
        for (const Perm& p : A.elements()) {
            VertexPair lhs = g.orthogonal_diagonal(IcoGraph::apply(p, e));
            VertexPair rhs = IcoGraph::apply(p, g.orthogonal_diagonal(e));
            CHECK(lhs == rhs);
        }
}

TEST_CASE("diag3 pairs match the cycles of d") {
    const AutGroup& A = test::group();
    const IcoGraph& g = test::graph();
    for (const auto& cy : A.d().cycles()) {
        VertexPair p{std::min(cy[0], cy[1]), std::max(cy[0], cy[1])};
        CHECK(std::binary_search(g.diag3().begin(), g.diag3().end(), p));
    }
    for (int v = 0; v < kNumVertices; ++v) CHECK(g.antipode(v) == A.d()(v));
}

TEST_CASE("involution classification") {
    const AutGroup& A = test::group();
    auto infos = classify_involutions(A);
    CHECK(infos.size() == 31);

    int na = 0, nd = 0, nad = 0;
    for (const auto& info : infos) {
        switch (info.cls) {
            case InvolutionClass::A: ++na; break;
            case InvolutionClass::D: ++nd; break;
            case InvolutionClass::AD: ++nad; break;
        }
    }
    CHECK(na == 15);
    CHECK(nd == 1);
    CHECK(nad == 15);

    // a has centralizer <a, b, d> of order 8; d is central.
    CHECK(A.involution_class(A.a()) == InvolutionClass::A);
    auto ca = A.centralizer(A.a());
    CHECK(ca.size() == 8);
    auto abd = A.generate({A.a(), A.b(), A.d()});
    CHECK(abd.size() == 8);
    CHECK(std::set<Perm>(ca.begin(), ca.end()) == std::set<Perm>(abd.begin(), abd.end()));

    CHECK(A.involution_class(A.d()) == InvolutionClass::D);
    CHECK(A.centralizer(A.d()).size() == 120);

    CHECK(A.involution_class(A.a() * A.d()) == InvolutionClass::AD);
}

TEST_CASE("named subgroups") {
    const AutGroup& A = test::group();
    CHECK(A.subgroup_name(A.elements()) == "C2xA5");
    CHECK(A.subgroup_name(A.generate({A.a(), A.d()})) == "C2^2");
    CHECK(A.subgroup_name(A.generate({A.a()})) == "C2");
    CHECK(A.generate({A.a() * A.b() * A.c()}).size() == 3);  // <abc> = C3
    CHECK(A.generate({A.a() * A.c()}).size() == 5);          // <ac> = C5
    CHECK(A.subset_of_a5({A.a(), A.b(), A.c()}));
    CHECK(!A.subset_of_a5({A.d()}));
    CHECK(A.contains_d(A.generate({A.a(), A.d()})));
}

TEST_CASE("group table dump has one line per element") {
    const AutGroup& A = test::group();
    std::string table = A.dump_table();
    CHECK(std::count(table.begin(), table.end(), '\n') == 120);
}
