#include <catch2/catch_amalgamated.hpp>

#include "cellcount/complex.hpp"
#include "oracles.hpp"

using namespace cellcount;

namespace {

IntMatrix mat(std::vector<std::vector<long long>> rows) { return IntMatrix::from_rows(rows); }

} // namespace

TEST_CASE("builtin pyramid matches its boundary matrix and labels") {
    CellComplex x = builtin("pyramid");
    CHECK(x.name == "pyramid");
    CHECK(x.ridges == std::vector<std::string>{"12", "13", "14", "15", "23", "25", "34", "45"});
    CHECK(x.facets == std::vector<std::string>{"123", "134", "145", "125", "2345"});
    CHECK(x.boundary == oracles::pyramid_boundary());
    CHECK(complex_rank(x) == 4);
}

TEST_CASE("builtin rp2 is the 1x1 matrix [2]") {
    CellComplex x = builtin("rp2");
    CHECK(x.boundary == mat({{2}}));
    CHECK(x.ridges.size() == 1);
    CHECK(x.facets.size() == 1);
    CHECK(complex_rank(x) == 1);
    CHECK_THROWS_AS(builtin("klein"), UnknownBuiltin);
}

TEST_CASE("graph complex of a triangle equals the 1-skeleton of the 2-simplex") {
    CellComplex g = graph_complex(3, {{1, 2}, {1, 3}, {2, 3}});
    CellComplex s = simplex_skeleton(3, 1);
    CHECK(g.boundary == s.boundary);
    CHECK(g.facets == std::vector<std::string>{"1-2", "1-3", "2-3"});
    CHECK(s.facets == std::vector<std::string>{"12", "13", "23"});
    CHECK(complex_rank(g) == 2);

    CHECK_THROWS_AS(graph_complex(2, {{1, 3}}), InvalidEdge);
    CHECK_THROWS_AS(graph_complex(2, {{0, 1}}), InvalidEdge);
}

TEST_CASE("parallel edges and self-loops in graph complexes") {
    CellComplex g = graph_complex(2, {{1, 2}, {1, 2}, {1, 1}});
    CHECK(g.facets == std::vector<std::string>{"1-2", "1-2#2", "1-1"});
    CHECK(g.boundary.column(2) == std::vector<Int>{0, 0});
    auto lc = loops_and_coloops(g);
    CHECK(lc.loops == std::vector<std::size_t>{2});
}

TEST_CASE("2-skeleton of the 5-simplex has the expected shape") {
    CellComplex x = simplex_skeleton(5, 2);
    CHECK(x.num_ridges() == 10);
    CHECK(x.num_facets() == 10);
    CHECK(complex_rank(x) == 6);
    // Boundary of facet 123 over ridges 12,13,14,...: +23 -13 +12.
    CHECK(x.facets[0] == "123");
    std::vector<Int> col = x.boundary.column(0);
    CHECK(col[ridge_index(x, "23")] == 1);
    CHECK(col[ridge_index(x, "13")] == -1);
    CHECK(col[ridge_index(x, "12")] == 1);
    CHECK_THROWS_AS(simplex_skeleton(3, 3), IndexOutOfRange);
    CHECK_THROWS_AS(simplex_skeleton(3, 0), IndexOutOfRange);
}

TEST_CASE("contraction of pyramid at ridge 13, facet 123") {
    CellComplex x = builtin("pyramid");
    CellComplex y = contract(x, "13", "123");
    CHECK(y.ridges == std::vector<std::string>{"12", "14", "15", "23", "25", "34", "45"});
    CHECK(y.facets == std::vector<std::string>{"134", "145", "125", "2345"});
    IntMatrix expected = mat({{1, 0, 1, 0},
                              {-1, 1, 0, 0},
                              {0, -1, -1, 0},
                              {1, 0, 0, 1},
                              {0, 0, 1, -1},
                              {1, 0, 0, 1},
                              {0, 1, 0, 1}});
    CHECK(y.boundary == expected);
    CHECK(y.name == "pyramid/13*123");

    CHECK_THROWS_AS(contract(builtin("rp2"), "e", "f"), NonUnitPivot);
    CHECK_THROWS_AS(contract(x, "nope", "123"), IndexOutOfRange);
}

TEST_CASE("facet deletion and subcomplex selection") {
    CellComplex x = builtin("pyramid");
    CellComplex y = delete_facet(x, "2345");
    CHECK(y.facets == std::vector<std::string>{"123", "134", "145", "125"});
    CHECK(y.num_ridges() == 8);
    CHECK(y.boundary == x.boundary.select_columns({0, 1, 2, 3}));

    CellComplex z = subcomplex(x, {0, 4});
    CHECK(z.facets == std::vector<std::string>{"123", "2345"});
    CHECK(z.boundary.cols() == 2);
    CHECK(z.boundary.column(0) == x.boundary.column(0));
}

TEST_CASE("loops and coloops") {
    CellComplex x = builtin("pyramid");
    auto lc = loops_and_coloops(x);
    CHECK(lc.loops.empty());
    CHECK(lc.coloops.empty());
    CHECK_FALSE(has_loops(x));
    CHECK_FALSE(has_coloops(x));

    // rp2's single facet is a coloop: removing it drops the rank.
    CellComplex r = builtin("rp2");
    auto rc = loops_and_coloops(r);
    CHECK(rc.coloops == std::vector<std::size_t>{0});
    CHECK(has_coloops(r));

    // A tree edge in a graph is a coloop.
    CellComplex path = graph_complex(3, {{1, 2}, {2, 3}});
    auto pc = loops_and_coloops(path);
    CHECK(pc.coloops == std::vector<std::size_t>{0, 1});
}

TEST_CASE("flow and tension bases of the pyramid") {
    CellComplex x = builtin("pyramid");
    IntMatrix fb = flow_basis(x);
    REQUIRE(fb.rows() == 1);
    std::vector<Int> gen = fb.row(0);
    bool plus = gen == std::vector<Int>{1, 1, 1, -1, -1};
    bool minus = gen == std::vector<Int>{-1, -1, -1, 1, 1};
    CHECK((plus || minus));

    IntMatrix tb = tension_basis(x);
    CHECK(tb.rows() == 4);
    // Tensions are orthogonal to every flow.
    for (std::size_t i = 0; i < tb.rows(); ++i) {
        Int dot = 0;
        for (std::size_t j = 0; j < tb.cols(); ++j)
            dot += tb.at(i, j) * gen[j];
        CHECK(dot == 0);
    }
    // The tension lattice is saturated: unit invariant factors.
    for (auto const &f : invariant_factors(tb))
        CHECK(f == 1);
}

TEST_CASE("cut-tension index and cohomology order") {
    CHECK(cut_tension_index(builtin("pyramid")) == 1);
    CHECK(cut_tension_index(builtin("rp2")) == 2);

    CHECK(cohomology_order(builtin("pyramid"), 4) == 4);
    CHECK(cohomology_order(builtin("rp2"), 4) == 2);
    CHECK(cohomology_order(builtin("rp2"), 3) == 1);
    CHECK(cohomology_order(builtin("rp2"), 2) == 2);
}

TEST_CASE("complex JSON round trip is exact") {
    for (auto const &name : {"pyramid", "rp2"}) {
        CellComplex x = builtin(name);
        nlohmann::ordered_json j = to_json(x);
        CellComplex y = complex_from_json(nlohmann::json::parse(j.dump()));
        CHECK(y.name == x.name);
        CHECK(y.ridges == x.ridges);
        CHECK(y.facets == x.facets);
        CHECK(y.boundary == x.boundary);
    }
    // Key order is fixed.
    nlohmann::ordered_json j = to_json(builtin("rp2"));
    CHECK(j.dump() == R"({"name":"rp2","ridges":["e"],"facets":["f"],"boundary":[[2]]})");
}

TEST_CASE("complex JSON validation") {
    using nlohmann::json;
    CHECK_THROWS_AS(complex_from_json(json::parse(R"({"name":"x"})")), DimensionMismatch);
    CHECK_THROWS_AS(complex_from_json(json::parse(
                        R"({"name":"x","ridges":["a"],"facets":["f"],"boundary":[[1],[2]]})")),
                    DimensionMismatch);
    CHECK_THROWS_AS(complex_from_json(json::parse(
                        R"({"name":"x","ridges":["a"],"facets":["f"],"boundary":[[1.5]]})")),
                    DimensionMismatch);
    CHECK_THROWS_AS(complex_from_json(json::parse(
                        R"({"name":"x","ridges":["a","a"],"facets":["f"],"boundary":[[1],[1]]})")),
                    DimensionMismatch);
}

TEST_CASE("from_boundary validates label counts") {
    IntMatrix m = mat({{1, 0}, {0, 1}});
    CHECK_THROWS_AS(from_boundary("x", {"a"}, {"f", "g"}, m), DimensionMismatch);
    CHECK_THROWS_AS(from_boundary("x", {"a", "b"}, {"f"}, m), DimensionMismatch);
    CellComplex ok = from_boundary("x", {"a", "b"}, {"f", "g"}, m);
    CHECK(ok.num_facets() == 2);
    CHECK(facet_index(ok, "g") == 1);
    CHECK_THROWS_AS(facet_index(ok, "zz"), IndexOutOfRange);
}
