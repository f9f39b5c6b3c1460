#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "ccdim/class_io.hpp"
#include "ccdim/collapse.hpp"
#include "ccdim/generators.hpp"
#include "ccdim/grid_cover.hpp"
#include "doctest.h"

using namespace ccdim;

namespace {
ConceptClass f5() {
    return class_from_json(
        R"({"domain":["x1","x2","x3"],"concepts":["++-","+++","+-+","--+","-++"]})");
}
}  // namespace

TEST_CASE("collapse of the F5 complex") {
    auto e = f5();
    auto res = collapse_search(e.cube_partials(), 3);
    REQUIRE(res.success);
    CHECK(res.steps.size() == 5);  // 11 cells, one survivor
    CHECK(res.final_vertex.support == e.full_mask());
    // Every step removes a genuine free pair at its time.
    auto all_cubes = e.cube_partials();
    std::set<PartialConcept> cells(all_cubes.begin(), all_cubes.end());
    for (const auto& s : res.steps) {
        int cofaces = 0;
        for (const auto& q : cells)
            if (!(q == s.free_face) && extends(s.free_face, q)) ++cofaces;
        CHECK(cofaces == 1);
        CHECK(cells.erase(s.coface) == 1);
        CHECK(cells.erase(s.free_face) == 1);
    }
    CHECK(cells.size() == 1);
}

TEST_CASE("paths collapse and single vertices are trivial") {
    auto t5 = gen_thresholds(5);
    auto res = collapse_search(t5.cube_partials(), 4);
    CHECK(res.success);
    auto single = class_from_json(R"({"domain":["a","b"],"concepts":["+-"]})");
    auto cubes = single.cube_partials();  // one point class: one vertex cube
    CHECK(cubes.size() == 1);
    auto res2 = collapse_search(cubes, 2);
    CHECK(res2.success);
    CHECK(res2.steps.empty());
}

TEST_CASE("failure is a value") {
    // The boundary of a square has no free faces (every vertex lies in two
    // edges) and an even cell count.
    auto res = collapse_search(boundary_cubes(2), 2);
    CHECK_FALSE(res.success);
    CHECK(res.stuck.size() == 8);
}

TEST_CASE("contraction endpoints and the modification window") {
    auto e = f5();
    auto res = collapse_search(e.cube_partials(), 3);
    REQUIRE(res.success);
    Rat eps = rat(1, 8);
    Contraction f(res.steps, res.final_vertex, 3, eps);
    GridStarCover geom(e, e.cube_partials(), 2);
    CounterRng rng(5, 80);
    for (int i = 0; i < 120; ++i) {
        Vec y = geom.sample_point(rng);
        CHECK(f.eval(y, rat(0)) == y);
        CHECK(f.eval(y, 1 - eps) == y);           // modified contraction window
        CHECK(f.eval(y, rat(1, 2)) == y);
        CHECK(f.eval(y, rat(1)) == f.base_point());
        // Intermediate times stay inside the polyhedron.
        for (long k = 1; k < 8; ++k) {
            Vec z = f.eval(y, 1 - eps + eps * rat(k, 8));
            CHECK(geom.in_polyhedron(z));
        }
    }
}

TEST_CASE("contractions of restricted classes") {
    auto e = f5();
    for (const auto& h : e.realizable_partials()) {
        auto ew = e.h_restriction(h);
        auto res = collapse_search(ew.cube_partials(), 3);
        CHECK(res.success);  // all F5 restrictions collapse
    }
}
