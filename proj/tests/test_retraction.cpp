#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "ccdim/class_io.hpp"
#include "ccdim/covers.hpp"
#include "ccdim/generators.hpp"
#include "ccdim/retraction.hpp"
#include "doctest.h"

using namespace ccdim;

namespace {
ConceptClass f5() {
    return class_from_json(
        R"({"domain":["x1","x2","x3"],"concepts":["++-","+++","+-+","--+","-++"]})");
}
}  // namespace

TEST_CASE("retraction is the identity on the embedded cubical complex") {
    auto e = f5();
    Retraction f(e, rat(1, 4));
    auto g1 = build_gamma1(e);
    for (const auto& h : g1.verts()) {
        Vec v = embed_point(g1.coord(h));
        CHECK(f.eval(v) == v);
    }
    // Interior cubical points too.
    GridStarCover geom(e, e.cube_partials(), 4);
    CounterRng rng(21, 90);
    for (int i = 0; i < 50; ++i) {
        Vec z = embed_point(geom.sample_point(rng));
        CHECK(f.eval(z) == z);
    }
}

TEST_CASE("pinned fin evaluation") {
    auto e = f5();
    Retraction f(e, rat(1, 4));
    // mu on the simplex of the chain +-+ >= +-*: collapses to the +-+ vertex.
    Vec mu = vec_add(vec_scale(coord_delta(partial_parse("+-+", 3).value(), 3), rat(1, 2)),
                     vec_scale(coord_delta(partial_parse("+-*", 3).value(), 3), rat(1, 2)));
    Vec img = f.eval(mu);
    CHECK(img == Vec{rat(1, 3), rat(-1, 3), rat(1, 3)});
    CHECK(f.property1_holds(mu));
}

TEST_CASE("idempotence, property 1, pullback bounds") {
    auto e = f5();
    Retraction f(e, rat(1, 4));
    auto d1 = build_delta1(e);
    CounterRng rng(22, 91);
    int attained = 0;
    for (int i = 0; i < 300; ++i) {
        Vec mu = random_delta_point(d1, rng);
        Vec z = f.eval(mu);
        CHECK(l1_norm(z) == 1);
        CHECK(f.eval(z) == z);
        CHECK(f.property1_holds(mu));
        auto open = f.pullback_open(mu);
        CHECK(open.size() >= 1);
        CHECK(static_cast<int>(open.size()) <= e.vc_dim() + 1);
        attained = std::max(attained, static_cast<int>(open.size()));
        for (const auto& g : open) {
            Rat d = dist_point_sigma(mu, PartialConcept{e.full_mask(), g.bits}, 3);
            CHECK(d < f.eps0());
        }
        auto closed = f.pullback_closed(mu);
        CHECK(closed.size() >= 1);
    }
    CHECK(f.eps_cover() < f.eps0());
    REQUIRE(f.gamma0().has_value());
    CHECK(f.eps_cover() < *f.gamma0());
    CHECK(2 * f.eps_time() < f.eps0());
}

TEST_CASE("retraction on thresholds") {
    auto t4 = gen_thresholds(4);
    Retraction f(t4, rat(1, 4));
    auto d1 = build_delta1(t4);
    CounterRng rng(23, 92);
    for (int i = 0; i < 200; ++i) {
        Vec mu = random_delta_point(d1, rng);
        Vec z = f.eval(mu);
        CHECK(f.eval(z) == z);
        CHECK(f.property1_holds(mu));
        CHECK(static_cast<int>(f.pullback_open(mu).size()) <= t4.vc_dim() + 1);
    }
}

TEST_CASE("traces record the peeling") {
    auto e = f5();
    Retraction f(e, rat(1, 4));
    Vec mu = coord_delta(partial_parse("**-", 3).value(), 3);  // deep fin vertex
    std::vector<Retraction::TraceEntry> trace;
    Vec img = f.eval_traced(mu, &trace);
    REQUIRE(trace.size() == 1);
    CHECK(partial_str(trace[0].w, 3) == "**-");
    CHECK(trace[0].alpha == 1);
    // E_{**-} = {++-}: everything lands on that vertex.
    CHECK(img == Vec{rat(1, 3), rat(1, 3), rat(-1, 3)});
}

TEST_CASE("cube class and non-extremal classes are rejected") {
    CHECK_THROWS(Retraction(gen_cube(2), rat(1, 4)));
    auto bad = class_from_json(R"({"domain":["a","b"],"concepts":["++","--"]})");
    CHECK_THROWS(Retraction(bad, rat(1, 4)));
}

TEST_CASE("well-defined on simplex boundaries") {
    // Evaluate at every subdivision vertex and at midpoints of every chain
    // edge: these sit on the gluing boundaries of the cone decomposition.
    auto e = f5();
    Retraction f(e, rat(1, 4));
    auto d1 = build_delta1(e);
    for (const auto& h : d1.verts()) {
        Vec v = coord_delta(h, 3);
        Vec z = f.eval(v);
        CHECK(l1_norm(z) == 1);
        CHECK(f.eval(z) == z);
        CHECK(f.property1_holds(v));
    }
    for (const auto& chain : d1.maximal_chains()) {
        for (size_t i = 0; i + 1 < chain.elems.size(); ++i) {
            Vec mid = vec_scale(
                vec_add(coord_delta(chain.elems[i], 3), coord_delta(chain.elems[i + 1], 3)),
                rat(1, 2));
            Vec z = f.eval(mid);
            CHECK(f.eval(z) == z);
            CHECK(f.property1_holds(mid));
        }
    }
}
