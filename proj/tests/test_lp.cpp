#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "ccdim/lp.hpp"
#include "ccdim/rng.hpp"
#include "doctest.h"

using namespace ccdim;

TEST_CASE("lp basic") {
    // min x0 + x1 st x0 + x1 = 1 -> 1
    auto sol = lp_solve_eq_min({{rat(1), rat(1)}}, {rat(1)}, {rat(1), rat(1)});
    REQUIRE(sol);
    CHECK(sol->value == 1);
    // min x0 st x0 - x1 = -2 -> 0 at x1 = 2
    sol = lp_solve_eq_min({{rat(1), rat(-1)}}, {rat(-2)}, {rat(1), rat(0)});
    REQUIRE(sol);
    CHECK(sol->value == 0);
    // infeasible: x0 = -1 with x0 >= 0
    CHECK_FALSE(lp_solve_eq_min({{rat(1)}}, {rat(-1)}, {rat(1)}));
}

TEST_CASE("point-simplex distance") {
    // Segment from e1 to e2 in R^2; point at origin -> distance 1.
    std::vector<Vec> seg{{rat(1), rat(0)}, {rat(0), rat(1)}};
    CHECK(dist_point_simplex({rat(0), rat(0)}, seg) == 1);
    // Point on the segment -> 0.
    CHECK(dist_point_simplex({rat(1, 2), rat(1, 2)}, seg) == 0);
    // Vertex simplex.
    CHECK(dist_point_simplex({rat(1), rat(1)}, {{rat(0), rat(0)}}) == 2);
}

TEST_CASE("simplex-simplex distance") {
    std::vector<Vec> a{{rat(1), rat(0), rat(0)}};
    std::vector<Vec> b{{rat(0), rat(1), rat(0)}, {rat(-1), rat(0), rat(0)}};
    // Closest over b: to (0,1,0) distance 2, to (-1,0,0) distance 2; inside
    // can't do better than 2 (l1 between antipodal-ish points).
    CHECK(dist_simplex_simplex(a, b) == 2);
    std::vector<Vec> c{{rat(1, 3), rat(1, 3), rat(1, 3)}, {rat(1, 2), rat(1, 2), rat(0)}};
    std::vector<Vec> d{{rat(1, 3), rat(-1, 3), rat(1, 3)}, {rat(1, 2), rat(0), rat(1, 2)}};
    // Known value for these two edges of Delta_{F5,1}.
    CHECK(dist_simplex_simplex(c, d) == rat(2, 3));
    // Touching simplices -> 0.
    std::vector<Vec> e{{rat(1), rat(0)}, {rat(0), rat(1)}};
    std::vector<Vec> f{{rat(0), rat(1)}, {rat(-1), rat(0)}};
    CHECK(dist_simplex_simplex(e, f) == 0);
}

TEST_CASE("distance agrees with randomized sampling upper bounds") {
    CounterRng rng(5, 9);
    for (int t = 0; t < 20; ++t) {
        int n = 3;
        auto rnd_pt = [&]() {
            Vec p(n);
            for (int i = 0; i < n; ++i) p[i] = rat(rng.range(-4, 4), 1 + rng.below(3));
            return p;
        };
        std::vector<Vec> a{rnd_pt(), rnd_pt()};
        std::vector<Vec> b{rnd_pt(), rnd_pt(), rnd_pt()};
        Rat d = dist_simplex_simplex(a, b);
        // Sampled convex combinations never beat the LP optimum.
        for (int s = 0; s < 30; ++s) {
            Rat la = rat(static_cast<long>(rng.below(5)), 4);
            if (la > 1) la = 1;
            Rat m1 = rat(static_cast<long>(rng.below(5)), 4);
            Rat m2 = rat(static_cast<long>(rng.below(5)), 4);
            Rat tot = m1 + m2;
            Vec pa = vec_lerp(a[0], a[1], la);
            Vec pb;
            if (tot == 0) pb = b[0];
            else {
                pb = vec_add(vec_scale(b[0], 1 - (m1 + m2) / (tot + 1)), Vec(n, Rat(0)));
                pb = vec_add(vec_scale(b[0], m1 / tot), vec_scale(b[1], m2 / tot));
            }
            CHECK(l1_dist(pa, pb) >= d);
        }
    }
}
