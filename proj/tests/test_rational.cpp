#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "ccdim/rational.hpp"
#include "ccdim/rng.hpp"

using namespace ccdim;

TEST_CASE("rational parse and print") {
    CHECK(rat_parse("3/4").value() == rat(3, 4));
    CHECK(rat_parse("-3/4").value() == rat(-3, 4));
    CHECK(rat_parse("6/8").value() == rat(3, 4));
    CHECK(rat_parse("7").value() == rat(7));
    CHECK(rat_parse("1/0") == std::nullopt);
    CHECK(rat_parse("") == std::nullopt);
    CHECK(rat_parse("a/2") == std::nullopt);
    CHECK(rat_parse("1.5") == std::nullopt);
    CHECK(rat_str(rat(3, 4)) == "3/4");
    CHECK(rat_str(rat(-8, 2)) == "-4");
}

TEST_CASE("vector norms") {
    Vec v{rat(1, 2), rat(-1, 3), rat(0)};
    CHECK(l1_norm(v) == rat(5, 6));
    CHECK(linf_norm(v) == rat(1, 2));
    Vec w{rat(1), rat(1), rat(1)};
    CHECK(l1_dist(v, w) == rat(1, 2) + rat(4, 3) + 1);
}

TEST_CASE("counter rng is deterministic and stream-separated") {
    CounterRng a(42, 0), b(42, 0), c(42, 1);
    std::vector<uint64_t> xs, ys;
    for (int i = 0; i < 10; ++i) {
        xs.push_back(a.next_u64());
        ys.push_back(b.next_u64());
    }
    CHECK(xs == ys);
    bool differs = false;
    for (int i = 0; i < 10; ++i)
        if (c.next_u64() != xs[i]) differs = true;
    CHECK(differs);
    for (int i = 0; i < 1000; ++i) {
        uint64_t r = a.below(7);
        CHECK(r < 7);
    }
}
