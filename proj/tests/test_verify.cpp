#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "ccdim/verify.hpp"
#include "doctest.h"

using namespace ccdim;

TEST_CASE("property suite passes in quick mode") {
    auto results = run_property_suite(424242, true);
    CHECK(results.size() >= 10);
    for (const auto& r : results) {
        INFO(r.name, ": ", r.detail);
        CHECK(r.pass);
    }
}
