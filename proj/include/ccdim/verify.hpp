#pragma once

#include <string>
#include <vector>

namespace ccdim {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// The module invariant suites behind the `verify` command (and the property
// tests). `quick` trims sample counts for unit-test latency.
std::vector<CheckResult> run_property_suite(uint64_t seed, bool quick);

}  // namespace ccdim
