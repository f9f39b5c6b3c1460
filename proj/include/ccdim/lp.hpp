#pragma once

#include <optional>

#include "ccdim/rational.hpp"

namespace ccdim {

struct LpSolution {
    Rat value;
    Vec x;
};

// minimize c.x subject to A x = b, x >= 0, by the primal simplex method with
// Bland's rule (terminates on exact rationals). Returns nullopt if infeasible,
// throws if unbounded.
std::optional<LpSolution> lp_solve_eq_min(const std::vector<Vec>& a, const Vec& b, const Vec& c);

// min over z in conv(vertices) of ||p - z||_1, exact.
Rat dist_point_simplex(const Vec& p, const std::vector<Vec>& vertices);

// min over (y, z) in conv(us) x conv(vs) of ||y - z||_1, exact.
Rat dist_simplex_simplex(const std::vector<Vec>& us, const std::vector<Vec>& vs);

}  // namespace ccdim
