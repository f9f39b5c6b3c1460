#pragma once

#include "ccdim/concepts.hpp"
#include "ccdim/rational.hpp"
#include "ccdim/rng.hpp"

namespace ccdim {

// Full binary cube over n points.
ConceptClass gen_cube(int n);

// Thresholds T_t over domain [t-1]: concept h_j (j = 0..t-1) labels x -> +1
// iff x <= j, so h_0 is all-minus and h_{t-1} is all-plus.
ConceptClass gen_thresholds(int t);

// In/out patterns of axis-parallel boxes on points no two of which share a
// coordinate. Realizable patterns are exactly the subsets S with
// BB(S) containing no point outside S.
ConceptClass gen_boxes(const std::vector<Vec>& points);

// Sign patterns s realizable by a homogeneous halfspace: the strict system
// s_i * <v, p_i> > 0 is feasible. Decided by exact Fourier-Motzkin elimination.
ConceptClass gen_halfspaces(const std::vector<Vec>& points);

// Closure of the seed concepts under pointwise lowering (+1 -> -1).
ConceptClass gen_downward_closed(const Domain& domain, const std::vector<Concept>& seeds);

// Closure of a class under the pointwise majority of all triples.
ConceptClass gen_median_closure(const ConceptClass& c);

// Seeded random classes for test suites.
ConceptClass gen_random_downward_closed(int n, int num_seeds, CounterRng& rng);
ConceptClass gen_random_median_closure(int n, int num_seeds, CounterRng& rng);

// Strict homogeneous feasibility: exists v with a_i . v > 0 for every row.
bool strict_system_feasible(std::vector<Vec> rows);

// Descriptor syntax: cube:N | thresholds:T | boxes:FILE | halfspaces:FILE |
// downward:N:SEEDS | median:N:SEEDS  (FILE holds a JSON list of rational points).
ConceptClass generate_from_descriptor(const std::string& descriptor);

}  // namespace ccdim
