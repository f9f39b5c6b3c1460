#pragma once

#include "ccdim/complexes.hpp"
#include "ccdim/concepts.hpp"

namespace ccdim {

// One elementary collapse: remove `coface` together with its free face.
struct CollapseStep {
    PartialConcept coface;
    PartialConcept free_face;
};

// Failure is a value: `stuck` holds the complex at the dead end.
struct CollapseResult {
    bool success = false;
    std::vector<CollapseStep> steps;
    PartialConcept final_vertex;
    std::vector<PartialConcept> stuck;
};

// Greedy free-face collapsing with bounded backtracking on a cubical complex
// given by its cubes (face-closed family of partial concepts).
CollapseResult collapse_search(const std::vector<PartialConcept>& cubes, int n,
                               long node_budget = 100000);

// PL contraction of the polyhedron of a cubical complex built from a collapse
// sequence: each elementary collapse contributes a radial push of the
// collapsed cube from an apex beyond its free face, composed with equal time
// slices and reparameterized so that F(., t) = id for t <= 1 - eps_time.
class Contraction {
  public:
    Contraction(std::vector<CollapseStep> steps, PartialConcept base, int n, Rat eps_time);

    const Vec& base_point() const { return base_point_; }
    const Rat& eps_time() const { return eps_time_; }

    // F(y, t); y must lie in the complex polyhedron.
    Vec eval(const Vec& y, const Rat& t) const;

    // The full retraction of step i applied to a point (identity off the cube).
    Vec step_retract(size_t i, const Vec& y) const;

  private:
    std::vector<CollapseStep> steps_;
    int n_;
    Rat eps_time_;
    Vec base_point_;
};

}  // namespace ccdim
