#pragma once

#include "ccdim/complexes.hpp"
#include "ccdim/concepts.hpp"

namespace ccdim {

// Lebesgue-covering lower-bound certificate for SCdim of an extremal class:
// the largest strongly shattered cube (or a facet of it for the full cube)
// realizes a solid cube in the complex whose normalized faces stay l1-far
// from every opposite-sign zero-loss simplex.
struct LowerBoundCertificate {
    PartialConcept cube;   // Pi
    int dim = 0;           // dim(Pi) = certified lower bound for SCdim
    Rat alpha;             // dilation used, 1/(|X|+1)
    Rat face_margin;       // certified min distance from embedded faces to opposing B_h
    long checks = 0;       // number of (face, hypothesis) inequalities verified
    bool verified = false;
};

LowerBoundCertificate lower_bound_certificate(const ConceptClass& e);

// Thm-B style verdict for an extremal class.
struct DimensionVerdict {
    bool extremal = false;
    bool full_cube = false;
    int vc = 0;
    int scdim = 0;  // = vc, or vc-1 for the full cube
    int lr = 0;     // scdim + 1
    LowerBoundCertificate certificate;
    int cover_order = 0;  // exact star-cover order (the upper-bound object)
};

DimensionVerdict certify_class(const ConceptClass& e);

}  // namespace ccdim
