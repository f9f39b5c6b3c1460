#pragma once

#include "ccdim/complexes.hpp"
#include "ccdim/rng.hpp"

namespace ccdim {

struct IncomparableCovers : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ShrinkageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Cover element over a reference chain complex: a union of closed simplices,
// optionally dilated by an open l1 radius (eps > 0 makes it open).
struct DilatedElem {
    std::vector<Chain> base;  // maximal chains of the base subcomplex
    Rat eps = Rat(0);
};

class DeltaCover {
  public:
    DeltaCover(const ChainComplex* k, std::vector<DilatedElem> elems,
               std::vector<std::string> labels);

    const ChainComplex& complex() const { return *k_; }
    int size() const { return static_cast<int>(elems_.size()); }
    const DilatedElem& elem(int i) const { return elems_[i]; }
    const std::string& label(int i) const { return labels_[i]; }
    bool all_closed() const;

    // Exact l1 distance from a point to the closed base of element i.
    Rat dist_to_base(int i, const Vec& p) const;
    // Exact membership; p must lie in the polyhedron for closed elements.
    bool contains(int i, const Vec& p) const;
    std::vector<int> memberships(const Vec& p) const;

    // Coordinates of the stored base simplices, for LP work.
    const std::vector<std::vector<std::vector<Vec>>>& base_coords() const { return coords_; }

  private:
    const ChainComplex* k_;
    std::vector<DilatedElem> elems_;
    std::vector<std::string> labels_;
    std::vector<std::vector<std::vector<Vec>>> coords_;  // [elem][simplex][vertex]
};

struct OrderReport {
    int order = 0;
    bool exact = false;
    long witness_points = 0;
};

// Exact for pure closed subcomplex covers (max over vertices); otherwise a
// certified lower bound from the witness set: all vertices, the barycenters
// of every face of a once-finer subdivision, and seeded random points.
OrderReport cover_order(const DeltaCover& c, int random_witnesses = 10000, uint64_t seed = 1);

// True iff `fine` refines `coarse` (every fine element inside some coarse
// element). Decided by per-simplex containment plus dilation comparison;
// throws IncomparableCovers when neither containment nor a refutation is
// established.
bool is_refinement(const DeltaCover& coarse, const DeltaCover& fine);
// Shrinkage: index-wise containment (same index sets).
bool is_shrinkage(const DeltaCover& coarse, const DeltaCover& fine);

// The zero-loss set B_h as a closed subcomplex element of the reference
// complex, and the facet cover {B_c}_{c in C}.
DilatedElem zero_loss_elem(const ChainComplex& d1, const Concept& h);
DeltaCover zero_loss_cover(const ChainComplex& d1, const Rat& eps = Rat(0));

// Lemma "metric refinement": alpha > 0 with A refined by the alpha-dilation
// of B. A must have open (dilated) elements, B closed ones that refine A.
Rat metric_refinement_radius(const DeltaCover& a, const DeltaCover& b);

// Closed cover on an edgewise refinement of the reference complex, each cell
// assigned to the first containing element of the source cover.
class CellCover {
  public:
    GeoComplex geo;
    std::vector<std::vector<int>> cells_of;  // per element: cell indices into geo.maximal
    std::vector<std::string> labels;
    std::vector<int> owner;  // per cell: owning element

    int size() const { return static_cast<int>(cells_of.size()); }
    int order_exact() const;
    bool contains(int i, const Vec& p) const;
    std::vector<int> memberships(const Vec& p) const;
    Rat dist_to_elem(int i, const Vec& p) const;
};

// Lemma "open cover to closed": escalates the edgewise resolution until every
// cell fits inside a single dilated base simplex of some element; throws
// ShrinkageError past the resolution cap.
CellCover closed_shrinkage(const DeltaCover& u, int max_m = 32);

// Lemma "closed cover rounding": half the minimum distance over disjoint
// (element, reference-face) pairs; nullopt when no pair is disjoint (+inf).
std::optional<Rat> rounding_radius(const CellCover& f);

// Monte-Carlo audit: sampled beta-balls never meet more than order+1 elements.
int audit_rounding(const CellCover& f, const Rat& beta, int order, int samples, uint64_t seed);

// Seeded random open cover of the reference complex for the toolkit tests:
// random subcomplex bases with generous dilations plus one full-space element.
DeltaCover random_open_cover(const ChainComplex& d1, int elements, uint64_t seed);

// Random rational point of the polyhedron.
Vec random_delta_point(const ChainComplex& d1, CounterRng& rng);

}  // namespace ccdim
