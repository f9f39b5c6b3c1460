#pragma once

#include "ccdim/complexes.hpp"
#include "ccdim/concepts.hpp"
#include "ccdim/rng.hpp"

namespace ccdim {

struct CoverMeshError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Integer grid vertex of the Kuhn triangulation: coordinates in units of 2/m,
// so entries lie in [-m/2, m/2].
using GridVert = std::vector<int>;

// Carrier of a point inside the Kuhn-triangulated grid of a cubical complex:
// the minimal simplex containing it, with barycentric coordinates and the
// top tier (the minimal face of its chain in the barycentric subdivision,
// i.e. the vertices of maximal weight).
struct GridCarrier {
    std::vector<GridVert> verts;
    std::vector<Rat> lambda;
    std::vector<int> top_tier;  // indices into verts
};

// The open-vertex-star cover of the polyhedron of a cubical complex,
// triangulated by an even m-grid with Kuhn simplices. Each grid vertex w is
// labeled by the completion of its carrier cube matching sign(w) with the +1
// tie rule; U_g is the union of open stars of g-labeled vertices. Its closed
// shrinkage F_g is the union of closed barycentric-subdivision stars of the
// same vertices, decided by the top-tier rule without materializing the
// subdivision.
class GridStarCover {
  public:
    // cubes: the cubical complex (all faces present). For a class this is
    // cube_partials(); for the boundary construction it is every proper face
    // of the full cube.
    GridStarCover(ConceptClass cls, std::vector<PartialConcept> cubes, int m);

    const ConceptClass& cls() const { return cls_; }
    int n() const { return cls_.n(); }
    int m() const { return m_; }
    int dim() const { return dim_; }

    bool in_polyhedron(const Vec& y) const;
    // Minimal cube of the complex containing y; throws OutsidePolyhedron.
    PartialConcept carrier_cube(const Vec& y) const;

    Vec point_of(const GridVert& g) const;
    Concept label_of(const GridVert& g) const;

    GridCarrier carrier(const Vec& y) const;

    // Labels of the carrier vertices: the open stars containing y. At most
    // dim+1 distinct labels.
    std::vector<Concept> open_memberships(const Vec& y) const;
    // Labels of the top tier: the closed sd-stars containing y. Nonempty.
    std::vector<Concept> closed_memberships(const Vec& y) const;
    // Deterministic learner output: the lowest class index among the closed
    // memberships.
    Concept output_label(const Vec& y) const;

    // Exact max over all grid vertices w and closed-star vertices v of
    // d_l1(embed(v), sigma_{label(w)}) = 2 loss_{embed(v)}(label(w)); the
    // open cover satisfies U_g within sigma_g^(eps) for any eps > this.
    Rat max_star_distance() const;

    // Exact cover order: max over Kuhn simplices of distinct vertex labels,
    // minus one. Enumerates the full grid; intended for small m (the value is
    // the same for every even m).
    int exact_order() const;

    // Structural rounding radius: a ball of this radius meets only elements
    // whose label appears on the carrier, hence at most dim+1 of them.
    Rat rounding_radius() const { return rat(1, 2L * m_ * (dim_ + 1)); }

    // Monte-Carlo audit of the rounding property: sampled pairs within the
    // radius never produce a closed membership outside the carrier labels.
    // Returns the number of violations (0 expected).
    int audit_rounding(int samples, CounterRng& rng) const;

    // Seeded random rational point of the polyhedron.
    Vec sample_point(CounterRng& rng) const;

    std::vector<GridVert> all_vertices() const;
    // Closed-star vertex superset of w (vertices within one cell in every
    // incident cube); sound for containment bounds.
    std::vector<GridVert> star_box(const GridVert& w) const;

    const std::vector<PartialConcept>& cubes() const { return cubes_; }

  private:
    ConceptClass cls_;
    std::vector<PartialConcept> cubes_;
    std::unordered_set<PartialConcept, PartialConceptHash> cube_set_;
    int m_;
    int dim_;
};

// Auto-escalating constructors: double m until max_star_distance < eps
// (grid exponent capped; throws CoverMeshError when the cap cannot meet eps).
GridStarCover build_star_cover(const ConceptClass& e, const Rat& eps, int max_exponent = 9);
// The boundary construction for the full cube class: all proper faces.
GridStarCover build_boundary_star_cover(int n, const Rat& eps, int max_exponent = 9);

std::vector<PartialConcept> boundary_cubes(int n);

}  // namespace ccdim
