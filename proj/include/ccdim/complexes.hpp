#pragma once

#include <functional>
#include <optional>

#include "ccdim/concepts.hpp"
#include "ccdim/lp.hpp"
#include "ccdim/rational.hpp"

namespace ccdim {

// Vertex coordinates of the two canonical level-1 realizations:
// delta: the signed uniform distribution on supp(h); gamma: the +-1/0 vector.
Vec coord_delta(const PartialConcept& h, int n);
Vec coord_gamma(const PartialConcept& h, int n);

// l1 normalization Gamma_C -> Delta_C and its inverse on the image.
Vec embed_point(const Vec& y);
Vec unembed_point(const Vec& z);

struct OutsidePolyhedron : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Chain h_1 >= ... >= h_k, stored top-down (largest support first).
struct Chain {
    std::vector<PartialConcept> elems;

    const PartialConcept& top() const { return elems.front(); }
    const PartialConcept& bottom() const { return elems.back(); }
    int dim() const { return static_cast<int>(elems.size()) - 1; }
    bool operator==(const Chain& o) const { return elems == o.elems; }
};

struct Carrier {
    Chain chain;
    Vec alphas;  // barycentric coordinates, all > 0, matching chain order
    PartialConcept min_elem() const { return chain.bottom(); }
};

// Point location in Delta_{C,1} / Gamma_{C,1} by the support-filtration of
// |mu(x)| tiers. Throws OutsidePolyhedron with a diagnostic when the point
// is not in the polyhedron.
Carrier carrier_delta(const ConceptClass& c, const Vec& mu);
Carrier carrier_gamma(const ConceptClass& c, const Vec& y);

// The level-1 barycentric subdivision of D_C (kind delta) or Q_C (kind gamma):
// vertices are partial concepts, simplices are chains.
struct ChainComplex {
    enum class Kind { delta, gamma };

    ChainComplex(ConceptClass cls, Kind kind);

    const ConceptClass& cls() const { return cls_; }
    Kind kind() const { return kind_; }
    int n() const { return cls_.n(); }
    const std::vector<PartialConcept>& verts() const { return verts_; }
    bool has_vert(const PartialConcept& h) const { return vert_index_.count(h) > 0; }
    int vert_index(const PartialConcept& h) const { return vert_index_.at(h); }

    Vec coord(const PartialConcept& h) const;

    // Maximal chains (the facets); every simplex is a subset of one of these.
    const std::vector<Chain>& maximal_chains() const { return maximal_; }
    // All nonempty chains, deterministically ordered.
    std::vector<Chain> all_chains() const;

    Carrier carrier(const Vec& p) const;
    int dim() const;

  private:
    ConceptClass cls_;
    Kind kind_;
    std::vector<PartialConcept> verts_;
    std::unordered_map<PartialConcept, int, PartialConceptHash> vert_index_;
    std::vector<Chain> maximal_;
};

ChainComplex build_delta1(const ConceptClass& c);
ChainComplex build_gamma1(const ConceptClass& c);  // errors on the full cube

// Dimension of the cubical complex Q_C = size of the largest strongly
// shattered set; dimension of D_C = |X| - 1.
int cubical_dim(const ConceptClass& c);

// Lemma "full subcomplex": every D_{C,1}-chain whose vertices are all cubes
// is a Q_{C,1}-chain. Errors on the full cube.
bool is_full_subcomplex(const ChainComplex& gamma1, const ChainComplex& delta1);

// gamma_0: minimum l1 distance over disjoint closed simplices (equivalently
// disjoint subcomplexes). nullopt is the +infinity sentinel (no disjoint pair).
std::optional<Rat> min_separation(const ChainComplex& k);

// d_l1(p, sigma_h) for the closed simplex sigma_h of a (partial) concept;
// equals twice the zero-loss distance for unit vectors.
Rat dist_point_sigma(const Vec& p, const PartialConcept& h, int n);

// Star and link of w inside the full subcomplex spanned by W (upwards closed).
struct StarLink {
    std::vector<Chain> star, link;
    std::vector<PartialConcept> star_verts, link_verts;
};
StarLink star_link(const ChainComplex& k, const std::vector<PartialConcept>& w_set,
                   const PartialConcept& w);

// Generic geometric simplicial complex, for iterated subdivisions and export.
struct GeoComplex {
    std::vector<Vec> verts;
    std::vector<std::vector<int>> maximal;  // sorted vertex ids
    int level = 1;

    int dim() const;
    // All nonempty faces, deduplicated, sorted.
    std::vector<std::vector<int>> all_faces() const;
    GeoComplex barycentric() const;
    // Edgewise (Freudenthal) m-fold subdivision; face-consistent across
    // shared faces via the global vertex order.
    GeoComplex edgewise(int m) const;
    // Longest edge in l1.
    Rat mesh() const;
};

GeoComplex geo_of_chain_complex(const ChainComplex& k);

}  // namespace ccdim
