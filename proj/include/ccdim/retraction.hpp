#pragma once

#include <map>

#include "ccdim/collapse.hpp"
#include "ccdim/grid_cover.hpp"

namespace ccdim {

struct RetractionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The retraction f from Delta_E onto the normalized cubical complex, built
// by peeling non-cube vertices of Delta_{E,1} in decreasing support order.
// Each peel composes a cone extension over the link with a cone collapse
// through the modified contraction of the restricted cubical complex.
//
// Evaluation strips the minimal chain element w of the carrier while it is
// not a cube: f(alpha w + (1-alpha) mu') = F_w(f(mu'), alpha). Cubes never
// sit below non-cubes in a chain, so the recursion peels vertices exactly in
// the order the induction added them.
class Retraction {
  public:
    Retraction(ConceptClass e, Rat eps0, int max_grid_exponent = 9,
               long collapse_budget = 100000);

    const ConceptClass& cls() const { return e_; }
    const GridStarCover& cover() const { return *cover_; }
    const Rat& eps0() const { return eps0_; }
    const Rat& eps_time() const { return eps_time_; }
    const Rat& eps_cover() const { return eps_cover_; }
    const std::optional<Rat>& gamma0() const { return gamma0_; }

    Vec eval(const Vec& mu) const;

    struct TraceEntry {
        PartialConcept w;
        Rat alpha;
        Vec cone_point;  // f(mu') before the collapse
        Vec image;       // F_w(f(mu'), alpha)
    };
    Vec eval_traced(const Vec& mu, std::vector<TraceEntry>* trace) const;

    // Property 1: f(mu) lies in the normalized cubical complex of E_{h[mu]}.
    bool property1_holds(const Vec& mu) const;

    // Pullback cover memberships on Delta_E: open f^{-1}(U_g) and its closed
    // sd-star shrinkage. Both exact; at most VCdim(E)+1 labels each.
    std::vector<Concept> pullback_open(const Vec& mu) const;
    std::vector<Concept> pullback_closed(const Vec& mu) const;

  private:
    const Contraction& contraction_for(const PartialConcept& w) const;

    ConceptClass e_;
    Rat eps0_, eps_time_, eps_cover_;
    std::optional<Rat> gamma0_;  // nullopt = no disjoint subcomplex pair
    std::optional<GridStarCover> cover_;
    std::unordered_set<PartialConcept, PartialConceptHash> cube_set_;
    long collapse_budget_;
    mutable std::map<PartialConcept, Contraction> contractions_;
};

}  // namespace ccdim
