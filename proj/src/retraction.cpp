#include "ccdim/retraction.hpp"

namespace ccdim {

Retraction::Retraction(ConceptClass e, Rat eps0, int max_grid_exponent, long collapse_budget)
    : e_(std::move(e)), eps0_(std::move(eps0)), collapse_budget_(collapse_budget) {
    if (eps0_ <= 0) throw std::invalid_argument("eps0 must be positive");
    if (e_.is_full_cube())
        throw std::invalid_argument("retraction undefined for the full cube class");
    if (!e_.is_extremal()) throw std::invalid_argument("retraction requires an extremal class");

    for (const auto& h : e_.cube_partials()) cube_set_.insert(h);

    gamma0_ = min_separation(build_delta1(e_));
    // The cover must sit inside sigma_g^(eps) with eps below both gamma_0
    // (Claim "intersection") and eps0 (base-case containment); the contraction
    // time window is independent and only needs 2 eps_time < eps0.
    Rat target = eps0_;
    if (gamma0_ && *gamma0_ < target) target = *gamma0_;
    cover_ = build_star_cover(e_, target, max_grid_exponent);
    eps_cover_ = cover_->max_star_distance();
    eps_time_ = eps0_ / 4;
}

const Contraction& Retraction::contraction_for(const PartialConcept& w) const {
    auto it = contractions_.find(w);
    if (it != contractions_.end()) return it->second;
    ConceptClass ew = e_.h_restriction(w);
    auto cubes = ew.cube_partials();
    auto collapse = collapse_search(cubes, e_.n(), collapse_budget_);
    if (!collapse.success) {
        std::string msg = "collapse search stuck for w = " + partial_str(w, e_.n()) +
                          " (remaining cells:";
        for (const auto& c : collapse.stuck) msg += " " + partial_str(c, e_.n());
        throw RetractionError(msg + ")");
    }
    auto [pos, inserted] = contractions_.emplace(
        w, Contraction(collapse.steps, collapse.final_vertex, e_.n(), eps_time_));
    return pos->second;
}

Vec Retraction::eval(const Vec& mu) const { return eval_traced(mu, nullptr); }

Vec Retraction::eval_traced(const Vec& mu, std::vector<TraceEntry>* trace) const {
    Carrier car = carrier_delta(e_, mu);
    const PartialConcept& w = car.chain.bottom();
    if (cube_set_.count(w)) return mu;  // all-cube chain: mu already lies in the image

    const Contraction& fw = contraction_for(w);
    const Rat& alpha = car.alphas.back();
    if (alpha == 1) {
        Vec image = embed_point(fw.base_point());
        if (trace) trace->push_back({w, alpha, mu, image});
        return image;
    }
    Vec stripped = vec_scale(vec_sub(mu, vec_scale(coord_delta(w, e_.n()), alpha)), 1 / (1 - alpha));
    Vec z = eval_traced(stripped, trace);
    // z lies in the normalized complex of E_w; pull it back to cubical
    // coordinates, run the modified contraction, normalize again.
    Vec y = unembed_point(z);
    if (!extends(cover_->carrier_cube(y), w))
        throw std::logic_error("cone point left the restricted complex at w = " +
                               partial_str(w, e_.n()));
    Vec moved = fw.eval(y, alpha);
    Vec image = embed_point(moved);
    if (trace) trace->push_back({w, alpha, z, image});
    return image;
}

bool Retraction::property1_holds(const Vec& mu) const {
    Carrier car = carrier_delta(e_, mu);
    Vec y = unembed_point(eval(mu));
    PartialConcept q = cover_->carrier_cube(y);
    return extends(q, car.chain.bottom());
}

std::vector<Concept> Retraction::pullback_open(const Vec& mu) const {
    return cover_->open_memberships(unembed_point(eval(mu)));
}

std::vector<Concept> Retraction::pullback_closed(const Vec& mu) const {
    return cover_->closed_memberships(unembed_point(eval(mu)));
}

}  // namespace ccdim
