#include "ccdim/covers.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ccdim {

namespace {

bool chain_subset(const Chain& small, const Chain& big) {
    for (const auto& h : small.elems)
        if (std::find(big.elems.begin(), big.elems.end(), h) == big.elems.end()) return false;
    return true;
}

// Coordinate bounding-box l1 gap, a cheap lower bound for simplex distances.
Rat bbox_gap(const std::vector<Vec>& a, const std::vector<Vec>& b) {
    Rat total = 0;
    size_t n = a[0].size();
    for (size_t x = 0; x < n; ++x) {
        Rat alo = a[0][x], ahi = a[0][x], blo = b[0][x], bhi = b[0][x];
        for (const auto& v : a) {
            alo = std::min(alo, v[x]);
            ahi = std::max(ahi, v[x]);
        }
        for (const auto& v : b) {
            blo = std::min(blo, v[x]);
            bhi = std::max(bhi, v[x]);
        }
        if (alo > bhi) total += alo - bhi;
        else if (blo > ahi) total += blo - ahi;
    }
    return total;
}

Rat bbox_gap_point(const Vec& p, const std::vector<Vec>& b) {
    Rat total = 0;
    for (size_t x = 0; x < p.size(); ++x) {
        Rat blo = b[0][x], bhi = b[0][x];
        for (const auto& v : b) {
            blo = std::min(blo, v[x]);
            bhi = std::max(bhi, v[x]);
        }
        if (p[x] > bhi) total += p[x] - bhi;
        else if (p[x] < blo) total += blo - p[x];
    }
    return total;
}

}  // namespace

DeltaCover::DeltaCover(const ChainComplex* k, std::vector<DilatedElem> elems,
                       std::vector<std::string> labels)
    : k_(k), elems_(std::move(elems)), labels_(std::move(labels)) {
    if (labels_.size() != elems_.size()) throw std::invalid_argument("cover label mismatch");
    coords_.resize(elems_.size());
    for (size_t i = 0; i < elems_.size(); ++i)
        for (const auto& chain : elems_[i].base) {
            std::vector<Vec> verts;
            for (const auto& h : chain.elems) verts.push_back(k_->coord(h));
            coords_[i].push_back(std::move(verts));
        }
}

bool DeltaCover::all_closed() const {
    for (const auto& e : elems_)
        if (e.eps > 0) return false;
    return true;
}

Rat DeltaCover::dist_to_base(int i, const Vec& p) const {
    std::optional<Rat> best;
    for (const auto& verts : coords_[i]) {
        if (best && bbox_gap_point(p, verts) >= *best) continue;
        Rat d = dist_point_simplex(p, verts);
        if (!best || d < *best) best = d;
        if (*best == 0) break;
    }
    if (!best) throw std::logic_error("empty cover element");
    return *best;
}

bool DeltaCover::contains(int i, const Vec& p) const {
    const auto& e = elems_[i];
    if (e.base.empty()) return false;
    if (e.eps > 0) return dist_to_base(i, p) < e.eps;
    // Closed subcomplex: the carrier chain must sit inside a base simplex.
    Carrier car = k_->carrier(p);
    for (const auto& chain : e.base)
        if (chain_subset(car.chain, chain)) return true;
    return false;
}

std::vector<int> DeltaCover::memberships(const Vec& p) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (contains(i, p)) out.push_back(i);
    return out;
}

Vec random_delta_point(const ChainComplex& d1, CounterRng& rng) {
    const auto& maxc = d1.maximal_chains();
    const Chain& chain = maxc[rng.below(maxc.size())];
    // Random positive rational barycentric weights.
    std::vector<long> w(chain.elems.size());
    long total = 0;
    for (auto& x : w) {
        x = 1 + static_cast<long>(rng.below(16));
        total += x;
    }
    Vec p(d1.n(), Rat(0));
    for (size_t i = 0; i < chain.elems.size(); ++i)
        p = vec_add(p, vec_scale(d1.coord(chain.elems[i]), rat(w[i], total)));
    return p;
}

OrderReport cover_order(const DeltaCover& c, int random_witnesses, uint64_t seed) {
    const ChainComplex& k = c.complex();
    OrderReport rep;
    if (c.all_closed()) {
        // Exact: memberships are monotone under taking carrier vertices.
        int best = 0;
        for (const auto& h : k.verts())
            best = std::max(best, static_cast<int>(c.memberships(k.coord(h)).size()));
        rep.order = best - 1;
        rep.exact = true;
        return rep;
    }
    int best = 0;
    long count = 0;
    auto probe = [&](const Vec& p) {
        best = std::max(best, static_cast<int>(c.memberships(p).size()));
        ++count;
    };
    for (const auto& h : k.verts()) probe(k.coord(h));
    // Barycenters of every face of a once-finer subdivision.
    for (const auto& chain : k.maximal_chains()) {
        int len = static_cast<int>(chain.elems.size());
        for (uint32_t sub = 1; sub < (1u << len); ++sub) {
            Vec p(k.n(), Rat(0));
            int cnt = __builtin_popcount(sub);
            for (int i = 0; i < len; ++i)
                if ((sub >> i) & 1)
                    p = vec_add(p, vec_scale(k.coord(chain.elems[i]), rat(1, cnt)));
            probe(p);
        }
    }
    CounterRng rng(seed, 400);
    for (int i = 0; i < random_witnesses; ++i) probe(random_delta_point(k, rng));
    rep.order = best - 1;
    rep.exact = false;
    rep.witness_points = count;
    return rep;
}

namespace {

// Conservative element containment: fine inside coarse?
// 1 = contained, 0 = refuted, -1 = undecided.
int elem_contained(const DeltaCover& fine, int j, const DeltaCover& coarse, int i) {
    const auto& ej = fine.elem(j);
    const auto& ei = coarse.elem(i);
    if (ej.base.empty()) return 1;
    // Subcomplex containment: every base simplex of j inside one of i.
    bool sub = true;
    for (const auto& cj : ej.base) {
        bool in = false;
        for (const auto& ci : ei.base)
            if (chain_subset(cj, ci)) in = true;
        if (!in) sub = false;
    }
    if (sub && ej.eps <= ei.eps) return 1;
    if (ei.eps > 0 && ej.eps <= ei.eps) {
        // Dilation slack: d(x, base_i) < eps_j + worst <= eps_i for x in the
        // open dilation of base_j, via the triangle inequality through base_j.
        Rat budget = ei.eps - ej.eps;
        bool ok = true;
        for (size_t s = 0; s < fine.base_coords()[j].size() && ok; ++s) {
            const auto& verts = fine.base_coords()[j][s];
            // A single coarse simplex must absorb the whole fine simplex.
            bool simplex_ok = false;
            for (const auto& ci : coarse.base_coords()[i]) {
                Rat worst = 0;
                for (const auto& v : verts) {
                    Rat d = dist_point_simplex(v, ci);
                    if (d > worst) worst = d;
                }
                if (ej.eps > 0 ? worst <= budget : worst < ei.eps) {
                    simplex_ok = true;
                    break;
                }
            }
            if (!simplex_ok) ok = false;
        }
        if (ok) return 1;
    }
    // Try to refute: a base vertex of j that is not in i at all.
    for (const auto& verts : fine.base_coords()[j])
        for (const auto& v : verts)
            if (!coarse.contains(i, v)) return 0;
    return -1;
}

}  // namespace

bool is_refinement(const DeltaCover& coarse, const DeltaCover& fine) {
    for (int j = 0; j < fine.size(); ++j) {
        bool found = false, undecided = false;
        for (int i = 0; i < coarse.size() && !found; ++i) {
            int r = elem_contained(fine, j, coarse, i);
            if (r == 1) found = true;
            if (r == -1) undecided = true;
        }
        if (!found) {
            if (undecided)
                throw IncomparableCovers("refinement undecided for element " + fine.label(j));
            return false;
        }
    }
    return true;
}

bool is_shrinkage(const DeltaCover& coarse, const DeltaCover& fine) {
    if (coarse.size() != fine.size())
        throw IncomparableCovers("shrinkage requires identical index sets");
    for (int i = 0; i < fine.size(); ++i) {
        int r = elem_contained(fine, i, coarse, i);
        if (r == -1)
            throw IncomparableCovers("shrinkage undecided for element " + fine.label(i));
        if (r == 0) return false;
    }
    return true;
}

DilatedElem zero_loss_elem(const ChainComplex& d1, const Concept& h) {
    // Simplices of B_h: chains whose top is extended by h; store the maximal
    // suffixes of maximal chains.
    DilatedElem elem;
    std::set<std::vector<PartialConcept>> seen;
    PartialConcept ht{d1.cls().full_mask(), h.bits};
    for (const auto& chain : d1.maximal_chains()) {
        std::vector<PartialConcept> kept;
        for (const auto& e : chain.elems)
            if (extends(ht, e)) kept.push_back(e);
        if (!kept.empty() && seen.insert(kept).second) elem.base.push_back(Chain{kept});
    }
    // Drop non-maximal bases.
    std::vector<Chain> maximal;
    for (size_t a = 0; a < elem.base.size(); ++a) {
        bool dominated = false;
        for (size_t b = 0; b < elem.base.size(); ++b)
            if (a != b && chain_subset(elem.base[a], elem.base[b]) &&
                elem.base[a].elems.size() < elem.base[b].elems.size())
                dominated = true;
        if (!dominated) maximal.push_back(elem.base[a]);
    }
    elem.base = std::move(maximal);
    return elem;
}

DeltaCover zero_loss_cover(const ChainComplex& d1, const Rat& eps) {
    std::vector<DilatedElem> elems;
    std::vector<std::string> labels;
    for (const auto& c : d1.cls().concepts()) {
        DilatedElem e = zero_loss_elem(d1, c);
        e.eps = eps;
        elems.push_back(std::move(e));
        labels.push_back(concept_str(c, d1.n()));
    }
    return DeltaCover(&d1, std::move(elems), std::move(labels));
}

Rat metric_refinement_radius(const DeltaCover& a, const DeltaCover& b) {
    std::optional<Rat> alpha;
    for (int j = 0; j < b.size(); ++j) {
        if (b.elem(j).eps > 0)
            throw std::invalid_argument("metric refinement: B must have closed elements");
        if (b.elem(j).base.empty()) continue;  // empty elements impose nothing
        std::optional<Rat> best_slack;
        for (int i = 0; i < a.size(); ++i) {
            if (a.elem(i).eps <= 0) throw std::invalid_argument("metric refinement: A must be open");
            // Sound upper bound on max_{B_j} d(., base_i): per fine simplex,
            // the best single coarse simplex (convex max sits at vertices).
            Rat worst_over_bj = 0;
            bool feasible = true;
            for (const auto& verts : b.base_coords()[j]) {
                std::optional<Rat> best_sigma;
                for (const auto& ci : a.base_coords()[i]) {
                    Rat worst = 0;
                    for (const auto& v : verts) {
                        Rat d = dist_point_simplex(v, ci);
                        if (d > worst) worst = d;
                    }
                    if (!best_sigma || worst < *best_sigma) best_sigma = worst;
                }
                if (!best_sigma) {
                    feasible = false;
                    break;
                }
                worst_over_bj = std::max(worst_over_bj, *best_sigma);
            }
            if (!feasible) continue;
            Rat slack = a.elem(i).eps - worst_over_bj;
            if (slack > 0 && (!best_slack || slack > *best_slack)) best_slack = slack;
        }
        if (!best_slack)
            throw std::invalid_argument("B does not refine A (element " + b.label(j) + ")");
        if (!alpha || *best_slack < *alpha) alpha = *best_slack;
    }
    if (!alpha) throw std::invalid_argument("metric refinement: B has no nonempty element");
    return *alpha / 2;
}

CellCover closed_shrinkage(const DeltaCover& u, int max_m) {
    const ChainComplex& k = u.complex();
    GeoComplex geo = geo_of_chain_complex(k);
    for (int m = 2; m <= max_m; m *= 2) {
        GeoComplex ref = geo.edgewise(m);
        // Distance memo per (vertex, element simplex).
        std::map<std::pair<int, std::pair<int, int>>, Rat> memo;
        auto vert_dist = [&](int vid, int elem, int sidx) {
            auto key = std::make_pair(vid, std::make_pair(elem, sidx));
            auto it = memo.find(key);
            if (it != memo.end()) return it->second;
            Rat d = dist_point_simplex(ref.verts[vid], u.base_coords()[elem][sidx]);
            memo[key] = d;
            return d;
        };
        std::vector<int> owner(ref.maximal.size(), -1);
        bool all_assigned = true;
        for (size_t c = 0; c < ref.maximal.size(); ++c) {
            for (int i = 0; i < u.size() && owner[c] < 0; ++i) {
                const Rat& eps = u.elem(i).eps;
                for (size_t s = 0; s < u.base_coords()[i].size(); ++s) {
                    const auto& sigma = u.base_coords()[i][s];
                    // The whole cell must sit inside the (dilated) simplex;
                    // the max of the convex distance sits at cell vertices.
                    // Cheap bounds bracket the LP: the bbox gap from below,
                    // the nearest simplex vertex from above.
                    bool fits = true;
                    for (int vid : ref.maximal[c]) {
                        if (eps > 0) {
                            if (bbox_gap_point(ref.verts[vid], sigma) >= eps) {
                                fits = false;
                                break;
                            }
                            Rat upper;
                            bool first = true;
                            for (const auto& u_vert : sigma) {
                                Rat duv = l1_dist(ref.verts[vid], u_vert);
                                if (first || duv < upper) upper = duv;
                                first = false;
                            }
                            if (upper < eps) continue;  // vertex certified without an LP
                        }
                        Rat d = vert_dist(vid, i, static_cast<int>(s));
                        if ((eps > 0 && d >= eps) || (eps == 0 && d > 0)) {
                            fits = false;
                            break;
                        }
                    }
                    if (fits) {
                        owner[c] = i;
                        break;
                    }
                }
            }
            if (owner[c] < 0) {
                all_assigned = false;
                break;
            }
        }
        if (!all_assigned) continue;
        CellCover out;
        out.geo = std::move(ref);
        out.labels.assign(u.size(), "");
        for (int i = 0; i < u.size(); ++i) out.labels[i] = u.label(i);
        out.cells_of.assign(u.size(), {});
        out.owner = owner;
        for (size_t c = 0; c < owner.size(); ++c) out.cells_of[owner[c]].push_back(static_cast<int>(c));
        return out;
    }
    throw ShrinkageError("fineness bound not reached within the resolution cap");
}

int CellCover::order_exact() const {
    // Vertex-level membership counts are exact for subcomplex covers.
    std::vector<std::set<int>> owners_at(geo.verts.size());
    for (size_t c = 0; c < geo.maximal.size(); ++c)
        for (int vid : geo.maximal[c]) owners_at[vid].insert(owner[c]);
    int best = 0;
    for (const auto& s : owners_at) best = std::max(best, static_cast<int>(s.size()));
    return best - 1;
}

Rat CellCover::dist_to_elem(int i, const Vec& p) const {
    std::optional<Rat> best;
    for (int c : cells_of[i]) {
        std::vector<Vec> verts;
        for (int vid : geo.maximal[c]) verts.push_back(geo.verts[vid]);
        if (best && bbox_gap_point(p, verts) >= *best) continue;
        Rat d = dist_point_simplex(p, verts);
        if (!best || d < *best) best = d;
        if (*best == 0) break;
    }
    return best ? *best : Rat(1000000);
}

bool CellCover::contains(int i, const Vec& p) const { return dist_to_elem(i, p) == 0; }

std::vector<int> CellCover::memberships(const Vec& p) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (contains(i, p)) out.push_back(i);
    return out;
}

std::optional<Rat> rounding_radius(const CellCover& f) {
    // Half the minimum distance over disjoint (element, reference-face) pairs.
    // Faces sharing no vertex with the element are the disjoint ones.
    std::vector<std::set<int>> elem_verts(f.size());
    for (size_t c = 0; c < f.geo.maximal.size(); ++c)
        for (int vid : f.geo.maximal[c]) elem_verts[f.owner[c]].insert(vid);
    auto faces = f.geo.all_faces();
    std::optional<Rat> best;
    for (int i = 0; i < f.size(); ++i) {
        // Element simplices once.
        std::vector<std::vector<Vec>> mine;
        for (int c : f.cells_of[i]) {
            std::vector<Vec> verts;
            for (int vid : f.geo.maximal[c]) verts.push_back(f.geo.verts[vid]);
            mine.push_back(std::move(verts));
        }
        for (const auto& face : faces) {
            bool disjoint = true;
            for (int vid : face)
                if (elem_verts[i].count(vid)) disjoint = false;
            if (!disjoint) continue;
            std::vector<Vec> fverts;
            for (int vid : face) fverts.push_back(f.geo.verts[vid]);
            for (const auto& sigma : mine) {
                if (best && bbox_gap(sigma, fverts) >= *best) continue;
                // Seed the prune with the cheap vertex-pair upper bound.
                Rat upper;
                bool first = true;
                for (const auto& a : sigma)
                    for (const auto& b : fverts) {
                        Rat d = l1_dist(a, b);
                        if (first || d < upper) upper = d;
                        first = false;
                    }
                if (best && upper >= *best && bbox_gap(sigma, fverts) >= *best) continue;
                if (!best || upper < *best) best = upper;
                Rat d = dist_simplex_simplex(sigma, fverts);
                if (!best || d < *best) best = d;
            }
        }
    }
    if (!best) return std::nullopt;
    return *best / 2;
}

int audit_rounding(const CellCover& f, const Rat& beta, int order, int samples, uint64_t seed) {
    CounterRng rng(seed, 401);
    size_t n = f.geo.verts[0].size();
    // Cached cell coordinates and bounding boxes, grouped by owner.
    std::vector<std::vector<std::vector<Vec>>> coords(f.size());
    std::vector<std::vector<std::pair<Vec, Vec>>> boxes(f.size());
    for (size_t c = 0; c < f.geo.maximal.size(); ++c) {
        std::vector<Vec> verts;
        for (int vid : f.geo.maximal[c]) verts.push_back(f.geo.verts[vid]);
        Vec lo = verts[0], hi = verts[0];
        for (const auto& v : verts)
            for (size_t x = 0; x < n; ++x) {
                lo[x] = std::min(lo[x], v[x]);
                hi[x] = std::max(hi[x], v[x]);
            }
        boxes[f.owner[c]].push_back({lo, hi});
        coords[f.owner[c]].push_back(std::move(verts));
    }
    auto box_gap = [&](const Vec& p, const std::pair<Vec, Vec>& b) {
        Rat total = 0;
        for (size_t x = 0; x < n; ++x) {
            if (p[x] > b.second[x]) total += p[x] - b.second[x];
            else if (p[x] < b.first[x]) total += b.first[x] - p[x];
        }
        return total;
    };

    int violations = 0;
    std::vector<std::vector<int>> near(f.size());
    for (int s = 0; s < samples; ++s) {
        const auto& cell = f.geo.maximal[rng.below(f.geo.maximal.size())];
        std::vector<long> w(cell.size());
        long total = 0;
        for (auto& x : w) {
            x = 1 + static_cast<long>(rng.below(8));
            total += x;
        }
        Vec p(n, Rat(0));
        for (size_t i = 0; i < cell.size(); ++i)
            p = vec_add(p, vec_scale(f.geo.verts[cell[i]], rat(w[i], total)));
        // Cheap filter: bbox gaps lower-bound distances, so when at most
        // order+1 elements pass, no violation is possible and no LP runs.
        int candidates = 0;
        for (int i = 0; i < f.size(); ++i) {
            near[i].clear();
            for (size_t c = 0; c < boxes[i].size(); ++c)
                if (box_gap(p, boxes[i][c]) < beta) near[i].push_back(static_cast<int>(c));
            if (!near[i].empty()) ++candidates;
        }
        if (candidates <= order + 1) continue;
        int meets = 0;
        for (int i = 0; i < f.size(); ++i) {
            bool hit = false;
            for (int c : near[i])
                if (!hit && dist_point_simplex(p, coords[i][c]) < beta) hit = true;
            if (hit) ++meets;
        }
        if (meets > order + 1) ++violations;
    }
    return violations;
}

DeltaCover random_open_cover(const ChainComplex& d1, int elements, uint64_t seed) {
    CounterRng rng(seed, 402);
    const auto& maxc = d1.maximal_chains();
    std::vector<DilatedElem> elems;
    std::vector<std::string> labels;
    for (int i = 0; i + 1 < elements; ++i) {
        DilatedElem e;
        int picks = 1 + static_cast<int>(rng.below(std::max<size_t>(1, maxc.size() / 2)));
        std::set<size_t> chosen;
        for (int t = 0; t < picks; ++t) chosen.insert(rng.below(maxc.size()));
        for (size_t idx : chosen) e.base.push_back(maxc[idx]);
        e.eps = Rat(1 + static_cast<long>(rng.below(2)), 2);  // 1/2 or 1
        elems.push_back(std::move(e));
        labels.push_back("U" + std::to_string(i + 1));
    }
    // A generously dilated full-space element guarantees coverage and keeps
    // the shrinkage construction terminating at a coarse resolution.
    DilatedElem space;
    space.base.assign(maxc.begin(), maxc.end());
    space.eps = rat(1, 2);
    elems.push_back(std::move(space));
    labels.push_back("U" + std::to_string(elements));
    return DeltaCover(&d1, std::move(elems), std::move(labels));
}

}  // namespace ccdim
