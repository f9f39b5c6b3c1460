#include "ccdim/complexes.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ccdim {

Vec coord_delta(const PartialConcept& h, int n) {
    if (h.support == 0) throw std::invalid_argument("coord_delta: empty support");
    Rat w = rat(1, h.support_size());
    Vec v(n, Rat(0));
    for (int x = 0; x < n; ++x)
        if (h.defined(x)) v[x] = h.value(x) > 0 ? w : -w;
    return v;
}

Vec coord_gamma(const PartialConcept& h, int n) {
    Vec v(n, Rat(0));
    for (int x = 0; x < n; ++x)
        if (h.defined(x)) v[x] = Rat(h.value(x));
    return v;
}

Vec embed_point(const Vec& y) {
    Rat norm = l1_norm(y);
    if (norm == 0) throw std::invalid_argument("embed_point: zero vector");
    return vec_scale(y, 1 / norm);
}

Vec unembed_point(const Vec& z) {
    Rat norm = linf_norm(z);
    if (norm == 0) throw std::invalid_argument("unembed_point: zero vector");
    return vec_scale(z, 1 / norm);
}

namespace {

struct Tier {
    Rat value;
    uint32_t mask;
};

// |p(x)| tiers in decreasing order of value, zeros excluded.
std::vector<Tier> tiers_of(const Vec& p) {
    std::map<Rat, uint32_t, std::greater<Rat>> by_value;
    for (size_t x = 0; x < p.size(); ++x)
        if (p[x] != 0) by_value[rat_abs(p[x])] |= 1u << x;
    std::vector<Tier> out;
    for (auto& [v, m] : by_value) out.push_back({v, m});
    return out;
}

uint32_t sign_bits(const Vec& p) {
    uint32_t b = 0;
    for (size_t x = 0; x < p.size(); ++x)
        if (p[x] > 0) b |= 1u << x;
    return b;
}

std::string nearest_concept_diag(const ConceptClass& c, const Vec& p) {
    // Closest zero-loss simplex by mismatched mass, as a diagnostic.
    Rat best;
    int best_i = -1;
    for (int i = 0; i < c.size(); ++i) {
        Rat miss = 0;
        for (int x = 0; x < c.n(); ++x)
            if (p[x] != 0 && (p[x] > 0) != (c[i].value(x) > 0)) miss += rat_abs(p[x]);
        if (best_i < 0 || miss < best) {
            best = miss;
            best_i = i;
        }
    }
    return "nearest facet sigma_" + concept_str(c[best_i], c.n()) + " at mismatched mass " +
           rat_str(best);
}

}  // namespace

Carrier carrier_delta(const ConceptClass& c, const Vec& mu) {
    if (static_cast<int>(mu.size()) != c.n())
        throw std::invalid_argument("carrier_delta: dimension mismatch");
    auto tiers = tiers_of(mu);
    if (tiers.empty()) throw OutsidePolyhedron("carrier_delta: zero point");
    uint32_t signs = sign_bits(mu);
    uint32_t supp = 0;
    for (const auto& t : tiers) supp |= t.mask;
    PartialConcept full_pattern{supp, signs & supp};
    if (!c.realizable(full_pattern))
        throw OutsidePolyhedron("point not in Delta: sign pattern " +
                                partial_str(full_pattern, c.n()) + " unrealizable; " +
                                nearest_concept_diag(c, mu));

    // Prefix supports from the top tier down; tier t value u_t satisfies
    // u_t = sum_{j>=t} alpha_j / |S_j| over prefixes S_j containing it.
    Carrier res;
    int T = static_cast<int>(tiers.size());
    std::vector<uint32_t> prefix(T);
    uint32_t acc = 0;
    for (int t = 0; t < T; ++t) {
        acc |= tiers[t].mask;
        prefix[t] = acc;
    }
    Rat total = 0;
    // Chain is top-down: largest support first = last prefix.
    for (int j = T - 1; j >= 0; --j) {
        Rat next = j + 1 < T ? tiers[j + 1].value : Rat(0);
        Rat alpha = Rat(__builtin_popcount(prefix[j])) * (tiers[j].value - next);
        res.chain.elems.push_back(PartialConcept{prefix[j], signs & prefix[j]});
        res.alphas.push_back(alpha);
        total += alpha;
    }
    if (total != 1)
        throw OutsidePolyhedron("point not on the l1 unit sphere: |mu|_1 = " + rat_str(l1_norm(mu)));
    return res;
}

Carrier carrier_gamma(const ConceptClass& c, const Vec& y) {
    if (static_cast<int>(y.size()) != c.n())
        throw std::invalid_argument("carrier_gamma: dimension mismatch");
    auto tiers = tiers_of(y);
    if (tiers.empty() || tiers[0].value != 1)
        throw OutsidePolyhedron("point not in Gamma: no coordinate at +-1");
    uint32_t signs = sign_bits(y);
    Carrier res;
    int T = static_cast<int>(tiers.size());
    std::vector<uint32_t> prefix(T);
    uint32_t acc = 0;
    for (int t = 0; t < T; ++t) {
        acc |= tiers[t].mask;
        prefix[t] = acc;
    }
    for (int j = T - 1; j >= 0; --j) {
        PartialConcept h{prefix[j], signs & prefix[j]};
        if (!c.is_cube(h))
            throw OutsidePolyhedron("point not in Gamma: pattern " + partial_str(h, c.n()) +
                                    " is not a cube");
        Rat next = j + 1 < T ? tiers[j + 1].value : Rat(0);
        res.chain.elems.push_back(h);
        res.alphas.push_back(tiers[j].value - next);
    }
    return res;
}

ChainComplex::ChainComplex(ConceptClass cls, Kind kind) : cls_(std::move(cls)), kind_(kind) {
    if (kind_ == Kind::gamma && cls_.is_full_cube())
        throw std::invalid_argument("Gamma_{C,1} of the full cube does not embed; use the boundary");
    verts_ = kind_ == Kind::delta ? cls_.realizable_partials() : cls_.cube_partials();
    for (int i = 0; i < static_cast<int>(verts_.size()); ++i) vert_index_[verts_[i]] = i;

    // Maximal chains are full flags from a concept down, dropping one support
    // coordinate per step while staying realizable (delta) or a cube (gamma).
    auto admissible = [&](const PartialConcept& h) {
        return kind_ == Kind::delta ? cls_.realizable(h) : cls_.is_cube(h);
    };
    std::vector<PartialConcept> stack;
    std::function<void(const PartialConcept&)> descend = [&](const PartialConcept& h) {
        stack.push_back(h);
        bool leaf = true;
        if (h.support_size() > 1) {
            for (int x = 0; x < n(); ++x) {
                if (!h.defined(x)) continue;
                PartialConcept sub{h.support & ~(1u << x), h.bits & ~(1u << x)};
                if (admissible(sub)) {
                    leaf = false;
                    descend(sub);
                }
            }
        }
        if (leaf) maximal_.push_back(Chain{stack});
        stack.pop_back();
    };
    for (const auto& c : cls_.concepts()) {
        PartialConcept top{cls_.full_mask(), c.bits};
        if (admissible(top)) descend(top);
    }
    // A gamma-side flag can stop above support 1 only if no sub-cube exists;
    // flags always start at concepts since every cube extends to one.
    std::sort(maximal_.begin(), maximal_.end(), [](const Chain& a, const Chain& b) {
        return a.elems < b.elems;
    });
    maximal_.erase(std::unique(maximal_.begin(), maximal_.end()), maximal_.end());
}

Vec ChainComplex::coord(const PartialConcept& h) const {
    return kind_ == Kind::delta ? coord_delta(h, n()) : coord_gamma(h, n());
}

std::vector<Chain> ChainComplex::all_chains() const {
    std::set<std::vector<PartialConcept>> seen;
    for (const auto& m : maximal_) {
        int k = static_cast<int>(m.elems.size());
        for (uint32_t sub = 1; sub < (1u << k); ++sub) {
            std::vector<PartialConcept> elems;
            for (int i = 0; i < k; ++i)
                if ((sub >> i) & 1) elems.push_back(m.elems[i]);
            seen.insert(elems);
        }
    }
    std::vector<Chain> out;
    for (auto& e : seen) out.push_back(Chain{e});
    return out;
}

Carrier ChainComplex::carrier(const Vec& p) const {
    return kind_ == Kind::delta ? carrier_delta(cls_, p) : carrier_gamma(cls_, p);
}

int ChainComplex::dim() const {
    int d = 0;
    for (const auto& m : maximal_) d = std::max(d, m.dim());
    return d;
}

ChainComplex build_delta1(const ConceptClass& c) { return ChainComplex(c, ChainComplex::Kind::delta); }
ChainComplex build_gamma1(const ConceptClass& c) { return ChainComplex(c, ChainComplex::Kind::gamma); }

int cubical_dim(const ConceptClass& c) { return c.max_strongly_shattered().first; }

bool is_full_subcomplex(const ChainComplex& gamma1, const ChainComplex& delta1) {
    if (delta1.cls().is_full_cube())
        throw std::invalid_argument("full subcomplex check undefined for the full cube");
    for (const auto& chain : delta1.all_chains()) {
        bool all_cube = true;
        for (const auto& h : chain.elems)
            if (!gamma1.has_vert(h)) all_cube = false;
        if (!all_cube) continue;
        // Must be a simplex of Gamma_{C,1}: a chain of cubes, which it is by
        // construction; verify it is realized in the cube complex.
        for (size_t i = 0; i + 1 < chain.elems.size(); ++i)
            if (!extends(chain.elems[i], chain.elems[i + 1])) return false;
    }
    return true;
}

std::optional<Rat> min_separation(const ChainComplex& k) {
    const auto& maxc = k.maximal_chains();
    // Coordinates per maximal chain.
    std::vector<std::vector<Vec>> coords(maxc.size());
    for (size_t i = 0; i < maxc.size(); ++i)
        for (const auto& h : maxc[i].elems) coords[i].push_back(k.coord(h));

    std::optional<Rat> best;
    std::set<std::pair<std::vector<PartialConcept>, std::vector<PartialConcept>>> seen;

    auto consider = [&](const std::vector<int>& ia, const std::vector<int>& ib, size_t m1,
                        size_t m2) {
        std::vector<PartialConcept> ka, kb;
        std::vector<Vec> va, vb;
        for (int i : ia) {
            ka.push_back(maxc[m1].elems[i]);
            va.push_back(coords[m1][i]);
        }
        for (int i : ib) {
            kb.push_back(maxc[m2].elems[i]);
            vb.push_back(coords[m2][i]);
        }
        if (ka > kb) {
            std::swap(ka, kb);
            std::swap(va, vb);
        }
        if (!seen.insert({ka, kb}).second) return;
        // Cheap coordinatewise lower bound before the exact LP.
        if (best) {
            Rat lower = 0;
            for (int x = 0; x < k.n(); ++x) {
                Rat alo = va[0][x], ahi = va[0][x], blo = vb[0][x], bhi = vb[0][x];
                for (const auto& v : va) {
                    alo = std::min(alo, v[x]);
                    ahi = std::max(ahi, v[x]);
                }
                for (const auto& v : vb) {
                    blo = std::min(blo, v[x]);
                    bhi = std::max(bhi, v[x]);
                }
                if (alo > bhi) lower += alo - bhi;
                else if (blo > ahi) lower += blo - ahi;
            }
            if (lower >= *best) return;
        }
        Rat d = dist_simplex_simplex(va, vb);
        if (!best || d < *best) best = d;
    };

    for (size_t m1 = 0; m1 < maxc.size(); ++m1)
        for (size_t m2 = m1; m2 < maxc.size(); ++m2) {
            // Shared vertices must be split between the two sides; a disjoint
            // pair of faces of (M1, M2) is covered by some such split.
            std::vector<int> shared1, only1, shared2, only2;
            for (size_t i = 0; i < maxc[m1].elems.size(); ++i) {
                bool sh = false;
                for (const auto& h : maxc[m2].elems)
                    if (h == maxc[m1].elems[i]) sh = true;
                (sh ? shared1 : only1).push_back(static_cast<int>(i));
            }
            for (size_t i = 0; i < maxc[m2].elems.size(); ++i) {
                bool sh = false;
                for (const auto& h : maxc[m1].elems)
                    if (h == maxc[m2].elems[i]) sh = true;
                (sh ? shared2 : only2).push_back(static_cast<int>(i));
            }
            size_t s = shared1.size();
            for (uint32_t split = 0; split < (1u << s); ++split) {
                std::vector<int> ia = only1, ib = only2;
                for (size_t t = 0; t < s; ++t) {
                    if ((split >> t) & 1) ia.push_back(shared1[t]);
                    else ib.push_back(shared2[t]);
                }
                if (ia.empty() || ib.empty()) continue;
                std::sort(ia.begin(), ia.end());
                std::sort(ib.begin(), ib.end());
                consider(ia, ib, m1, m2);
            }
        }
    return best;
}

Rat dist_point_sigma(const Vec& p, const PartialConcept& h, int n) {
    std::vector<Vec> verts;
    for (int x = 0; x < n; ++x)
        if (h.defined(x)) {
            Vec e(n, Rat(0));
            e[x] = Rat(h.value(x));
            verts.push_back(std::move(e));
        }
    return dist_point_simplex(p, verts);
}

StarLink star_link(const ChainComplex& k, const std::vector<PartialConcept>& w_set,
                   const PartialConcept& w) {
    std::unordered_set<PartialConcept, PartialConceptHash> in_w(w_set.begin(), w_set.end());
    if (!in_w.count(w)) throw std::invalid_argument("star_link: w not in W");
    for (const auto& v : w_set)
        for (const auto& u : k.verts())
            if (extends(u, v) && !in_w.count(u))
                throw std::invalid_argument("star_link: W not upwards closed at " +
                                            partial_str(v, k.n()));

    std::set<std::vector<PartialConcept>> star_set, link_set;
    std::set<PartialConcept> star_v, link_v;
    for (const auto& chain : k.all_chains()) {
        bool in_lambda_w = true, has_w = false;
        for (const auto& h : chain.elems) {
            if (!in_w.count(h)) in_lambda_w = false;
            if (h == w) has_w = true;
        }
        if (!in_lambda_w || !has_w) continue;
        // All faces of this chain are in the star; those avoiding w form the link.
        int len = static_cast<int>(chain.elems.size());
        for (uint32_t sub = 1; sub < (1u << len); ++sub) {
            std::vector<PartialConcept> face;
            bool face_has_w = false;
            for (int i = 0; i < len; ++i)
                if ((sub >> i) & 1) {
                    face.push_back(chain.elems[i]);
                    if (chain.elems[i] == w) face_has_w = true;
                }
            star_set.insert(face);
            for (const auto& h : face) star_v.insert(h);
            if (!face_has_w) {
                link_set.insert(face);
                for (const auto& h : face) link_v.insert(h);
            }
        }
    }
    StarLink out;
    for (auto& f : star_set) out.star.push_back(Chain{f});
    for (auto& f : link_set) out.link.push_back(Chain{f});
    out.star_verts.assign(star_v.begin(), star_v.end());
    out.link_verts.assign(link_v.begin(), link_v.end());
    return out;
}

int GeoComplex::dim() const {
    int d = -1;
    for (const auto& s : maximal) d = std::max(d, static_cast<int>(s.size()) - 1);
    return d;
}

std::vector<std::vector<int>> GeoComplex::all_faces() const {
    std::set<std::vector<int>> seen;
    for (const auto& s : maximal) {
        int k = static_cast<int>(s.size());
        for (uint32_t sub = 1; sub < (1u << k); ++sub) {
            std::vector<int> f;
            for (int i = 0; i < k; ++i)
                if ((sub >> i) & 1) f.push_back(s[i]);
            seen.insert(f);
        }
    }
    return {seen.begin(), seen.end()};
}

GeoComplex GeoComplex::barycentric() const {
    GeoComplex out;
    out.level = level + 1;
    auto faces = all_faces();
    std::map<std::vector<int>, int> face_id;
    for (const auto& f : faces) {
        Vec c(verts[0].size(), Rat(0));
        for (int v : f) c = vec_add(c, verts[v]);
        c = vec_scale(c, rat(1, static_cast<long>(f.size())));
        face_id[f] = static_cast<int>(out.verts.size());
        out.verts.push_back(std::move(c));
    }
    std::set<std::vector<int>> cells;
    for (const auto& s : maximal) {
        std::vector<int> perm(s.begin(), s.end());
        std::sort(perm.begin(), perm.end());
        do {
            std::vector<int> cell;
            std::vector<int> prefix;
            for (int v : perm) {
                prefix.push_back(v);
                std::vector<int> key = prefix;
                std::sort(key.begin(), key.end());
                cell.push_back(face_id.at(key));
            }
            std::sort(cell.begin(), cell.end());
            cells.insert(cell);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    out.maximal.assign(cells.begin(), cells.end());
    return out;
}

GeoComplex GeoComplex::edgewise(int m) const {
    GeoComplex out;
    out.level = level;
    std::map<std::string, int> vert_id;
    auto intern = [&](const Vec& p) {
        std::string key = vec_str(p);
        auto it = vert_id.find(key);
        if (it != vert_id.end()) return it->second;
        int id = static_cast<int>(out.verts.size());
        out.verts.push_back(p);
        vert_id[key] = id;
        return id;
    };
    std::set<std::vector<int>> cells;
    for (const auto& s : maximal) {
        std::vector<int> vs(s.begin(), s.end());
        std::sort(vs.begin(), vs.end());  // global order keeps shared faces consistent
        int k = static_cast<int>(vs.size()) - 1;
        if (k == 0) {
            cells.insert({intern(verts[vs[0]])});
            continue;
        }
        // Order-polytope picture: x in [0,1]^k with x_1 >= ... >= x_k; lattice
        // X in {0..m}^k maps to barycentric a_0 = m - X_1, a_j = X_j - X_{j+1}.
        auto vertex_of = [&](const std::vector<int>& X) {
            Vec p(verts[0].size(), Rat(0));
            auto add = [&](int vid, long w) {
                if (w == 0) return;
                p = vec_add(p, vec_scale(verts[vid], rat(w, m)));
            };
            add(vs[0], m - X[0]);
            for (int j = 0; j + 1 < k; ++j) add(vs[j + 1], X[j] - X[j + 1]);
            add(vs[k], X[k - 1]);
            return p;
        };
        // Cells: weakly decreasing base corner g plus a compatible insertion order.
        std::vector<int> g(k, 0);
        std::function<void(int, int)> enum_g = [&](int pos, int hi) {
            if (pos == k) {
                std::vector<int> idx(k);
                for (int i = 0; i < k; ++i) idx[i] = i;
                std::sort(idx.begin(), idx.end());
                do {
                    bool ok = true;
                    // Coordinates j with g_j == g_{j+1} must be raised in order.
                    std::vector<int> when(k);
                    for (int t = 0; t < k; ++t) when[idx[t]] = t;
                    for (int j = 0; j + 1 < k; ++j)
                        if (g[j] == g[j + 1] && when[j] > when[j + 1]) ok = false;
                    if (!ok) continue;
                    std::vector<int> cell;
                    std::vector<int> X(g.begin(), g.end());
                    cell.push_back(intern(vertex_of(X)));
                    for (int t = 0; t < k; ++t) {
                        X[idx[t]] += 1;
                        cell.push_back(intern(vertex_of(X)));
                    }
                    std::sort(cell.begin(), cell.end());
                    cells.insert(cell);
                } while (std::next_permutation(idx.begin(), idx.end()));
                return;
            }
            for (int v = 0; v <= hi; ++v) {
                g[pos] = v;
                enum_g(pos + 1, v);
            }
        };
        enum_g(0, m - 1);
    }
    out.maximal.assign(cells.begin(), cells.end());
    return out;
}

Rat GeoComplex::mesh() const {
    Rat best = 0;
    for (const auto& s : maximal)
        for (size_t i = 0; i < s.size(); ++i)
            for (size_t j = i + 1; j < s.size(); ++j)
                best = std::max(best, l1_dist(verts[s[i]], verts[s[j]]));
    return best;
}

GeoComplex geo_of_chain_complex(const ChainComplex& k) {
    GeoComplex g;
    g.level = 1;
    for (const auto& h : k.verts()) g.verts.push_back(k.coord(h));
    for (const auto& mc : k.maximal_chains()) {
        std::vector<int> ids;
        for (const auto& h : mc.elems) ids.push_back(k.vert_index(h));
        std::sort(ids.begin(), ids.end());
        g.maximal.push_back(ids);
    }
    std::sort(g.maximal.begin(), g.maximal.end());
    g.maximal.erase(std::unique(g.maximal.begin(), g.maximal.end()), g.maximal.end());
    return g;
}

}  // namespace ccdim
