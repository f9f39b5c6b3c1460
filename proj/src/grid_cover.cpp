#include "ccdim/grid_cover.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "ccdim/generators.hpp"

namespace ccdim {

namespace {

long rat_floor(const Rat& r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q.get_si();
}

// d_l1(embed(v), sigma_g) = 2 * loss_{embed(v)}(g): twice the mismatched mass
// of v against g, normalized.
Rat embedded_sigma_distance(const Vec& v, const Concept& g) {
    Rat miss = 0, norm = 0;
    for (size_t x = 0; x < v.size(); ++x) {
        norm += rat_abs(v[x]);
        bool pos = v[x] > 0, neg = v[x] < 0;
        if ((pos && g.value(static_cast<int>(x)) < 0) ||
            (neg && g.value(static_cast<int>(x)) > 0))
            miss += rat_abs(v[x]);
    }
    return 2 * miss / norm;
}

}  // namespace

std::vector<PartialConcept> boundary_cubes(int n) {
    std::vector<PartialConcept> out;
    uint32_t full = n == 32 ? ~0u : ((1u << n) - 1);
    for (uint32_t supp = 1; supp <= full; ++supp) {
        uint32_t sub = 0;
        for (;;) {
            out.push_back(PartialConcept{supp, sub});
            if (sub == supp) break;
            sub = (sub - supp) & supp;
        }
    }
    return out;
}

GridStarCover::GridStarCover(ConceptClass cls, std::vector<PartialConcept> cubes, int m)
    : cls_(std::move(cls)), cubes_(std::move(cubes)), m_(m) {
    if (m_ < 2 || m_ % 2 != 0) throw std::invalid_argument("grid resolution must be even >= 2");
    if (cubes_.empty()) throw std::invalid_argument("empty cubical complex");
    dim_ = 0;
    for (const auto& q : cubes_) {
        cube_set_.insert(q);
        dim_ = std::max(dim_, n() - q.support_size());
    }
}

bool GridStarCover::in_polyhedron(const Vec& y) const {
    try {
        carrier_cube(y);
        return true;
    } catch (const OutsidePolyhedron&) {
        return false;
    }
}

PartialConcept GridStarCover::carrier_cube(const Vec& y) const {
    if (static_cast<int>(y.size()) != n())
        throw std::invalid_argument("carrier_cube: dimension mismatch");
    PartialConcept pattern{0, 0};
    for (int x = 0; x < n(); ++x) {
        Rat a = rat_abs(y[x]);
        if (a > 1) throw OutsidePolyhedron("point outside [-1,1]^X");
        if (a == 1) {
            pattern.support |= 1u << x;
            if (y[x] > 0) pattern.bits |= 1u << x;
        }
    }
    // The minimal containing cube is the one of largest support below the
    // boundary pattern; cubes below a pattern are closed under join, and the
    // pattern itself is the common case.
    if (cube_set_.count(pattern)) return pattern;
    const PartialConcept* best = nullptr;
    for (const auto& q : cubes_)
        if (extends(pattern, q) && (!best || q.support_size() > best->support_size())) best = &q;
    if (!best)
        throw OutsidePolyhedron("point not in the cubical complex: boundary pattern " +
                                partial_str(pattern, n()));
    return *best;
}

Vec GridStarCover::point_of(const GridVert& g) const {
    Vec y(n());
    for (int x = 0; x < n(); ++x) y[x] = rat(2L * g[x], m_);
    return y;
}

Concept GridStarCover::label_of(const GridVert& g) const {
    Vec y = point_of(g);
    PartialConcept q = carrier_cube(y);
    Concept c{q.bits};
    for (int x = 0; x < n(); ++x) {
        if (q.defined(x)) continue;
        if (y[x] >= 0) c.bits |= 1u << x;  // +1 tie rule at zero
    }
    if (!cls_.contains(c))
        throw std::logic_error("sign completion of a cube left the class: " +
                               concept_str(c, n()));
    return c;
}

GridCarrier GridStarCover::carrier(const Vec& y) const {
    PartialConcept q = carrier_cube(y);
    std::vector<int> free;
    for (int x = 0; x < n(); ++x)
        if (!q.defined(x)) free.push_back(x);

    GridVert base(n(), 0);
    std::vector<std::pair<Rat, int>> fracs;  // (fractional part, coordinate)
    for (int x = 0; x < n(); ++x) {
        if (q.defined(x)) {
            base[x] = q.value(x) > 0 ? m_ / 2 : -m_ / 2;
            continue;
        }
        Rat scaled = y[x] * m_ / 2;  // in [-m/2, m/2]
        long cell = rat_floor(scaled);
        if (cell == m_ / 2) cell -= 1;  // clamp the top boundary into the last cell
        base[x] = static_cast<int>(cell);
        fracs.push_back({scaled - cell, x});
    }
    // Kuhn simplex: raise coordinates in decreasing fractional order.
    std::sort(fracs.begin(), fracs.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });

    GridCarrier out;
    GridVert v = base;
    Rat prev(1);
    // lambda of the base corner is 1 - f_(1); each raise contributes
    // f_(t) - f_(t+1); the last is f_(k). Zero weights are dropped.
    size_t k = fracs.size();
    {
        Rat lam = k ? 1 - fracs[0].first : Rat(1);
        if (lam > 0) {
            out.verts.push_back(v);
            out.lambda.push_back(lam);
        }
    }
    for (size_t t = 0; t < k; ++t) {
        v[fracs[t].second] += 1;
        Rat lam = (t + 1 < k ? fracs[t].first - fracs[t + 1].first : fracs[t].first);
        if (lam > 0) {
            out.verts.push_back(v);
            out.lambda.push_back(lam);
        }
    }
    Rat top = *std::max_element(out.lambda.begin(), out.lambda.end());
    for (size_t i = 0; i < out.lambda.size(); ++i)
        if (out.lambda[i] == top) out.top_tier.push_back(static_cast<int>(i));
    return out;
}

std::vector<Concept> GridStarCover::open_memberships(const Vec& y) const {
    auto car = carrier(y);
    std::map<int, Concept> by_index;
    for (const auto& v : car.verts) {
        Concept c = label_of(v);
        by_index[cls_.index_of(c)] = c;
    }
    std::vector<Concept> out;
    for (auto& [i, c] : by_index) out.push_back(c);
    return out;
}

std::vector<Concept> GridStarCover::closed_memberships(const Vec& y) const {
    auto car = carrier(y);
    std::map<int, Concept> by_index;
    for (int i : car.top_tier) {
        Concept c = label_of(car.verts[i]);
        by_index[cls_.index_of(c)] = c;
    }
    std::vector<Concept> out;
    for (auto& [i, c] : by_index) out.push_back(c);
    return out;
}

Concept GridStarCover::output_label(const Vec& y) const { return closed_memberships(y).front(); }

std::vector<GridVert> GridStarCover::all_vertices() const {
    std::set<GridVert> seen;
    int half = m_ / 2;
    for (const auto& q : cubes_) {
        std::vector<int> free;
        GridVert base(n(), 0);
        for (int x = 0; x < n(); ++x) {
            if (q.defined(x)) base[x] = q.value(x) > 0 ? half : -half;
            else free.push_back(x);
        }
        GridVert v = base;
        std::function<void(size_t)> rec = [&](size_t i) {
            if (i == free.size()) {
                seen.insert(v);
                return;
            }
            for (int t = -half; t <= half; ++t) {
                v[free[i]] = t;
                rec(i + 1);
            }
        };
        rec(0);
    }
    return {seen.begin(), seen.end()};
}

std::vector<GridVert> GridStarCover::star_box(const GridVert& w) const {
    // All grid vertices of incident cubes within one cell of w; a superset of
    // the closed-star vertex set.
    Vec yw = point_of(w);
    PartialConcept pattern{0, 0};
    for (int x = 0; x < n(); ++x) {
        if (w[x] == m_ / 2) {
            pattern.support |= 1u << x;
            pattern.bits |= 1u << x;
        } else if (w[x] == -m_ / 2) {
            pattern.support |= 1u << x;
        }
    }
    std::set<GridVert> out;
    int half = m_ / 2;
    for (const auto& q : cubes_) {
        if (!extends(pattern, q)) continue;  // w not in this cube
        std::vector<int> free;
        for (int x = 0; x < n(); ++x)
            if (!q.defined(x)) free.push_back(x);
        GridVert v = w;
        for (int x = 0; x < n(); ++x)
            if (q.defined(x)) v[x] = q.value(x) > 0 ? half : -half;
        std::function<void(size_t)> rec = [&](size_t i) {
            if (i == free.size()) {
                out.insert(v);
                return;
            }
            int x = free[i];
            int lo = std::max(w[x] - 1, -half), hi = std::min(w[x] + 1, half);
            for (int t = lo; t <= hi; ++t) {
                v[x] = t;
                rec(i + 1);
            }
        };
        rec(0);
    }
    return {out.begin(), out.end()};
}

Rat GridStarCover::max_star_distance() const {
    Rat best = 0;
    for (const auto& w : all_vertices()) {
        Concept g = label_of(w);
        for (const auto& v : star_box(w)) {
            Rat d = embedded_sigma_distance(point_of(v), g);
            if (d > best) best = d;
        }
    }
    return best;
}

int GridStarCover::exact_order() const {
    int best = 0;
    int half = m_ / 2;
    for (const auto& q : cubes_) {
        std::vector<int> free;
        GridVert base(n(), 0);
        for (int x = 0; x < n(); ++x) {
            if (q.defined(x)) base[x] = q.value(x) > 0 ? half : -half;
            else free.push_back(x);
        }
        size_t k = free.size();
        // Enumerate cells of this cube, then Kuhn simplices by permutation.
        std::vector<int> cell(k, 0);
        std::vector<int> perm(k);
        std::function<void(size_t)> cells = [&](size_t i) {
            if (i == k) {
                for (size_t t = 0; t < k; ++t) perm[t] = static_cast<int>(t);
                do {
                    GridVert v = base;
                    for (size_t t = 0; t < k; ++t) v[free[t]] = cell[t];
                    std::set<uint32_t> labels{label_of(v).bits};
                    for (size_t t = 0; t < k; ++t) {
                        v[free[perm[t]]] += 1;
                        labels.insert(label_of(v).bits);
                    }
                    best = std::max(best, static_cast<int>(labels.size()) - 1);
                } while (std::next_permutation(perm.begin(), perm.end()));
                return;
            }
            for (int t = -half; t < half; ++t) {
                cell[i] = t;
                cells(i + 1);
            }
        };
        if (k == 0) best = std::max(best, 0);
        else cells(0);
    }
    return best;
}

Vec GridStarCover::sample_point(CounterRng& rng) const {
    const auto& q = cubes_[rng.below(cubes_.size())];
    Vec y(n());
    long den = 64 + static_cast<long>(rng.below(64));
    for (int x = 0; x < n(); ++x) {
        if (q.defined(x)) y[x] = Rat(q.value(x));
        else y[x] = rat(rng.range(-den, den), den);
    }
    return y;
}

int GridStarCover::audit_rounding(int samples, CounterRng& rng) const {
    Rat beta = rounding_radius();
    int violations = 0;
    for (int s = 0; s < samples; ++s) {
        Vec p = sample_point(rng);
        PartialConcept q = carrier_cube(p);
        // Perturb free coordinates of the carrier cube within total l1 < beta.
        Vec p2 = p;
        long den = 1 + static_cast<long>(rng.below(7));
        Rat budget = beta * rat(den - 1, den);
        int moved = 0;
        for (int x = 0; x < n() && budget > 0; ++x) {
            if (q.defined(x)) continue;
            Rat step = budget / (1 + static_cast<long>(rng.below(3)));
            if (rng.coin()) step = -step;
            Rat nx = p2[x] + step;
            if (nx > 1) nx = 1;
            if (nx < -1) nx = -1;
            budget -= rat_abs(nx - p2[x]);
            p2[x] = nx;
            ++moved;
        }
        (void)moved;
        auto allowed = open_memberships(p);
        std::set<uint32_t> allowed_bits;
        for (const auto& c : allowed) allowed_bits.insert(c.bits);
        for (const auto& c : closed_memberships(p2))
            if (!allowed_bits.count(c.bits)) ++violations;
    }
    return violations;
}

GridStarCover build_star_cover(const ConceptClass& e, const Rat& eps, int max_exponent) {
    if (e.is_full_cube())
        throw std::invalid_argument("star cover of the full cube: use the boundary construction");
    if (!e.is_extremal()) throw std::invalid_argument("star cover requires an extremal class");
    auto cubes = e.cube_partials();
    for (int exp = 1; exp <= max_exponent; ++exp) {
        GridStarCover cover(e, cubes, 1 << exp);
        if (cover.max_star_distance() < eps) return cover;
    }
    throw CoverMeshError("grid cap 2^" + std::to_string(max_exponent) +
                         " cannot meet the dilation bound " + rat_str(eps));
}

GridStarCover build_boundary_star_cover(int n, const Rat& eps, int max_exponent) {
    ConceptClass cube = gen_cube(n);
    auto cubes = boundary_cubes(n);
    for (int exp = 1; exp <= max_exponent; ++exp) {
        GridStarCover cover(cube, cubes, 1 << exp);
        if (cover.max_star_distance() < eps) return cover;
    }
    throw CoverMeshError("boundary grid cap cannot meet the dilation bound " + rat_str(eps));
}

}  // namespace ccdim
