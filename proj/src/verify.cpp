#include "ccdim/verify.hpp"

#include <functional>
#include <set>
#include <sstream>

#include "ccdim/certificate.hpp"
#include "ccdim/covers.hpp"
#include "ccdim/generators.hpp"
#include "ccdim/learner.hpp"

namespace ccdim {

namespace {

ConceptClass f5_class() {
    return ConceptClass(Domain::of_size(3),
                        {concept_parse("++-", 3).value(), concept_parse("+++", 3).value(),
                         concept_parse("+-+", 3).value(), concept_parse("--+", 3).value(),
                         concept_parse("-++", 3).value()});
}

ConceptClass random_class(int n, int count, CounterRng& rng) {
    std::set<uint32_t> seen;
    for (int i = 0; i < count; ++i) seen.insert(static_cast<uint32_t>(rng.below(1u << n)));
    std::vector<Concept> cs;
    for (uint32_t b : seen) cs.push_back(Concept{b});
    return ConceptClass(Domain::of_size(n), std::move(cs));
}

}  // namespace

std::vector<CheckResult> run_property_suite(uint64_t seed, bool quick) {
    std::vector<CheckResult> out;
    auto check = [&](const std::string& name, const std::function<std::string()>& body) {
        CheckResult r;
        r.name = name;
        try {
            r.detail = body();  // empty detail = pass
            r.pass = r.detail.empty();
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        out.push_back(r);
    };

    int class_trials = quick ? 20 : 60;
    int point_samples = quick ? 100 : 1000;

    check("shattering.implication_and_sandwich", [&]() -> std::string {
        CounterRng rng(seed, 11);
        for (int t = 0; t < class_trials; ++t) {
            auto c = random_class(2 + rng.below(5), 2 + rng.below(12), rng);
            long sh = 0, st = 0;
            for (uint32_t s = 0; s <= c.full_mask(); ++s) {
                bool a = c.shatters(s), b = c.strongly_shatters(s);
                if (b && !a) return "strong shattering without shattering";
                sh += a;
                st += b;
            }
            if (!(st <= c.size() && c.size() <= sh)) return "sandwich counting violated";
            if ((st == c.size() && c.size() == sh) != c.is_extremal())
                return "sandwich equality does not match extremality";
        }
        return "";
    });

    check("generators.extremal_families", [&]() -> std::string {
        CounterRng rng(seed, 12);
        for (int t = 3; t <= 6; ++t)
            if (!gen_thresholds(t).is_extremal()) return "thresholds not extremal";
        for (int i = 0; i < (quick ? 5 : 20); ++i)
            if (!gen_random_downward_closed(3 + rng.below(3), 3, rng).is_extremal())
                return "downward-closed class not extremal";
        std::vector<Vec> pts{{rat(0), rat(0)}, {rat(1), rat(3)}, {rat(2), rat(1)},
                             {rat(3), rat(2)}};
        if (!gen_boxes(pts).is_extremal()) return "box class not extremal";
        return "";
    });

    check("restrictions.extremality_and_vc", [&]() -> std::string {
        auto e = f5_class();
        for (const auto& h : e.realizable_partials()) {
            if (!e.h_restriction(h).is_extremal()) return "h-restriction lost extremality";
        }
        CounterRng rng(seed, 13);
        for (int t = 0; t < class_trials; ++t) {
            auto c = random_class(3 + rng.below(3), 2 + rng.below(10), rng);
            uint32_t s = 0;
            while (s == 0) s = static_cast<uint32_t>(rng.below(c.full_mask() + 1));
            if (c.restrict_to(s).vc_dim() > c.vc_dim()) return "restriction raised VC";
        }
        return "";
    });

    check("dual.vc_bound_on_extremal", [&]() -> std::string {
        std::vector<ConceptClass> es{f5_class(), gen_thresholds(4), gen_thresholds(6),
                                     gen_cube(3)};
        CounterRng rng(seed, 14);
        for (int i = 0; i < 6; ++i) es.push_back(gen_random_downward_closed(4, 3, rng));
        for (const auto& e : es) {
            if (!e.is_extremal()) continue;
            if (e.dual().vc_dim() > 2 * e.vc_dim() + 1) return "dual VC bound violated";
        }
        return "";
    });

    check("complexes.vertex_counts_by_enumeration", [&]() -> std::string {
        // Independent 3^X sweep against the complex builders.
        std::vector<ConceptClass> cs{f5_class(), gen_thresholds(4)};
        for (const auto& c : cs) {
            long realizable = 0, cubes = 0;
            for (uint32_t supp = 1; supp <= c.full_mask(); ++supp) {
                uint32_t sub = 0;
                for (;;) {
                    if ((sub & ~supp) == 0) {
                        PartialConcept h{supp, sub};
                        if (c.realizable(h)) ++realizable;
                        if (c.is_cube(h)) ++cubes;
                    }
                    if (sub == supp) break;
                    sub = (sub - supp) & supp;
                }
            }
            if (static_cast<long>(build_delta1(c).verts().size()) != realizable)
                return "Delta vertex count mismatch";
            if (static_cast<long>(build_gamma1(c).verts().size()) != cubes)
                return "Gamma vertex count mismatch";
        }
        return "";
    });

    check("complexes.cube_faces_bijection", [&]() -> std::string {
        auto e = f5_class();
        for (const auto& q : e.cube_partials()) {
            // Faces of the cube under the bijection = extensions fixing free coords.
            uint32_t free = e.full_mask() & ~q.support;
            uint32_t supp_sub = 0;
            for (;;) {
                uint32_t bits_sub = 0;
                for (;;) {
                    if ((bits_sub & ~supp_sub) == 0) {
                        PartialConcept face{q.support | supp_sub, q.bits | bits_sub};
                        if (!e.is_cube(face)) return "face of a cube is not a cube";
                    }
                    if (bits_sub == supp_sub) break;
                    bits_sub = (bits_sub - supp_sub) & supp_sub;
                }
                if (supp_sub == free) break;
                supp_sub = (supp_sub - free) & free;
            }
        }
        return "";
    });

    check("embedding.unit_norm_injective_and_sigma_membership", [&]() -> std::string {
        auto e = f5_class();
        auto g1 = build_gamma1(e);
        std::set<Vec> images;
        for (const auto& h : g1.verts()) {
            Vec y = g1.coord(h);
            Vec z = embed_point(y);
            if (l1_norm(z) != 1) return "embedded point not on the unit sphere";
            if (!images.insert(z).second) return "embedding not injective on vertices";
        }
        // Sampled points of Gamma: embed lands in sigma_g for the sign
        // completion with the +1 tie rule.
        GridStarCover cover(e, e.cube_partials(), 4);
        CounterRng rng(seed, 15);
        for (int i = 0; i < point_samples; ++i) {
            Vec y = cover.sample_point(rng);
            PartialConcept q = cover.carrier_cube(y);
            Concept g{q.bits};
            for (int x = 0; x < e.n(); ++x)
                if (!q.defined(x) && y[x] >= 0) g.bits |= 1u << x;
            if (loss(embed_point(y), g) != 0) return "embedded point misses sigma_g";
        }
        return "";
    });

    check("subdivision.preserves_polyhedron_membership", [&]() -> std::string {
        auto e = f5_class();
        auto d1 = build_delta1(e);
        auto sd = geo_of_chain_complex(d1).barycentric();
        for (const auto& v : sd.verts) carrier_delta(e, v);
        CounterRng rng(seed, 16);
        for (int i = 0; i < point_samples; ++i) carrier_delta(e, random_delta_point(d1, rng));
        return "";
    });

    check("min_separation.certified_by_sampling", [&]() -> std::string {
        auto e = f5_class();
        auto d1 = build_delta1(e);
        auto gamma0 = min_separation(d1);
        if (!gamma0) return "";
        CounterRng rng(seed, 17);
        auto chains = d1.all_chains();
        int audits = quick ? 500 : 10000;
        for (int i = 0; i < audits; ++i) {
            const auto& a = chains[rng.below(chains.size())];
            const auto& b = chains[rng.below(chains.size())];
            bool disjoint = true;
            for (const auto& x : a.elems)
                for (const auto& y : b.elems)
                    if (x == y) disjoint = false;
            if (!disjoint) continue;
            auto pt = [&](const Chain& ch) {
                Vec p(e.n(), Rat(0));
                long total = 0;
                std::vector<long> w(ch.elems.size());
                for (auto& x : w) {
                    x = 1 + static_cast<long>(rng.below(8));
                    total += x;
                }
                for (size_t t = 0; t < ch.elems.size(); ++t)
                    p = vec_add(p, vec_scale(d1.coord(ch.elems[t]), rat(w[t], total)));
                return p;
            };
            if (l1_dist(pt(a), pt(b)) < *gamma0) return "sampled pair beats gamma_0";
        }
        return "";
    });

    check("star_cover.order_and_containment", [&]() -> std::string {
        std::vector<ConceptClass> es{f5_class(), gen_thresholds(4), gen_thresholds(5)};
        CounterRng rng(seed, 18);
        for (int i = 0; i < (quick ? 2 : 6); ++i)
            es.push_back(gen_random_downward_closed(4 + i % 2, 4, rng));
        for (int i = 0; i < (quick ? 1 : 4); ++i)
            es.push_back(gen_random_median_closure(5, 5, rng));
        for (const auto& e : es) {
            if (!e.is_extremal() || e.is_full_cube()) continue;
            GridStarCover cover(e, e.cube_partials(), 2);
            if (cover.exact_order() != e.vc_dim()) return "star cover order != VC";
            if (cover.exact_order() > cover.dim()) return "order above dimension bound";
        }
        auto cov = build_star_cover(f5_class(), rat(1, 4));
        if (!(cov.max_star_distance() < rat(1, 4))) return "containment bound not met";
        return "";
    });

    check("loss.identity_and_range", [&]() -> std::string {
        CounterRng rng(seed, 19);
        for (int t = 0; t < point_samples; ++t) {
            auto c = random_class(2 + rng.below(4), 2 + rng.below(8), rng);
            auto d = random_realizable(c, rng);
            Concept h{static_cast<uint32_t>(rng.below(c.full_mask() + 1))};
            Rat a = loss(d.mu, h), b = loss_l1_form(d.mu, h);
            if (a != b) return "loss forms disagree";
            if (a < 0 || a > 1) return "loss out of range";
            if (loss(d.mu, d.witness) != 0) return "witness loss nonzero";
        }
        return "";
    });

    check("learner.determinism_and_triangle", [&]() -> std::string {
        auto rep1 = run_experiment(gen_thresholds(4), rat(1, 10), rat(1, 10), 3, 8, seed);
        auto rep2 = run_experiment(gen_thresholds(4), rat(1, 10), rat(1, 10), 3, 8, seed);
        if (rep1.max_list_size != rep2.max_list_size) return "reports differ across replays";
        for (size_t t = 0; t < rep1.trials.size(); ++t) {
            if (rep1.trials[t].output_counts != rep2.trials[t].output_counts)
                return "output counts differ across replays";
            if (!rep1.trials[t].triangle_ok) return "triangle bound violated";
        }
        if (!rep1.determinism_checked) return "determinism replay failed";
        return "";
    });

    check("toolkit.shrinkage_and_rounding", [&]() -> std::string {
        auto e = gen_thresholds(4);
        auto d1 = build_delta1(e);
        int covers = quick ? 3 : 10;
        for (int i = 0; i < covers; ++i) {
            auto u = random_open_cover(d1, 4, seed + i);
            auto f = closed_shrinkage(u, 8);
            auto before = cover_order(u, quick ? 200 : 2000, seed + i);
            int after = f.order_exact();
            if (after > before.order) return "shrinkage increased the order";
            auto beta = rounding_radius(f);
            if (beta && audit_rounding(f, *beta, after, quick ? 200 : 2000, seed + i) > 0)
                return "rounding audit found a violation";
        }
        return "";
    });

    check("retraction.contract_on_f5", [&]() -> std::string {
        auto e = f5_class();
        Retraction f(e, rat(1, 4));
        auto g1 = build_gamma1(e);
        for (const auto& h : g1.verts()) {
            Vec v = embed_point(g1.coord(h));
            if (f.eval(v) != v) return "not the identity on the cubical vertices";
        }
        CounterRng rng(seed, 20);
        auto d1 = build_delta1(e);
        for (int i = 0; i < (quick ? 50 : 200); ++i) {
            Vec mu = random_delta_point(d1, rng);
            Vec z = f.eval(mu);
            if (f.eval(z) != z) return "not idempotent";
            if (!f.property1_holds(mu)) return "Property 1 failed";
            auto open = f.pullback_open(mu);
            if (static_cast<int>(open.size()) > e.vc_dim() + 1) return "pullback order too big";
            for (const auto& g : open)
                if (dist_point_sigma(mu, PartialConcept{e.full_mask(), g.bits}, e.n()) >=
                    f.eps0())
                    return "pullback element leaves sigma_g^(eps0)";
        }
        return "";
    });

    check("certificates.thmB_sandwich", [&]() -> std::string {
        std::vector<ConceptClass> es{f5_class(), gen_thresholds(4)};
        for (const auto& e : es) {
            auto v = certify_class(e);
            if (!v.certificate.verified) return "certificate not verified";
            if (v.certificate.dim != v.cover_order) return "lower bound != cover order";
            if (v.scdim != e.vc_dim()) return "SCdim != VC for extremal non-cube";
        }
        auto vc3 = certify_class(gen_cube(3));
        if (vc3.scdim != 2 || vc3.lr != 3) return "cube verdict wrong";
        return "";
    });

    return out;
}

}  // namespace ccdim
