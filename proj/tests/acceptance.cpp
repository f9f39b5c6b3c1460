// Acceptance suite: one runnable criterion per command-line selector, one
// PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "ccdim/certificate.hpp"
#include "ccdim/class_io.hpp"
#include "ccdim/covers.hpp"
#include "ccdim/generators.hpp"
#include "ccdim/learner.hpp"
#include "json.hpp"

using namespace ccdim;
using nlohmann::json;

namespace {

ConceptClass f5() {
    return class_from_json(
        R"({"domain":["x1","x2","x3"],"concepts":["++-","+++","+-+","--+","-++"]})");
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
};

// Thm B equality for one extremal non-cube class.
bool thm_b_equality(const ConceptClass& e, std::string& why) {
    auto v = certify_class(e);
    if (!v.certificate.verified) {
        why = "certificate verification failed";
        return false;
    }
    if (v.certificate.dim != e.vc_dim() || v.cover_order != e.vc_dim()) {
        why = "certificate dim " + std::to_string(v.certificate.dim) + ", cover order " +
              std::to_string(v.cover_order) + ", vc " + std::to_string(e.vc_dim());
        return false;
    }
    return true;
}

Outcome crit1_thresholds() {
    Outcome o;
    for (int t = 3; t <= 6; ++t) {
        auto e = gen_thresholds(t);
        std::string why;
        if (!e.is_extremal() || e.is_full_cube() || !thm_b_equality(e, why)) {
            o.pass = false;
            o.detail << "thresholds(" << t << "): " << why << "; ";
        }
    }
    if (o.pass) o.detail << "t = 3..6 all satisfy certificate = cover order = VC";
    return o;
}

Outcome crit1_boxes() {
    Outcome o;
    std::vector<std::vector<Vec>> configs = {
        {{rat(0)}, {rat(2)}, {rat(5)}},
        {{rat(0)}, {rat(1)}, {rat(3)}, {rat(7)}, {rat(9)}},
        {{rat(0), rat(0)}, {rat(1), rat(3)}, {rat(2), rat(1)}, {rat(3), rat(2)}},
        {{rat(0), rat(0)}, {rat(1), rat(3)}, {rat(2), rat(1)}, {rat(3), rat(4)}, {rat(4), rat(2)}}};
    for (size_t i = 0; i < configs.size(); ++i) {
        auto e = gen_boxes(configs[i]);
        std::string why;
        if (!e.is_extremal()) {
            o.pass = false;
            o.detail << "box config " << i << " not extremal; ";
        } else if (e.is_full_cube()) {
            o.pass = false;
            o.detail << "box config " << i << " degenerated to the cube; ";
        } else if (!thm_b_equality(e, why)) {
            o.pass = false;
            o.detail << "box config " << i << ": " << why << "; ";
        }
    }
    if (o.pass) o.detail << configs.size() << " box classes satisfy the equality";
    return o;
}

Outcome crit1_downward() {
    Outcome o;
    int found = 0, skipped = 0;
    for (uint64_t seed = 1; found < 20 && seed < 200; ++seed) {
        CounterRng rng(seed, 101);
        int n = 4 + static_cast<int>(seed % 2);
        auto e = gen_random_downward_closed(n, n, rng);
        if (!e.is_extremal()) {
            o.pass = false;
            o.detail << "seed " << seed << " not extremal (downward closure!); ";
            continue;
        }
        if (e.is_full_cube()) {
            ++skipped;
            continue;
        }
        ++found;
        std::string why;
        if (!thm_b_equality(e, why)) {
            o.pass = false;
            o.detail << "seed " << seed << ": " << why << "; ";
        }
    }
    o.detail << found << " downward-closed classes checked, " << skipped
             << " full-cube draws skipped";
    return o;
}

Outcome crit1_median() {
    Outcome o;
    int found = 0, skipped = 0;
    for (uint64_t seed = 1; found < 20 && seed < 400; ++seed) {
        CounterRng rng(seed, 102);
        int n = 4 + static_cast<int>(seed % 2);
        auto e = gen_random_median_closure(n, n, rng);
        if (!e.is_extremal() || e.is_full_cube()) {
            // Majority closure does not force extremality (see the decisions
            // ledger); the criterion family is the extremal closures.
            ++skipped;
            continue;
        }
        ++found;
        std::string why;
        if (!thm_b_equality(e, why)) {
            o.pass = false;
            o.detail << "seed " << seed << ": " << why << "; ";
        }
    }
    if (found < 20) {
        o.pass = false;
        o.detail << "only " << found << " extremal closures found; ";
    }
    o.detail << found << " median closures checked, " << skipped
             << " non-extremal/cube closures skipped";
    return o;
}

Outcome crit1_halfspaces() {
    Outcome o;
    std::vector<std::vector<Vec>> configs = {
        {{rat(1), rat(0)}, {rat(0), rat(1)}},
        {{rat(1), rat(0), rat(0)}, {rat(0), rat(1), rat(0)}, {rat(0), rat(0), rat(1)}},
        {{rat(1), rat(0)}, {rat(0), rat(1)}, {rat(1), rat(2)}},
        {{rat(1), rat(0)}, {rat(0), rat(1)}, {rat(1), rat(1)}, {rat(1), rat(-1)}},
        {{rat(1), rat(0), rat(0)},
         {rat(0), rat(1), rat(0)},
         {rat(0), rat(0), rat(1)},
         {rat(1), rat(1), rat(1)},
         {rat(1), rat(2), rat(3)}},
        {{rat(1), rat(0), rat(0)},
         {rat(0), rat(1), rat(0)},
         {rat(0), rat(0), rat(1)},
         {rat(1), rat(1), rat(1)},
         {rat(1), rat(2), rat(3)},
         {rat(2), rat(1), rat(1)}}};
    int checked = 0, cubes = 0, nonextremal = 0;
    for (size_t i = 0; i < configs.size(); ++i) {
        auto e = gen_halfspaces(configs[i]);
        if (e.is_full_cube()) {
            ++cubes;  // SCdim = VC - 1 here; outside the criterion's equality
            continue;
        }
        if (!e.is_extremal()) {
            ++nonextremal;
            continue;
        }
        ++checked;
        std::string why;
        if (!thm_b_equality(e, why)) {
            o.pass = false;
            o.detail << "config " << i << ": " << why << "; ";
        }
    }
    if (checked == 0) {
        // Spec defect, documented in the decisions ledger: a homogeneous
        // halfspace class is the full cube iff the points are linearly
        // independent and in every observed dependent configuration it is
        // not extremal (topes shatter more sets than they strongly shatter),
        // so no class in this family can satisfy SCdim = VCdim.
        o.pass = false;
        o.detail << "unattainable: " << cubes << " full-cube configs (SCdim = VC-1) and "
                 << nonextremal
                 << " non-extremal tope classes; e.g. {(1,0),(0,1),(1,2)} has 6 concepts, "
                    "7 shattered sets, {x1,x2} shattered but not strongly shattered";
    }
    return o;
}

Outcome crit2() {
    Outcome o;
    for (int n = 2; n <= 4; ++n) {
        auto v = certify_class(gen_cube(n));
        if (v.scdim != n - 1 || v.lr != n || v.cover_order != n - 1 ||
            v.certificate.dim != n - 1 || !v.certificate.verified) {
            o.pass = false;
            o.detail << "cube(" << n << "): scdim " << v.scdim << ", lr " << v.lr << "; ";
        }
    }
    if (o.pass) o.detail << "cube(2..4) report SCdim = n-1, LR = n";
    return o;
}

Outcome crit3() {
    Outcome o;
    struct Cfg {
        ConceptClass e;
        int bound;
        const char* name;
    };
    std::vector<Cfg> cfgs;
    cfgs.push_back({gen_thresholds(5), 2, "thresholds(5)"});
    cfgs.push_back({f5(), 3, "F5"});
    for (auto& cfg : cfgs) {
        auto rep = run_experiment(cfg.e, rat(1, 20), rat(1, 20), 100, 50, 42);
        double tolerance = 1.0 / 20 + 3 * std::sqrt((1.0 / 20) / 50);
        if (rep.max_list_size > cfg.bound) {
            o.pass = false;
            o.detail << cfg.name << ": observed list " << rep.max_list_size << " > " << cfg.bound
                     << "; ";
        }
        if (rep.max_canonical_size > cfg.bound) {
            o.pass = false;
            o.detail << cfg.name << ": canonical list too large; ";
        }
        if (rep.loss_violations != 0 || rep.max_canonical_loss > rat(1, 20)) {
            o.pass = false;
            o.detail << cfg.name << ": listed hypothesis with loss above eps; ";
        }
        for (const auto& t : rep.trials) {
            if (static_cast<double>(t.out_of_list) / 50.0 > tolerance) {
                o.pass = false;
                o.detail << cfg.name << ": out-of-list frequency above delta + 3*sqrt(delta/50); ";
                break;
            }
            if (t.agree_but_out != 0) {
                o.pass = false;
                o.detail << cfg.name << ": beta-agreeing run escaped the canonical list; ";
                break;
            }
        }
        if (!rep.determinism_checked) {
            o.pass = false;
            o.detail << cfg.name << ": determinism replay failed; ";
        }
        o.detail << cfg.name << " max list " << rep.max_list_size << " (bound " << cfg.bound
                 << "), max canonical loss " << rat_str(rep.max_canonical_loss) << ", n = "
                 << rep.sample_size << "; ";
    }
    return o;
}

Outcome crit4() {
    Outcome o;
    int covers_done = 0;
    for (const auto& e : {gen_thresholds(4), f5()}) {
        auto d1 = build_delta1(e);
        for (uint64_t seed = 1; seed <= 50; ++seed) {
            auto u = random_open_cover(d1, 4, seed);
            auto f = closed_shrinkage(u);
            // Shrinkage, index-wise and pointwise at the refinement vertices.
            for (size_t c = 0; c < f.geo.maximal.size(); ++c) {
                int i = f.owner[c];
                for (int vid : f.geo.maximal[c])
                    if (!u.contains(i, f.geo.verts[vid])) {
                        o.pass = false;
                        o.detail << "seed " << seed << ": cell left its element; ";
                    }
            }
            // Order never increases: exact for F against pointwise U memberships.
            std::vector<std::set<int>> owners_at(f.geo.verts.size());
            for (size_t c = 0; c < f.geo.maximal.size(); ++c)
                for (int vid : f.geo.maximal[c]) owners_at[vid].insert(f.owner[c]);
            for (size_t vid = 0; vid < f.geo.verts.size(); ++vid) {
                auto in_u = u.memberships(f.geo.verts[vid]);
                std::set<int> uset(in_u.begin(), in_u.end());
                for (int i : owners_at[vid])
                    if (!uset.count(i)) {
                        o.pass = false;
                        o.detail << "seed " << seed << ": memberships not nested; ";
                    }
            }
            int order_f = f.order_exact();
            auto order_u = cover_order(u, 500, seed);
            if (order_f > order_u.order) {
                o.pass = false;
                o.detail << "seed " << seed << ": order rose " << order_u.order << " -> "
                         << order_f << "; ";
            }
            auto beta = rounding_radius(f);
            if (beta) {
                int viol = audit_rounding(f, *beta, order_f, 10000, seed);
                if (viol != 0) {
                    o.pass = false;
                    o.detail << "seed " << seed << ": " << viol << " rounding violations; ";
                }
            }
            ++covers_done;
        }
    }
    o.detail << covers_done << " seeded covers shrunk, order never increased, 10^4-probe "
             << "rounding audits clean";
    return o;
}

Outcome crit5() {
    Outcome o;
    for (const auto& e : {f5(), gen_thresholds(4)}) {
        Retraction f(e, rat(1, 4));
        auto g1 = build_gamma1(e);
        for (const auto& h : g1.verts()) {
            Vec v = embed_point(g1.coord(h));
            if (f.eval(v) != v) {
                o.pass = false;
                o.detail << "identity failed on a cubical vertex; ";
            }
        }
        auto d1 = build_delta1(e);
        CounterRng rng(4242, 500);
        int order_witness = 0;
        for (int i = 0; i < 1000; ++i) {
            Vec mu = random_delta_point(d1, rng);
            Vec z = f.eval(mu);
            if (f.eval(z) != z) {
                o.pass = false;
                o.detail << "idempotence failed; ";
                break;
            }
            if (!f.property1_holds(mu)) {
                o.pass = false;
                o.detail << "property 1 failed; ";
                break;
            }
            auto open = f.pullback_open(mu);
            order_witness = std::max(order_witness, static_cast<int>(open.size()) - 1);
            for (const auto& g : open)
                if (dist_point_sigma(mu, PartialConcept{e.full_mask(), g.bits}, e.n()) >=
                    rat(1, 4)) {
                    o.pass = false;
                    o.detail << "pullback sample outside sigma_g^(eps0); ";
                }
        }
        if (order_witness > e.vc_dim()) {
            o.pass = false;
            o.detail << "pullback witness order above VC; ";
        }
        o.detail << "class with VC " << e.vc_dim() << ": witness order " << order_witness
                 << "; ";
    }
    return o;
}

std::vector<ConceptClass> test_zoo() {
    std::vector<ConceptClass> zoo;
    for (int t = 3; t <= 6; ++t) zoo.push_back(gen_thresholds(t));
    for (int n = 2; n <= 4; ++n) zoo.push_back(gen_cube(n));
    zoo.push_back(f5());
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        CounterRng rng(seed, 101);
        zoo.push_back(gen_random_downward_closed(4 + static_cast<int>(seed % 2), 4, rng));
    }
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        CounterRng rng(seed, 102);
        zoo.push_back(gen_random_median_closure(4 + static_cast<int>(seed % 2), 4, rng));
    }
    for (uint64_t seed = 1; seed <= 30; ++seed) {
        CounterRng rng(seed, 103);
        int n = 2 + static_cast<int>(rng.below(4));
        std::set<uint32_t> bits;
        int count = 2 + static_cast<int>(rng.below(10));
        for (int i = 0; i < count; ++i) bits.insert(static_cast<uint32_t>(rng.below(1u << n)));
        std::vector<Concept> cs;
        for (uint32_t b : bits) cs.push_back(Concept{b});
        zoo.push_back(ConceptClass(Domain::of_size(n), std::move(cs)));
    }
    return zoo;
}

Outcome crit6() {
    Outcome o;
    CounterRng rng(606, 600);
    auto zoo = test_zoo();
    for (int i = 0; i < 1000; ++i) {
        const auto& e = zoo[rng.below(zoo.size())];
        auto d = random_realizable(e, rng);
        Concept h{static_cast<uint32_t>(rng.below(e.full_mask() + 1))};
        if (loss(d.mu, h) != loss_l1_form(d.mu, h)) {
            o.pass = false;
            o.detail << "loss identity failed; ";
            break;
        }
    }
    int checked = 0;
    for (const auto& e : zoo) {
        if (e.n() > 5) continue;
        long sh = e.count_shattered(), st = e.count_strongly_shattered();
        bool equal = (st == e.size()) && (e.size() == sh);
        if (!(st <= e.size() && e.size() <= sh) || equal != e.is_extremal()) {
            o.pass = false;
            o.detail << "sandwich failed on a zoo class; ";
        }
        ++checked;
    }
    o.detail << "10^3 loss identities exact; sandwich equality matches extremality on "
             << checked << " classes";
    return o;
}

Outcome crit7() {
    Outcome o;
    std::ifstream in(std::string(GOLDEN_DIR) + "/f5_complexes.json");
    if (!in) {
        o.pass = false;
        o.detail << "golden file missing";
        return o;
    }
    json golden;
    in >> golden;
    auto e = f5();
    auto d1 = build_delta1(e);
    std::set<std::string> verts;
    for (const auto& h : d1.verts()) verts.insert(partial_str(h, 3));
    std::set<std::string> expected(golden["delta"]["vertices"].begin(),
                                   golden["delta"]["vertices"].end());
    if (verts != expected || verts.size() != golden["delta"]["vertex_count"].get<size_t>()) {
        o.pass = false;
        o.detail << "Delta vertex inventory mismatch; ";
    }
    std::set<std::string> tops;
    for (const auto& m : d1.maximal_chains()) tops.insert(partial_str(m.top(), 3));
    std::set<std::string> exp_tops(golden["delta"]["maximal_faces"].begin(),
                                   golden["delta"]["maximal_faces"].end());
    if (tops != exp_tops) {
        o.pass = false;
        o.detail << "Delta maximal faces mismatch; ";
    }
    std::set<std::string> cv, cedge, csquare;
    for (const auto& h : e.cube_partials()) {
        int free = 3 - h.support_size();
        if (free == 0) cv.insert(partial_str(h, 3));
        if (free == 1) cedge.insert(partial_str(h, 3));
        if (free == 2) csquare.insert(partial_str(h, 3));
    }
    if (cv != std::set<std::string>(golden["cubical"]["vertices"].begin(),
                                    golden["cubical"]["vertices"].end()) ||
        cedge != std::set<std::string>(golden["cubical"]["edges"].begin(),
                                       golden["cubical"]["edges"].end()) ||
        csquare != std::set<std::string>(golden["cubical"]["squares"].begin(),
                                         golden["cubical"]["squares"].end())) {
        o.pass = false;
        o.detail << "cubical inventory mismatch; ";
    }
    if (o.pass) o.detail << "figure inventories reproduced exactly";
    return o;
}

Outcome crit8() {
    Outcome o;
    int checked = 0, skipped = 0;
    for (const auto& e : test_zoo()) {
        if (!e.is_extremal()) continue;
        if (e.size() > 31) {
            ++skipped;  // dual domain would overflow the bitmask width
            continue;
        }
        if (e.dual().vc_dim() > 2 * e.vc_dim() + 1) {
            o.pass = false;
            o.detail << "dual bound violated; ";
        }
        ++checked;
    }
    o.detail << "dual VC bound holds on " << checked << " extremal classes (" << skipped
             << " too large for the dual's bitmask domain)";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    std::string which = argc > 1 ? argv[1] : "all";
    struct Entry {
        std::string name;
        Outcome (*fn)();
    };
    std::vector<Entry> entries = {
        {"1-thresholds", crit1_thresholds},
        {"1-boxes", crit1_boxes},
        {"1-downward", crit1_downward},
        {"1-median", crit1_median},
        {"1-halfspaces", crit1_halfspaces},
        {"2-cube", crit2},
        {"3-learner", crit3},
        {"4-toolkit", crit4},
        {"5-retraction", crit5},
        {"6-loss-sandwich", crit6},
        {"7-figures", crit7},
        {"8-dual", crit8},
    };
    bool all_pass = true;
    for (auto& entry : entries) {
        if (which != "all" && which != entry.name) continue;
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = entry.fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        auto secs = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count() /
                    1000.0;
        std::cout << "criterion " << entry.name << ": " << (o.pass ? "PASS" : "FAIL") << " ["
                  << secs << "s] " << o.detail.str() << "\n";
        all_pass = all_pass && o.pass;
    }
    return all_pass ? 0 : 1;
}
