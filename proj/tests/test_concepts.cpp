#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>
#include <string>

#include "ccdim/concepts.hpp"
#include "ccdim/generators.hpp"
#include "ccdim/rng.hpp"
#include "doctest.h"

using namespace ccdim;

namespace {

ConceptClass make_class(const std::vector<std::string>& words) {
    int n = static_cast<int>(words[0].size());
    std::vector<Concept> cs;
    for (const auto& w : words) cs.push_back(concept_parse(w, n).value());
    return ConceptClass(Domain::of_size(n), std::move(cs));
}

ConceptClass f5() { return make_class({"++-", "+++", "+-+", "--+", "-++"}); }

std::set<std::string> concept_words(const std::vector<Concept>& cs, int n) {
    std::set<std::string> out;
    for (const auto& c : cs) out.insert(concept_str(c, n));
    return out;
}

// Independent string-based oracle for shattering, used to cross-check the
// bitmask implementation.
bool shatters_oracle(const std::vector<std::string>& words, const std::vector<int>& s) {
    std::set<std::string> pats;
    for (const auto& w : words) {
        std::string p;
        for (int x : s) p += w[x];
        pats.insert(p);
    }
    return pats.size() == (size_t{1} << s.size());
}

bool strongly_shatters_oracle(const std::vector<std::string>& words, const std::vector<int>& s) {
    std::set<int> inside(s.begin(), s.end());
    std::map<std::string, std::set<std::string>> groups;
    for (const auto& w : words) {
        std::string out_pat, in_pat;
        for (size_t x = 0; x < w.size(); ++x)
            (inside.count(static_cast<int>(x)) ? in_pat : out_pat) += w[x];
        groups[out_pat].insert(in_pat);
    }
    for (const auto& [a, pats] : groups)
        if (pats.size() == (size_t{1} << s.size())) return true;
    return false;
}

std::vector<std::string> random_words(int n, int count, CounterRng& rng) {
    std::set<std::string> seen;
    for (int i = 0; i < count; ++i) {
        std::string w;
        for (int x = 0; x < n; ++x) w += rng.coin() ? '+' : '-';
        seen.insert(w);
    }
    return {seen.begin(), seen.end()};
}

}  // namespace

TEST_CASE("extends") {
    int n = 3;
    auto h = [&](const std::string& s) { return partial_parse(s, n).value(); };
    CHECK(extends(h("++*"), h("+**")));
    CHECK_FALSE(extends(h("++*"), h("*+-")));
    CHECK(extends(h("+-*"), PartialConcept::all_star()));
    CHECK(extends(h("***"), PartialConcept::all_star()));
    CHECK_FALSE(extends(h("+**"), h("-**")));
}

TEST_CASE("completions against F5") {
    auto c = f5();
    auto h = [&](const std::string& s) { return partial_parse(s, 3).value(); };
    CHECK(concept_words(c.completions(h("**+")), 3) ==
          std::set<std::string>{"+++", "+-+", "-++", "--+"});
    CHECK(concept_words(c.completions(h("+-*")), 3) == std::set<std::string>{"+-+"});
    CHECK(c.completions(PartialConcept::all_star()).size() == 5);
}

TEST_CASE("shattering on F5") {
    auto c = f5();
    CHECK(c.shatters(0b011));        // {x1,x2}
    CHECK_FALSE(c.shatters(0b101));  // {x1,x3}: -- pattern absent
    CHECK(c.shatters(0));
    CHECK(c.strongly_shatters(0b011));
    CHECK(c.strong_shatter_witness(0b011).value() == 0b100);  // +1 on x3
    CHECK(c.strongly_shatters(0b100));                        // {x3}, witness ++ on (x1,x2)
    CHECK(c.strong_shatter_witness(0b100).value() == 0b011);
}

TEST_CASE("vc dimension") {
    CHECK(gen_cube(1).vc_dim() == 1);
    CHECK(gen_cube(3).vc_dim() == 3);
    CHECK(gen_cube(4).vc_dim() == 4);
    CHECK(f5().vc_dim() == 2);
    CHECK(make_class({"+-+"}).vc_dim() == 0);
}

TEST_CASE("max strongly shattered") {
    auto [k5, w5] = f5().max_strongly_shattered();
    CHECK(k5 == 2);
    CHECK(w5 == 0b011);
    auto [kc, wc] = gen_cube(3).max_strongly_shattered();
    CHECK(kc == 3);
    CHECK(wc == 0b111);
    auto [kt, wt] = gen_thresholds(4).max_strongly_shattered();
    CHECK(kt == 1);
    CHECK(wt == 0b001);
}

TEST_CASE("extremality") {
    CHECK(f5().is_extremal());
    CHECK(gen_thresholds(3).is_extremal());
    CHECK(gen_thresholds(6).is_extremal());
    CHECK_FALSE(make_class({"++", "--"}).is_extremal());
    // Shattered and strongly shattered families of F5.
    auto c = f5();
    std::set<uint32_t> shattered, strong;
    for (uint32_t s = 0; s <= 7; ++s) {
        if (c.shatters(s)) shattered.insert(s);
        if (c.strongly_shatters(s)) strong.insert(s);
    }
    CHECK(shattered == std::set<uint32_t>{0b000, 0b001, 0b010, 0b100, 0b011});
    CHECK(shattered == strong);
}

TEST_CASE("restrictions") {
    auto c = f5();
    auto r = c.restrict_to(0b011);
    CHECK(r.size() == 4);
    CHECK(r.n() == 2);
    auto full = c.restrict_to(0b111);
    CHECK(full.size() == 5);
    CHECK(gen_cube(3).restrict_to(0b001).size() == 2);
    CHECK_THROWS(c.restrict_to(0));
    CHECK(r.vc_dim() <= c.vc_dim());
}

TEST_CASE("h restriction") {
    auto c = f5();
    auto h = [&](const std::string& s) { return partial_parse(s, 3).value(); };
    CHECK(concept_words(c.h_restriction(h("**+")).concepts(), 3) ==
          std::set<std::string>{"+++", "+-+", "-++", "--+"});
    CHECK(c.h_restriction(PartialConcept::all_star()).size() == 5);
    CHECK(concept_words(c.h_restriction(h("++*")).concepts(), 3) ==
          std::set<std::string>{"++-", "+++"});
    CHECK_THROWS(c.h_restriction(h("-*-")));
    // h-restrictions of extremal classes stay extremal.
    for (const auto& hh : c.realizable_partials()) CHECK(c.h_restriction(hh).is_extremal());
}

TEST_CASE("dual class") {
    auto d2 = gen_cube(2).dual();
    CHECK(d2.size() == 2);
    CHECK(d2.n() == 4);
    auto c = f5();
    CHECK(c.dual().dual().size() == c.size());
    // Extremal dual bound, checked over generator classes.
    std::vector<ConceptClass> es{f5(), gen_thresholds(4), gen_thresholds(6), gen_cube(3)};
    for (const auto& e : es) CHECK(e.dual().vc_dim() <= 2 * e.vc_dim() + 1);
}

TEST_CASE("realizable partials and cubes of F5") {
    auto c = f5();
    auto partials = c.realizable_partials();
    CHECK(partials.size() == 21);  // 5 concepts + 10 support-2 + 6 support-1
    auto cubes = c.cube_partials();
    CHECK(cubes.size() == 11);  // 5 vertices + 5 edges + 1 square
    int by_dim[4] = {0, 0, 0, 0};
    for (const auto& h : cubes) by_dim[3 - h.support_size()]++;
    CHECK(by_dim[0] == 5);
    CHECK(by_dim[1] == 5);
    CHECK(by_dim[2] == 1);
    std::set<std::string> edges;
    for (const auto& h : cubes)
        if (h.support_size() == 2) edges.insert(partial_str(h, 3));
    CHECK(edges == std::set<std::string>{"++*", "+*+", "*-+", "-*+", "*++"});
}

TEST_CASE("shattering implications and sandwich, randomized against oracle") {
    CounterRng rng(7, 1);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 2 + static_cast<int>(rng.below(5));  // up to 6
        auto words = random_words(n, 2 + static_cast<int>(rng.below(12)), rng);
        auto cls = make_class(words);
        long n_shattered = 0, n_strong = 0;
        for (uint32_t s = 0; s < (1u << n); ++s) {
            std::vector<int> sv;
            for (int x = 0; x < n; ++x)
                if ((s >> x) & 1) sv.push_back(x);
            bool sh = cls.shatters(s), st = cls.strongly_shatters(s);
            CHECK(sh == shatters_oracle(words, sv));
            CHECK(st == strongly_shatters_oracle(words, sv));
            if (st) CHECK(sh);  // strong shattering implies shattering
            n_shattered += sh;
            n_strong += st;
        }
        CHECK(n_strong <= cls.size());
        CHECK(cls.size() <= n_shattered);
        bool both_equal = (n_strong == cls.size()) && (cls.size() == n_shattered);
        CHECK(both_equal == cls.is_extremal());
        CHECK(cls.count_shattered() == n_shattered);
        CHECK(cls.count_strongly_shattered() == n_strong);
    }
}

TEST_CASE("duplicate concepts rejected") {
    CHECK_THROWS(make_class({"++", "++"}));
}
