#include "ccdim/concepts.hpp"

#include <algorithm>
#include <unordered_map>

namespace ccdim {

Domain Domain::of_size(int n) {
    Domain d;
    for (int i = 0; i < n; ++i) d.labels.push_back("x" + std::to_string(i + 1));
    d.validate();
    return d;
}

void Domain::validate() const {
    if (labels.empty()) throw std::invalid_argument("domain must be nonempty");
    if (labels.size() > 31) throw std::invalid_argument("domain too large (max 31 elements)");
    std::unordered_set<std::string> seen;
    for (const auto& l : labels)
        if (!seen.insert(l).second)
            throw std::invalid_argument("duplicate domain label: " + l);
}

std::string concept_str(const Concept& c, int n) {
    std::string s(n, '-');
    for (int x = 0; x < n; ++x)
        if ((c.bits >> x) & 1) s[x] = '+';
    return s;
}

std::string partial_str(const PartialConcept& h, int n) {
    std::string s(n, '*');
    for (int x = 0; x < n; ++x)
        if ((h.support >> x) & 1) s[x] = ((h.bits >> x) & 1) ? '+' : '-';
    return s;
}

std::optional<Concept> concept_parse(const std::string& s, int n) {
    if (static_cast<int>(s.size()) != n) return std::nullopt;
    Concept c;
    for (int x = 0; x < n; ++x) {
        if (s[x] == '+') c.bits |= 1u << x;
        else if (s[x] != '-') return std::nullopt;
    }
    return c;
}

std::optional<PartialConcept> partial_parse(const std::string& s, int n) {
    if (static_cast<int>(s.size()) != n) return std::nullopt;
    PartialConcept h;
    for (int x = 0; x < n; ++x) {
        if (s[x] == '*') continue;
        if (s[x] != '+' && s[x] != '-') return std::nullopt;
        h.support |= 1u << x;
        if (s[x] == '+') h.bits |= 1u << x;
    }
    return h;
}

ConceptClass::ConceptClass(Domain domain, std::vector<Concept> concepts)
    : domain_(std::move(domain)), concepts_(std::move(concepts)) {
    domain_.validate();
    if (concepts_.empty()) throw std::invalid_argument("concept class must be nonempty");
    uint32_t full = domain_.full_mask();
    for (const auto& c : concepts_) {
        if (c.bits & ~full) throw std::invalid_argument("concept wider than domain");
        if (!member_.insert(c.bits).second)
            throw std::invalid_argument("duplicate concept: " + concept_str(c, n()));
    }
}

int ConceptClass::index_of(Concept c) const {
    for (int i = 0; i < size(); ++i)
        if (concepts_[i] == c) return i;
    return -1;
}

std::vector<Concept> ConceptClass::completions(const PartialConcept& h) const {
    std::vector<Concept> out;
    for (const auto& c : concepts_)
        if (extends(c, h, full_mask())) out.push_back(c);
    return out;
}

bool ConceptClass::realizable(const PartialConcept& h) const {
    for (const auto& c : concepts_)
        if (extends(c, h, full_mask())) return true;
    return false;
}

bool ConceptClass::is_cube(const PartialConcept& h) const {
    uint32_t free = full_mask() & ~h.support;
    // Iterate all assignments of the free coordinates.
    uint32_t sub = 0;
    for (;;) {
        if (!member_.count(h.bits | sub)) return false;
        if (sub == free) break;
        sub = (sub - free) & free;
    }
    return true;
}

std::vector<PartialConcept> ConceptClass::realizable_partials() const {
    std::unordered_set<PartialConcept, PartialConceptHash> seen;
    uint32_t full = full_mask();
    for (const auto& c : concepts_) {
        // All restrictions of c to nonempty subsets.
        for (uint32_t mask = full;; mask = (mask - 1) & full) {
            if (mask != 0) seen.insert(PartialConcept::of_concept(c, mask));
            if (mask == 0) break;
        }
    }
    std::vector<PartialConcept> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), [](const PartialConcept& a, const PartialConcept& b) {
        int sa = a.support_size(), sb = b.support_size();
        if (sa != sb) return sa < sb;
        if (a.support != b.support) return a.support < b.support;
        return a.bits < b.bits;
    });
    return out;
}

std::vector<PartialConcept> ConceptClass::cube_partials() const {
    std::vector<PartialConcept> out;
    for (const auto& h : realizable_partials())
        if (is_cube(h)) out.push_back(h);
    if (is_full_cube()) out.insert(out.begin(), PartialConcept::all_star());
    return out;
}

bool ConceptClass::shatters(uint32_t set_mask) const {
    int k = __builtin_popcount(set_mask);
    std::unordered_set<uint32_t> patterns;
    for (const auto& c : concepts_) {
        patterns.insert(c.bits & set_mask);
        if (static_cast<int>(patterns.size()) == (1 << k)) return true;
    }
    return static_cast<int>(patterns.size()) == (1 << k);
}

std::optional<uint32_t> ConceptClass::strong_shatter_witness(uint32_t set_mask) const {
    uint32_t outside = full_mask() & ~set_mask;
    int k = __builtin_popcount(set_mask);
    // Only outside labelings that actually occur in the class can be witnesses.
    std::unordered_map<uint32_t, std::unordered_set<uint32_t>> by_outside;
    for (const auto& c : concepts_) by_outside[c.bits & outside].insert(c.bits & set_mask);
    uint32_t best = 0;
    bool found = false;
    for (const auto& [a, pats] : by_outside) {
        if (static_cast<int>(pats.size()) == (1 << k)) {
            if (!found || a < best) best = a;
            found = true;
        }
    }
    if (!found) return std::nullopt;
    return best;
}

bool ConceptClass::strongly_shatters(uint32_t set_mask) const {
    return strong_shatter_witness(set_mask).has_value();
}

int ConceptClass::vc_dim() const {
    int best = 0;
    uint32_t full = full_mask();
    for (uint32_t s = 0; s <= full; ++s) {
        int k = __builtin_popcount(s);
        if (k > best && shatters(s)) best = k;
    }
    return best;
}

std::pair<int, uint32_t> ConceptClass::max_strongly_shattered() const {
    int best = 0;
    uint32_t witness = 0;
    uint32_t full = full_mask();
    for (uint32_t s = 0; s <= full; ++s) {
        int k = __builtin_popcount(s);
        if (k > best && strongly_shatters(s)) {
            best = k;
            witness = s;
        }
    }
    return {best, witness};
}

bool ConceptClass::is_extremal() const {
    uint32_t full = full_mask();
    for (uint32_t s = 0; s <= full; ++s)
        if (shatters(s) && !strongly_shatters(s)) return false;
    return true;
}

long ConceptClass::count_shattered() const {
    long count = 0;
    uint32_t full = full_mask();
    for (uint32_t s = 0; s <= full; ++s)
        if (shatters(s)) ++count;
    return count;
}

long ConceptClass::count_strongly_shattered() const {
    long count = 0;
    uint32_t full = full_mask();
    for (uint32_t s = 0; s <= full; ++s)
        if (strongly_shatters(s)) ++count;
    return count;
}

ConceptClass ConceptClass::restrict_to(uint32_t set_mask) const {
    if (set_mask == 0) throw std::invalid_argument("restriction to empty set");
    Domain d;
    std::vector<int> positions;
    for (int x = 0; x < n(); ++x)
        if ((set_mask >> x) & 1) {
            d.labels.push_back(domain_.labels[x]);
            positions.push_back(x);
        }
    std::vector<Concept> cs;
    std::unordered_set<uint32_t> seen;
    for (const auto& c : concepts_) {
        uint32_t packed = 0;
        for (size_t i = 0; i < positions.size(); ++i)
            if ((c.bits >> positions[i]) & 1) packed |= 1u << i;
        if (seen.insert(packed).second) cs.push_back(Concept{packed});
    }
    return ConceptClass(std::move(d), std::move(cs));
}

ConceptClass ConceptClass::h_restriction(const PartialConcept& h) const {
    std::vector<Concept> cs = completions(h);
    if (cs.empty())
        throw std::invalid_argument("partial concept not realizable: " + partial_str(h, n()));
    return ConceptClass(domain_, std::move(cs));
}

ConceptClass ConceptClass::dual() const {
    Domain d;
    for (int i = 0; i < size(); ++i) d.labels.push_back("c" + std::to_string(i + 1));
    std::vector<Concept> rows;
    std::unordered_set<uint32_t> seen;
    for (int x = 0; x < n(); ++x) {
        uint32_t row = 0;
        for (int i = 0; i < size(); ++i)
            if ((concepts_[i].bits >> x) & 1) row |= 1u << i;
        if (seen.insert(row).second) rows.push_back(Concept{row});
    }
    return ConceptClass(std::move(d), std::move(rows));
}

}  // namespace ccdim
