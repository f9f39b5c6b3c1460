#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace ccdim {

// Domain element indices are bit positions 0..n-1 in the masks below.
struct Domain {
    std::vector<std::string> labels;

    int size() const { return static_cast<int>(labels.size()); }
    uint32_t full_mask() const { return size() == 32 ? ~0u : ((1u << size()) - 1); }

    static Domain of_size(int n);  // labels x1..xn
    void validate() const;
};

// Total +-1 labeling, one bit per element; set bit means +1.
struct Concept {
    uint32_t bits = 0;

    int value(int x) const { return (bits >> x) & 1 ? +1 : -1; }
    bool operator==(const Concept& o) const { return bits == o.bits; }
    auto operator<=>(const Concept& o) const { return bits <=> o.bits; }
};

// Ternary labeling; support bit clear means '*'. Invariant: bits subset of support.
struct PartialConcept {
    uint32_t support = 0;
    uint32_t bits = 0;

    static PartialConcept all_star() { return {0, 0}; }
    static PartialConcept of_concept(Concept c, uint32_t mask) {
        return {mask, c.bits & mask};
    }

    bool defined(int x) const { return (support >> x) & 1; }
    int value(int x) const { return (bits >> x) & 1 ? +1 : -1; }  // only if defined
    int support_size() const { return __builtin_popcount(support); }
    bool is_total(uint32_t full) const { return support == full; }
    Concept as_concept() const { return Concept{bits}; }

    bool operator==(const PartialConcept& o) const {
        return support == o.support && bits == o.bits;
    }
    auto operator<=>(const PartialConcept&) const = default;
};

struct PartialConceptHash {
    size_t operator()(const PartialConcept& h) const {
        return std::hash<uint64_t>()((static_cast<uint64_t>(h.support) << 32) | h.bits);
    }
};

// h1 extends h2: supp(h2) subset of supp(h1), values agree on supp(h2).
inline bool extends(const PartialConcept& h1, const PartialConcept& h2) {
    return (h2.support & ~h1.support) == 0 && ((h1.bits ^ h2.bits) & h2.support) == 0;
}
inline bool extends(const Concept& c, const PartialConcept& h, uint32_t full) {
    return extends(PartialConcept{full, c.bits}, h);
}

std::string concept_str(const Concept& c, int n);
std::string partial_str(const PartialConcept& h, int n);
// Parses words over '+','-' (and '*' for partial concepts).
std::optional<Concept> concept_parse(const std::string& s, int n);
std::optional<PartialConcept> partial_parse(const std::string& s, int n);

class ConceptClass {
  public:
    ConceptClass(Domain domain, std::vector<Concept> concepts);

    const Domain& domain() const { return domain_; }
    int n() const { return domain_.size(); }
    uint32_t full_mask() const { return domain_.full_mask(); }
    const std::vector<Concept>& concepts() const { return concepts_; }
    int size() const { return static_cast<int>(concepts_.size()); }
    const Concept& operator[](int i) const { return concepts_[i]; }

    bool contains(Concept c) const { return member_.count(c.bits) > 0; }
    int index_of(Concept c) const;  // -1 if absent
    bool is_full_cube() const { return size() == (1 << n()); }

    // All concepts of the class extending h.
    std::vector<Concept> completions(const PartialConcept& h) const;
    bool realizable(const PartialConcept& h) const;
    // True iff every completion of h (within the full cube) lies in the class.
    bool is_cube(const PartialConcept& h) const;

    // Nonempty realizable partial concepts, deterministically ordered by
    // (support size, support, bits).
    std::vector<PartialConcept> realizable_partials() const;
    // Partial concepts all of whose completions are in the class (the cubes),
    // same ordering. Includes h_* only when the class is the full cube.
    std::vector<PartialConcept> cube_partials() const;

    bool shatters(uint32_t set_mask) const;
    bool strongly_shatters(uint32_t set_mask) const;
    std::optional<uint32_t> strong_shatter_witness(uint32_t set_mask) const;
    int vc_dim() const;
    // (size, lexicographically-first witness mask among maximizers)
    std::pair<int, uint32_t> max_strongly_shattered() const;
    bool is_extremal() const;
    long count_shattered() const;
    long count_strongly_shattered() const;

    ConceptClass restrict_to(uint32_t set_mask) const;
    ConceptClass h_restriction(const PartialConcept& h) const;
    ConceptClass dual() const;

  private:
    Domain domain_;
    std::vector<Concept> concepts_;
    std::unordered_set<uint32_t> member_;
};

}  // namespace ccdim
