#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccdim {

// Exact rational scalar. All geometry, membership and order decisions in this
// library are made over Rat; no floating point enters any decision path.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Parses "p/q" or "p". Whitespace is not accepted.
std::optional<Rat> rat_parse(const std::string& s);

inline Rat rat_parse_or_throw(const std::string& s) {
    auto r = rat_parse(s);
    if (!r) throw std::invalid_argument("bad rational literal: '" + s + "'");
    return *r;
}

std::string rat_str(const Rat& r);

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }
inline int rat_sign(const Rat& r) { return sgn(r); }

// Point in R^X with exact coordinates.
using Vec = std::vector<Rat>;

Rat l1_norm(const Vec& v);
Rat linf_norm(const Vec& v);
Rat l1_dist(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_scale(const Vec& v, const Rat& c);
// a + t*(b-a)
Vec vec_lerp(const Vec& a, const Vec& b, const Rat& t);

std::string vec_str(const Vec& v);

}  // namespace ccdim
