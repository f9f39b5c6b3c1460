#include "ccdim/rational.hpp"

namespace ccdim {

std::optional<Rat> rat_parse(const std::string& s) {
    if (s.empty()) return std::nullopt;
    auto slash = s.find('/');
    std::string num = s.substr(0, slash == std::string::npos ? s.size() : slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    auto is_int = [](const std::string& t) {
        if (t.empty()) return false;
        size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    if (!is_int(num) || !is_int(den)) return std::nullopt;
    mpz_class n(num), d(den);
    if (d == 0) return std::nullopt;
    Rat r(n, d);
    r.canonicalize();
    return r;
}

std::string rat_str(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat l1_norm(const Vec& v) {
    Rat s = 0;
    for (const auto& x : v) s += rat_abs(x);
    return s;
}

Rat linf_norm(const Vec& v) {
    Rat m = 0;
    for (const auto& x : v) {
        Rat a = rat_abs(x);
        if (a > m) m = a;
    }
    return m;
}

Rat l1_dist(const Vec& a, const Vec& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += rat_abs(a[i] - b[i]);
    return s;
}

Vec vec_sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec vec_add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec vec_scale(const Vec& v, const Rat& c) {
    Vec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = v[i] * c;
    return r;
}

Vec vec_lerp(const Vec& a, const Vec& b, const Rat& t) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + t * (b[i] - a[i]);
    return r;
}

std::string vec_str(const Vec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += rat_str(v[i]);
    }
    return s + ")";
}

}  // namespace ccdim
