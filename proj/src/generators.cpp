#include "ccdim/generators.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ccdim {

ConceptClass gen_cube(int n) {
    std::vector<Concept> cs;
    for (uint32_t b = 0; b < (1u << n); ++b) cs.push_back(Concept{b});
    return ConceptClass(Domain::of_size(n), std::move(cs));
}

ConceptClass gen_thresholds(int t) {
    if (t < 2) throw std::invalid_argument("thresholds(t) needs t >= 2");
    int n = t - 1;
    std::vector<Concept> cs;
    for (int j = 0; j < t; ++j) {
        uint32_t bits = 0;
        for (int x = 0; x < n; ++x)
            if (x + 1 <= j) bits |= 1u << x;
        cs.push_back(Concept{bits});
    }
    return ConceptClass(Domain::of_size(n), std::move(cs));
}

ConceptClass gen_boxes(const std::vector<Vec>& points) {
    int n = static_cast<int>(points.size());
    if (n == 0) throw std::invalid_argument("boxes: no points");
    size_t d = points[0].size();
    for (const auto& p : points)
        if (p.size() != d) throw std::invalid_argument("boxes: inconsistent dimensions");
    for (size_t k = 0; k < d; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (points[i][k] == points[j][k])
                    throw std::invalid_argument("boxes: two points share a coordinate");

    std::vector<Concept> cs;
    for (uint32_t s = 0; s < (1u << n); ++s) {
        if (s == 0) {
            cs.push_back(Concept{0});  // empty box
            continue;
        }
        // Bounding box of the selected points must exclude every other point.
        Vec lo(d), hi(d);
        bool first = true;
        for (int i = 0; i < n; ++i) {
            if (!((s >> i) & 1)) continue;
            for (size_t k = 0; k < d; ++k) {
                if (first || points[i][k] < lo[k]) lo[k] = points[i][k];
                if (first || points[i][k] > hi[k]) hi[k] = points[i][k];
            }
            first = false;
        }
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            if ((s >> i) & 1) continue;
            bool inside = true;
            for (size_t k = 0; k < d; ++k)
                if (points[i][k] < lo[k] || points[i][k] > hi[k]) inside = false;
            if (inside) ok = false;
        }
        if (ok) cs.push_back(Concept{s});
    }
    return ConceptClass(Domain::of_size(n), std::move(cs));
}

// Fourier-Motzkin elimination on a strict homogeneous system a_i . v > 0.
bool strict_system_feasible(std::vector<Vec> rows) {
    if (rows.empty()) return true;
    size_t d = rows[0].size();
    for (size_t var = 0; var < d; ++var) {
        size_t rem = d - var;  // rows currently have `rem` coordinates; eliminate the last
        std::vector<Vec> pos, neg, zero;
        for (auto& r : rows) {
            Rat c = r[rem - 1];
            r.pop_back();
            if (c > 0) {
                for (auto& v : r) v /= c;
                pos.push_back(r);
            } else if (c < 0) {
                for (auto& v : r) v /= -c;
                neg.push_back(r);
            } else {
                zero.push_back(r);
            }
        }
        rows = std::move(zero);
        // a + v > 0 and b - v > 0 combine to a + b > 0 (v strictly between);
        // one-sided constraints on the eliminated variable impose nothing.
        for (const auto& a : pos)
            for (const auto& b : neg) rows.push_back(vec_add(a, b));
        // Deduplicate to keep growth in check.
        std::sort(rows.begin(), rows.end());
        rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    }
    // All variables eliminated: every surviving row is empty and encodes "0 > 0".
    return rows.empty();
}

ConceptClass gen_halfspaces(const std::vector<Vec>& points) {
    int n = static_cast<int>(points.size());
    if (n == 0) throw std::invalid_argument("halfspaces: no points");
    size_t d = points[0].size();
    for (const auto& p : points) {
        if (p.size() != d) throw std::invalid_argument("halfspaces: inconsistent dimensions");
        bool all_zero = true;
        for (const auto& x : p)
            if (x != 0) all_zero = false;
        if (all_zero) throw std::invalid_argument("halfspaces: point at the origin");
    }
    std::vector<Concept> cs;
    for (uint32_t s = 0; s < (1u << n); ++s) {
        std::vector<Vec> rows;
        for (int i = 0; i < n; ++i) {
            Vec r = points[i];
            if (!((s >> i) & 1))
                for (auto& v : r) v = -v;
            rows.push_back(std::move(r));
        }
        if (strict_system_feasible(std::move(rows))) cs.push_back(Concept{s});
    }
    return ConceptClass(Domain::of_size(n), std::move(cs));
}

ConceptClass gen_downward_closed(const Domain& domain, const std::vector<Concept>& seeds) {
    std::unordered_set<uint32_t> seen;
    std::deque<uint32_t> queue;
    for (const auto& c : seeds)
        if (seen.insert(c.bits).second) queue.push_back(c.bits);
    if (seen.empty()) throw std::invalid_argument("downward_closed: empty seed set");
    while (!queue.empty()) {
        uint32_t b = queue.front();
        queue.pop_front();
        for (int x = 0; x < domain.size(); ++x)
            if ((b >> x) & 1) {
                uint32_t lower = b & ~(1u << x);
                if (seen.insert(lower).second) queue.push_back(lower);
            }
    }
    std::vector<Concept> cs;
    for (uint32_t b : seen) cs.push_back(Concept{b});
    std::sort(cs.begin(), cs.end());
    return ConceptClass(domain, std::move(cs));
}

ConceptClass gen_median_closure(const ConceptClass& c) {
    std::unordered_set<uint32_t> seen;
    std::vector<uint32_t> all;
    for (const auto& x : c.concepts()) {
        seen.insert(x.bits);
        all.push_back(x.bits);
    }
    bool grew = true;
    while (grew) {
        grew = false;
        size_t sz = all.size();
        for (size_t i = 0; i < sz; ++i)
            for (size_t j = i; j < sz; ++j)
                for (size_t k = j; k < sz; ++k) {
                    uint32_t m = (all[i] & all[j]) | (all[j] & all[k]) | (all[i] & all[k]);
                    if (seen.insert(m).second) {
                        all.push_back(m);
                        grew = true;
                    }
                }
    }
    std::vector<Concept> cs;
    for (uint32_t b : seen) cs.push_back(Concept{b});
    std::sort(cs.begin(), cs.end());
    return ConceptClass(c.domain(), std::move(cs));
}

ConceptClass gen_random_downward_closed(int n, int num_seeds, CounterRng& rng) {
    Domain d = Domain::of_size(n);
    std::vector<Concept> seeds;
    for (int i = 0; i < num_seeds; ++i)
        seeds.push_back(Concept{static_cast<uint32_t>(rng.below(1u << n))});
    std::unordered_set<uint32_t> dedupe;
    std::vector<Concept> unique_seeds;
    for (const auto& s : seeds)
        if (dedupe.insert(s.bits).second) unique_seeds.push_back(s);
    return gen_downward_closed(d, unique_seeds);
}

ConceptClass gen_random_median_closure(int n, int num_seeds, CounterRng& rng) {
    Domain d = Domain::of_size(n);
    std::unordered_set<uint32_t> dedupe;
    std::vector<Concept> seeds;
    for (int i = 0; i < num_seeds; ++i) {
        uint32_t b = static_cast<uint32_t>(rng.below(1u << n));
        if (dedupe.insert(b).second) seeds.push_back(Concept{b});
    }
    return gen_median_closure(ConceptClass(d, seeds));
}

static std::vector<Vec> read_points_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open points file: " + path);
    nlohmann::json j;
    in >> j;
    std::vector<Vec> pts;
    for (const auto& row : j) {
        Vec p;
        for (const auto& v : row) p.push_back(rat_parse_or_throw(v.get<std::string>()));
        pts.push_back(std::move(p));
    }
    return pts;
}

ConceptClass generate_from_descriptor(const std::string& descriptor) {
    std::vector<std::string> parts;
    std::stringstream ss(descriptor);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.empty()) throw std::invalid_argument("empty generator descriptor");
    const std::string& kind = parts[0];
    auto int_arg = [&](size_t i) {
        if (i >= parts.size()) throw std::invalid_argument("descriptor missing argument: " + descriptor);
        return std::stoi(parts[i]);
    };
    if (kind == "cube") return gen_cube(int_arg(1));
    if (kind == "thresholds") return gen_thresholds(int_arg(1));
    if (kind == "boxes") return gen_boxes(read_points_file(parts.at(1)));
    if (kind == "halfspaces") return gen_halfspaces(read_points_file(parts.at(1)));
    if (kind == "downward") {
        int n = int_arg(1);
        uint64_t seed = std::stoull(parts.at(2));
        CounterRng rng(seed, 101);
        return gen_random_downward_closed(n, std::max(2, n), rng);
    }
    if (kind == "median") {
        int n = int_arg(1);
        uint64_t seed = std::stoull(parts.at(2));
        CounterRng rng(seed, 102);
        return gen_random_median_closure(n, std::max(3, n), rng);
    }
    throw std::invalid_argument("unknown generator: " + kind);
}

}  // namespace ccdim
