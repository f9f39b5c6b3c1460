#include "ccdim/collapse.hpp"

#include <algorithm>
#include <set>

namespace ccdim {

namespace {

struct SearchState {
    std::set<PartialConcept> cells;
    std::vector<CollapseStep> steps;
    long nodes = 0;
    long budget;
    uint32_t full;
    std::set<std::vector<PartialConcept>> seen;
};

// Free faces: tau properly contained in exactly one remaining cell.
std::vector<CollapseStep> free_pairs(const std::set<PartialConcept>& cells) {
    std::vector<CollapseStep> out;
    for (const auto& tau : cells) {
        const PartialConcept* coface = nullptr;
        int count = 0;
        for (const auto& q : cells) {
            if (q == tau) continue;
            if (extends(tau, q)) {  // tau is a face of q
                coface = &q;
                ++count;
                if (count > 1) break;
            }
        }
        if (count == 1) out.push_back({*coface, tau});
    }
    // Prefer collapsing top-dimensional cells first; deterministic order.
    std::sort(out.begin(), out.end(), [](const CollapseStep& a, const CollapseStep& b) {
        int da = a.coface.support_size(), db = b.coface.support_size();
        if (da != db) return da < db;  // smaller support = higher dimension
        if (!(a.coface == b.coface)) return a.coface < b.coface;
        return a.free_face < b.free_face;
    });
    return out;
}

bool dfs(SearchState& st) {
    if (st.cells.size() == 1) return st.cells.begin()->support == st.full;  // must be a vertex
    if (++st.nodes > st.budget) return false;
    std::vector<PartialConcept> key(st.cells.begin(), st.cells.end());
    if (!st.seen.insert(key).second) return false;
    auto pairs = free_pairs(st.cells);
    for (const auto& p : pairs) {
        st.cells.erase(p.coface);
        st.cells.erase(p.free_face);
        st.steps.push_back(p);
        if (dfs(st)) return true;
        st.steps.pop_back();
        st.cells.insert(p.coface);
        st.cells.insert(p.free_face);
    }
    return false;
}

}  // namespace

CollapseResult collapse_search(const std::vector<PartialConcept>& cubes, int n,
                               long node_budget) {
    CollapseResult res;
    if (cubes.empty()) return res;
    SearchState st;
    st.cells.insert(cubes.begin(), cubes.end());
    st.budget = node_budget;
    uint32_t full = n == 32 ? ~0u : ((1u << n) - 1);
    st.full = full;
    if (st.cells.size() % 2 == 0) {
        // Each collapse removes two cells; an even count can never reach one.
        res.stuck.assign(st.cells.begin(), st.cells.end());
        return res;
    }
    if (st.cells.size() == 1) {
        const auto& only = *st.cells.begin();
        if (only.support == full) {
            res.success = true;
            res.final_vertex = only;
        } else {
            res.stuck.assign(st.cells.begin(), st.cells.end());
        }
        return res;
    }
    if (dfs(st) && st.cells.begin()->support == full) {
        res.success = true;
        res.steps = st.steps;
        res.final_vertex = *st.cells.begin();
    } else {
        // Replay the greedy prefix to report a concrete dead end.
        std::set<PartialConcept> cells(cubes.begin(), cubes.end());
        for (;;) {
            auto pairs = free_pairs(cells);
            if (pairs.empty() || cells.size() == 1) break;
            cells.erase(pairs[0].coface);
            cells.erase(pairs[0].free_face);
        }
        res.stuck.assign(cells.begin(), cells.end());
    }
    return res;
}

Contraction::Contraction(std::vector<CollapseStep> steps, PartialConcept base, int n,
                         Rat eps_time)
    : steps_(std::move(steps)), n_(n), eps_time_(std::move(eps_time)) {
    if (eps_time_ <= 0 || eps_time_ >= 1)
        throw std::invalid_argument("contraction time window must be in (0,1)");
    base_point_ = coord_gamma(base, n_);
}

Vec Contraction::step_retract(size_t i, const Vec& y) const {
    const auto& q = steps_[i].coface;
    const auto& tau = steps_[i].free_face;
    // Only points of kappa_q move.
    for (int x = 0; x < n_; ++x) {
        if (q.defined(x)) {
            if (y[x] != Rat(q.value(x))) return y;
        } else if (rat_abs(y[x]) > 1) {
            return y;
        }
    }
    // Apex beyond the free face: 2 * center(tau) - center(q).
    Vec apex = vec_sub(vec_scale(coord_gamma(tau, n_), Rat(2)), coord_gamma(q, n_));
    Vec dir = vec_sub(y, apex);
    // Exit time of the ray apex + t*dir out of kappa_q, for t >= 1.
    std::optional<Rat> t_exit;
    for (int x = 0; x < n_; ++x) {
        if (q.defined(x) || dir[x] == 0) continue;
        Rat bound = dir[x] > 0 ? (1 - apex[x]) / dir[x] : (-1 - apex[x]) / dir[x];
        if (!t_exit || bound < *t_exit) t_exit = bound;
    }
    if (!t_exit) return y;  // degenerate: y is the apex projection of a point cube
    return vec_add(apex, vec_scale(dir, *t_exit));
}

Vec Contraction::eval(const Vec& y, const Rat& t) const {
    if (t <= 1 - eps_time_) return y;
    if (steps_.empty()) return base_point_;
    Rat s = (t - (1 - eps_time_)) / eps_time_;  // in (0, 1]
    if (s > 1) s = 1;
    long m = static_cast<long>(steps_.size());
    Rat scaled = s * m;
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
    long full = fl.get_si();
    if (full >= m) return base_point_;
    Rat lambda = scaled - full;
    Vec z = y;
    for (long i = 0; i < full; ++i) z = step_retract(static_cast<size_t>(i), z);
    if (lambda == 0) return z;
    Vec r = step_retract(static_cast<size_t>(full), z);
    return vec_add(vec_scale(z, 1 - lambda), vec_scale(r, lambda));
}

}  // namespace ccdim
