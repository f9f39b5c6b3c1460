#include "ccdim/lp.hpp"

#include <stdexcept>

namespace ccdim {

namespace {

// Dense tableau, rows = constraints, cols = variables plus rhs.
struct Tableau {
    std::vector<Vec> t;      // m x (nv + 1), column nv is the rhs
    std::vector<int> basis;  // basic variable per row
    int m, nv;

    void pivot(int row, int col) {
        Rat piv = t[row][col];
        for (int j = 0; j <= nv; ++j) t[row][j] /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == row || t[i][col] == 0) continue;
            Rat f = t[i][col];
            for (int j = 0; j <= nv; ++j) t[i][j] -= f * t[row][j];
        }
        basis[row] = col;
    }

    // Bland's rule on the given costs; `allowed` masks columns that may enter.
    void optimize(const Vec& cost, const std::vector<bool>& allowed) {
        for (;;) {
            int enter = -1;
            for (int j = 0; j < nv && enter < 0; ++j) {
                if (!allowed[j]) continue;
                bool basic = false;
                for (int i = 0; i < m; ++i)
                    if (basis[i] == j) basic = true;
                if (basic) continue;
                Rat r = cost[j];
                for (int i = 0; i < m; ++i)
                    if (cost[basis[i]] != 0) r -= cost[basis[i]] * t[i][j];
                if (r < 0) enter = j;
            }
            if (enter < 0) return;
            int leave = -1;
            Rat best = 0;
            for (int i = 0; i < m; ++i) {
                if (t[i][enter] <= 0) continue;
                Rat ratio = t[i][nv] / t[i][enter];
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) throw std::runtime_error("lp: unbounded");
            pivot(leave, enter);
        }
    }

    Rat objective(const Vec& cost) const {
        Rat v = 0;
        for (int i = 0; i < m; ++i)
            if (cost[basis[i]] != 0) v += cost[basis[i]] * t[i][nv];
        return v;
    }
};

}  // namespace

std::optional<LpSolution> lp_solve_eq_min(const std::vector<Vec>& a, const Vec& b, const Vec& c) {
    int m = static_cast<int>(a.size());
    int n = static_cast<int>(c.size());
    Tableau tab;
    tab.m = m;
    tab.nv = n + m;  // artificials appended
    tab.t.assign(m, Vec(tab.nv + 1, Rat(0)));
    tab.basis.resize(m);
    for (int i = 0; i < m; ++i) {
        int s = b[i] < 0 ? -1 : 1;
        for (int j = 0; j < n; ++j) tab.t[i][j] = s * a[i][j];
        tab.t[i][tab.nv] = s * b[i];
        tab.t[i][n + i] = 1;
        tab.basis[i] = n + i;
    }

    // Phase 1: drive the artificials to zero.
    Vec cost1(tab.nv, Rat(0));
    for (int i = 0; i < m; ++i) cost1[n + i] = 1;
    std::vector<bool> allow_all(tab.nv, true);
    tab.optimize(cost1, allow_all);
    if (tab.objective(cost1) != 0) return std::nullopt;
    // Pivot lingering artificials out where possible; all-zero rows are redundant.
    for (int i = 0; i < m; ++i) {
        if (tab.basis[i] < n) continue;
        for (int j = 0; j < n; ++j)
            if (tab.t[i][j] != 0) {
                tab.pivot(i, j);
                break;
            }
    }

    // Phase 2 on the true costs, artificials barred from entering.
    Vec cost2(tab.nv, Rat(0));
    for (int j = 0; j < n; ++j) cost2[j] = c[j];
    std::vector<bool> allowed(tab.nv, false);
    for (int j = 0; j < n; ++j) allowed[j] = true;
    tab.optimize(cost2, allowed);

    LpSolution sol;
    sol.x.assign(n, Rat(0));
    for (int i = 0; i < m; ++i)
        if (tab.basis[i] < n) sol.x[tab.basis[i]] = tab.t[i][tab.nv];
    sol.value = tab.objective(cost2);
    return sol;
}

Rat dist_point_simplex(const Vec& p, const std::vector<Vec>& vertices) {
    int n = static_cast<int>(p.size());
    int k = static_cast<int>(vertices.size());
    // Variables: lambda (k), tp (n), tm (n); minimize sum(tp + tm)
    // subject to sum_i lambda_i v_i[x] + tp_x - tm_x = p_x and sum lambda = 1.
    int nv = k + 2 * n;
    std::vector<Vec> a(n + 1, Vec(nv, Rat(0)));
    Vec b(n + 1, Rat(0)), c(nv, Rat(0));
    for (int x = 0; x < n; ++x) {
        for (int i = 0; i < k; ++i) a[x][i] = vertices[i][x];
        a[x][k + x] = 1;
        a[x][k + n + x] = -1;
        b[x] = p[x];
    }
    for (int i = 0; i < k; ++i) a[n][i] = 1;
    b[n] = 1;
    for (int j = k; j < nv; ++j) c[j] = 1;
    auto sol = lp_solve_eq_min(a, b, c);
    if (!sol) throw std::runtime_error("dist_point_simplex: infeasible");
    return sol->value;
}

Rat dist_simplex_simplex(const std::vector<Vec>& us, const std::vector<Vec>& vs) {
    int n = static_cast<int>(us[0].size());
    int ku = static_cast<int>(us.size());
    int kv = static_cast<int>(vs.size());
    // Variables: lambda (ku), nu (kv), tp (n), tm (n).
    int nv = ku + kv + 2 * n;
    std::vector<Vec> a(n + 2, Vec(nv, Rat(0)));
    Vec b(n + 2, Rat(0)), c(nv, Rat(0));
    for (int x = 0; x < n; ++x) {
        for (int i = 0; i < ku; ++i) a[x][i] = us[i][x];
        for (int j = 0; j < kv; ++j) a[x][ku + j] = -vs[j][x];
        a[x][ku + kv + x] = 1;
        a[x][ku + kv + n + x] = -1;
    }
    for (int i = 0; i < ku; ++i) a[n][i] = 1;
    b[n] = 1;
    for (int j = 0; j < kv; ++j) a[n + 1][ku + j] = 1;
    b[n + 1] = 1;
    for (int j = ku + kv; j < nv; ++j) c[j] = 1;
    auto sol = lp_solve_eq_min(a, b, c);
    if (!sol) throw std::runtime_error("dist_simplex_simplex: infeasible");
    return sol->value;
}

}  // namespace ccdim
