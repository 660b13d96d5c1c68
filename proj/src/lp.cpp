#include "setid/lp.hpp"

#include "setid/errors.hpp"

#include <cstddef>

namespace setid::lp {

namespace {

// Dense tableau in equality form:  rows x (ncols structural + 1 rhs column).
// basis[i] is the column basic in row i.
struct Tableau {
    std::size_t rows = 0, cols = 0; // cols excludes the rhs column
    std::vector<std::vector<Rat>> t; // rows x (cols + 1)
    std::vector<std::size_t> basis;

    Rat& at(std::size_t r, std::size_t c) { return t[r][c]; }
    Rat& rhs(std::size_t r) { return t[r][cols]; }

    void pivot(std::size_t prow, std::size_t pcol) {
        Rat piv = t[prow][pcol];
        for (auto& v : t[prow]) v /= piv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == prow) continue;
            Rat f = t[r][pcol];
            if (f == 0) continue;
            for (std::size_t c = 0; c <= cols; ++c) t[r][c] -= f * t[prow][c];
        }
        basis[prow] = pcol;
    }
};

// Maximizes obj over the tableau's feasible basis. `active` marks columns the
// pricing step may enter (artificials are frozen in phase 2). Returns false on
// an unbounded direction.
bool optimize(Tableau& tab, std::vector<Rat>& obj, Rat& obj_val, const std::vector<bool>& active) {
    for (;;) {
        // Bland: smallest-index column with positive reduced cost.
        std::size_t enter = tab.cols;
        for (std::size_t c = 0; c < tab.cols; ++c) {
            if (active[c] && obj[c] > 0) {
                enter = c;
                break;
            }
        }
        if (enter == tab.cols) return true;

        // Ratio test, ties broken by smallest basic variable (Bland).
        std::size_t leave = tab.rows;
        Rat best;
        for (std::size_t r = 0; r < tab.rows; ++r) {
            const Rat& a = tab.at(r, enter);
            if (a <= 0) continue;
            Rat ratio = tab.rhs(r) / a;
            if (leave == tab.rows || ratio < best ||
                (ratio == best && tab.basis[r] < tab.basis[leave])) {
                leave = r;
                best = ratio;
            }
        }
        if (leave == tab.rows) return false; // unbounded

        tab.pivot(leave, enter);
        // update objective row
        Rat f = obj[enter];
        for (std::size_t c = 0; c <= tab.cols; ++c) {
            if (c < tab.cols)
                obj[c] -= f * tab.at(leave, c);
        }
        obj_val += f * tab.rhs(leave);
    }
}

} // namespace

Result maximize(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b,
                const std::vector<std::vector<Rat>>& E, const std::vector<Rat>& d,
                const std::vector<Rat>& c) {
    const std::size_t n = c.size();
    const std::size_t m_ineq = A.size();
    const std::size_t m_eq = E.size();
    const std::size_t rows = m_ineq + m_eq;

    for (const auto& row : A)
        if (row.size() != n) throw InvalidInput("lp: inequality row length mismatch");
    for (const auto& row : E)
        if (row.size() != n) throw InvalidInput("lp: equality row length mismatch");
    if (b.size() != m_ineq || d.size() != m_eq) throw InvalidInput("lp: rhs length mismatch");

    // Structural columns: x+ (n), x- (n), slacks (m_ineq), artificials (rows).
    const std::size_t slack0 = 2 * n;
    const std::size_t art0 = slack0 + m_ineq;
    const std::size_t ncols = art0 + rows;

    Tableau tab;
    tab.rows = rows;
    tab.cols = ncols;
    tab.t.assign(rows, std::vector<Rat>(ncols + 1, Rat(0)));
    tab.basis.assign(rows, 0);

    for (std::size_t r = 0; r < rows; ++r) {
        const bool is_ineq = r < m_ineq;
        const auto& row = is_ineq ? A[r] : E[r - m_ineq];
        const Rat& rhs = is_ineq ? b[r] : d[r - m_ineq];
        const bool flip = rhs < 0;
        for (std::size_t j = 0; j < n; ++j) {
            Rat v = flip ? -row[j] : row[j];
            tab.at(r, j) = v;
            tab.at(r, n + j) = -v;
        }
        if (is_ineq) tab.at(r, slack0 + r) = flip ? Rat(-1) : Rat(1);
        tab.at(r, art0 + r) = 1;
        tab.rhs(r) = flip ? -rhs : rhs;
        tab.basis[r] = art0 + r;
    }

    // Phase 1: maximize -(sum of artificials). Reduced costs start as the sum
    // of constraint rows over non-artificial columns.
    std::vector<Rat> obj(ncols, Rat(0));
    Rat obj_val(0);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t cidx = 0; cidx < art0; ++cidx) obj[cidx] += tab.at(r, cidx);
        obj_val -= tab.rhs(r);
    }
    std::vector<bool> active(ncols, true);
    optimize(tab, obj, obj_val, active); // bounded: objective <= 0
    if (obj_val != 0) return {Status::Infeasible, Rat(0), {}};

    // Pivot surviving artificials out of the basis where possible.
    for (std::size_t r = 0; r < rows; ++r) {
        if (tab.basis[r] < art0) continue;
        std::size_t pcol = art0;
        for (std::size_t cidx = 0; cidx < art0; ++cidx) {
            if (tab.at(r, cidx) != 0) {
                pcol = cidx;
                break;
            }
        }
        if (pcol < art0) tab.pivot(r, pcol); // rhs is 0, pivot keeps feasibility
        // else: redundant row, leave the zero-valued artificial basic
    }
    for (std::size_t cidx = art0; cidx < ncols; ++cidx) active[cidx] = false;

    // Phase 2: real objective, reduced against the current basis.
    std::vector<Rat> cost(ncols, Rat(0));
    for (std::size_t j = 0; j < n; ++j) {
        cost[j] = c[j];
        cost[n + j] = -c[j];
    }
    std::vector<Rat> obj2 = cost;
    Rat obj2_val(0);
    for (std::size_t r = 0; r < rows; ++r) {
        const Rat& cb = cost[tab.basis[r]];
        if (cb == 0) continue;
        for (std::size_t cidx = 0; cidx < ncols; ++cidx) obj2[cidx] -= cb * tab.at(r, cidx);
        obj2_val += cb * tab.rhs(r);
    }
    if (!optimize(tab, obj2, obj2_val, active)) return {Status::Unbounded, Rat(0), {}};

    std::vector<Rat> x(n, Rat(0));
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t bcol = tab.basis[r];
        if (bcol < n)
            x[bcol] += tab.rhs(r);
        else if (bcol < 2 * n)
            x[bcol - n] -= tab.rhs(r);
    }
    return {Status::Optimal, obj2_val, std::move(x)};
}

} // namespace setid::lp
