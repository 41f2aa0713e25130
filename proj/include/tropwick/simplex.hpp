#pragma once

#include <stdexcept>
#include <vector>

#include "tropwick/rational.hpp"

namespace tropwick {

// Small dense exact-rational simplex for the strict-face certificates.
// Standard form: maximize c.x subject to A x = b, x >= 0. Bland's rule,
// so termination is guaranteed; sizes here are tiny.

struct LpResult {
    enum Status { Optimal, Infeasible, Unbounded } status = Infeasible;
    Rational value;
    std::vector<Rational> x;
};

namespace detail {

class SimplexTableau {
public:
    // rows: m constraints; cols: n structural variables.
    SimplexTableau(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b)
        : m_(a.size()), n_(a.empty() ? 0 : a.front().size()) {
        // Tableau layout: n structural + m artificial columns, then rhs.
        tab_.assign(m_, std::vector<Rational>(n_ + m_ + 1, Rational(0)));
        basis_.resize(m_);
        for (std::size_t r = 0; r < m_; ++r) {
            bool flip = b[r] < 0;
            for (std::size_t j = 0; j < n_; ++j) tab_[r][j] = flip ? Rational(-a[r][j]) : a[r][j];
            tab_[r][n_ + r] = 1;
            tab_[r].back() = flip ? Rational(-b[r]) : b[r];
            basis_[r] = n_ + r;
        }
    }

    // Maximizes obj over the current feasible basis, entering only columns
    // below eligible (phase 2 keeps artificials out). Returns false when
    // unbounded.
    bool maximize(const std::vector<Rational>& obj, std::size_t eligible, Rational& out_value) {
        std::vector<Rational> row(n_ + m_ + 1, Rational(0));
        for (std::size_t j = 0; j < n_ + m_; ++j) row[j] = -obj[j];
        for (std::size_t r = 0; r < m_; ++r) {
            const Rational& cb = obj[basis_[r]];
            if (cb == 0) continue;
            for (std::size_t j = 0; j <= n_ + m_; ++j) row[j] += cb * tab_[r][j];
        }
        while (true) {
            // Bland: smallest-index eligible column with negative reduced cost.
            std::size_t pivot_col = n_ + m_;
            for (std::size_t j = 0; j < eligible; ++j)
                if (row[j] < 0) { pivot_col = j; break; }
            if (pivot_col == n_ + m_) break;
            // Ratio test, Bland tie-break on smallest basis index.
            std::size_t pivot_row = m_;
            Rational best_ratio;
            for (std::size_t r = 0; r < m_; ++r) {
                if (tab_[r][pivot_col] <= 0) continue;
                Rational ratio = tab_[r].back() / tab_[r][pivot_col];
                if (pivot_row == m_ || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[r] < basis_[pivot_row])) {
                    pivot_row = r;
                    best_ratio = ratio;
                }
            }
            if (pivot_row == m_) return false;  // unbounded
            pivot(pivot_row, pivot_col, row);
        }
        out_value = row.back();
        return true;
    }

    Rational solution_coord(std::size_t j) const {
        for (std::size_t r = 0; r < m_; ++r)
            if (basis_[r] == j) return tab_[r].back();
        return Rational(0);
    }

    // Pivots basic artificials onto structural columns where possible. A
    // row that stays artificial is an all-zero redundant constraint; its
    // artificial sits at value zero and never interacts again.
    void drive_out_artificials() {
        std::vector<Rational> dummy(n_ + m_ + 1, Rational(0));
        for (std::size_t r = 0; r < m_; ++r) {
            if (basis_[r] < n_) continue;
            for (std::size_t j = 0; j < n_; ++j) {
                if (tab_[r][j] != 0) {
                    pivot(r, j, dummy);
                    break;
                }
            }
        }
    }

    std::size_t structural_count() const { return n_; }
    std::size_t column_count() const { return n_ + m_; }

private:
    void pivot(std::size_t pr, std::size_t pc, std::vector<Rational>& row) {
        Rational inv = 1 / tab_[pr][pc];
        for (auto& v : tab_[pr]) v *= inv;
        for (std::size_t r = 0; r < m_; ++r) {
            if (r == pr || tab_[r][pc] == 0) continue;
            Rational f = tab_[r][pc];
            for (std::size_t j = 0; j <= n_ + m_; ++j) tab_[r][j] -= f * tab_[pr][j];
        }
        if (row[pc] != 0) {
            Rational f = row[pc];
            for (std::size_t j = 0; j <= n_ + m_; ++j) row[j] -= f * tab_[pr][j];
        }
        basis_[pr] = pc;
    }

    std::size_t m_, n_;
    std::vector<std::vector<Rational>> tab_;
    std::vector<std::size_t> basis_;
};

}  // namespace detail

inline LpResult solve_lp_max(const std::vector<std::vector<Rational>>& a,
                             const std::vector<Rational>& b, const std::vector<Rational>& c) {
    const std::size_t m = a.size();
    const std::size_t n = m == 0 ? c.size() : a.front().size();
    if (b.size() != m || c.size() != n) throw std::invalid_argument("lp: shape mismatch");
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("lp: ragged matrix");

    detail::SimplexTableau t(a, b);

    // Phase 1: maximize minus the sum of artificials.
    std::vector<Rational> phase1(t.column_count(), Rational(0));
    for (std::size_t j = n; j < t.column_count(); ++j) phase1[j] = -1;
    Rational p1value;
    if (!t.maximize(phase1, t.column_count(), p1value))
        throw std::logic_error("lp: phase 1 unbounded");
    LpResult res;
    if (p1value != 0) {
        res.status = LpResult::Infeasible;
        return res;
    }
    t.drive_out_artificials();

    // Phase 2 over structural columns only.
    std::vector<Rational> phase2(t.column_count(), Rational(0));
    for (std::size_t j = 0; j < n; ++j) phase2[j] = c[j];
    Rational p2value;
    if (!t.maximize(phase2, n, p2value)) {
        res.status = LpResult::Unbounded;
        return res;
    }
    res.status = LpResult::Optimal;
    res.value = p2value;
    res.x.resize(n);
    for (std::size_t j = 0; j < n; ++j) res.x[j] = t.solution_coord(j);
    return res;
}

}  // namespace tropwick
