#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tropwick/plucker.hpp"
#include "tropwick/puiseux.hpp"
#include "tropwick/subsets.hpp"
#include "tropwick/wick.hpp"

namespace tropwick {

using ScalarMatrix = std::vector<std::vector<PuiseuxScalar>>;

namespace detail {

inline void check_rectangular(const ScalarMatrix& m) {
    if (m.empty()) throw std::invalid_argument("empty matrix");
    for (const auto& row : m)
        if (row.size() != m.front().size()) throw std::invalid_argument("ragged matrix");
}

// Determinant of the submatrix on the given rows and columns, by Laplace
// expansion with memoization over column subsets.
inline PuiseuxScalar submatrix_det(const ScalarMatrix& m, const std::vector<int>& rows,
                                   const std::vector<int>& cols) {
    const std::size_t k = rows.size();
    if (cols.size() != k) throw std::invalid_argument("det: non-square selection");
    std::map<SubsetMask, PuiseuxScalar> memo;
    memo.emplace(0u, PuiseuxScalar(1));
    // D(C) expands along row rows[|C|-1] over the columns in C.
    std::vector<SubsetMask> by_size[33];
    for (SubsetMask c = 1; c < (1u << k); ++c) by_size[popcount(c)].push_back(c);
    for (std::size_t size = 1; size <= k; ++size) {
        for (SubsetMask c : by_size[size]) {
            PuiseuxScalar acc;
            int pos = 0;
            for (SubsetMask w = c; w; w &= w - 1, ++pos) {
                SubsetMask bit = w & -w;
                const PuiseuxScalar& entry = m[rows[size - 1]][cols[std::countr_zero(bit)]];
                if (entry.is_zero()) continue;
                PuiseuxScalar term = entry * memo.at(c ^ bit);
                if ((static_cast<int>(size) - 1 + pos) % 2 == 0)
                    acc += term;
                else
                    acc -= term;
            }
            memo.emplace(c, std::move(acc));
        }
    }
    return memo.at((1u << k) - 1u);
}

}  // namespace detail

/// Pfaffian of the principal submatrix of a skew-symmetric matrix on the
/// index subset S (0-based mask over the matrix rows). Odd |S| gives 0;
/// pf of the empty matrix is 1. Expansion along the smallest index with
/// alternating signs, memoized over subsets.
inline PuiseuxScalar pfaffian(const ScalarMatrix& a, SubsetMask s) {
    detail::check_rectangular(a);
    const std::size_t n = a.size();
    if (a.front().size() != n) throw std::invalid_argument("pfaffian: matrix not square");
    if (!subset_of(s, full_mask(static_cast<int>(n))))
        throw std::invalid_argument("pfaffian: subset outside matrix");
    for (std::size_t i = 0; i < n; ++i) {
        if (!a[i][i].is_zero()) throw std::invalid_argument("pfaffian: nonzero diagonal");
        for (std::size_t j = i + 1; j < n; ++j)
            if (!(a[i][j] == -a[j][i])) throw std::invalid_argument("pfaffian: not skew");
    }
    if (popcount(s) % 2 != 0) return PuiseuxScalar();

    std::map<SubsetMask, PuiseuxScalar> memo;
    auto rec = [&](auto&& self, SubsetMask mask) -> const PuiseuxScalar& {
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        PuiseuxScalar acc;
        if (mask == 0) {
            acc = PuiseuxScalar(1);
        } else {
            int lead = std::countr_zero(mask);
            SubsetMask rest = mask & ~(1u << lead);
            int parity = 0;
            for (SubsetMask w = rest; w; w &= w - 1, ++parity) {
                int j = std::countr_zero(static_cast<SubsetMask>(w & -w));
                const PuiseuxScalar& entry = a[lead][j];
                if (entry.is_zero()) continue;
                PuiseuxScalar term = entry * self(self, rest & ~(1u << j));
                if (parity % 2 == 0)
                    acc += term;
                else
                    acc -= term;
            }
        }
        return memo.emplace(mask, std::move(acc)).first->second;
    };
    return rec(rec, s);
}

/// Exact isotropy test for the rowspace of an n x 2n matrix under the
/// pairing Q(x, y) = sum_i x_i y_{i*} + x_{i*} y_i (columns ordered
/// 1..n, 1*..n*): M Q M^T must vanish identically.
inline bool rowspace_is_isotropic(const ScalarMatrix& m) {
    detail::check_rectangular(m);
    const std::size_t rows = m.size();
    const std::size_t cols = m.front().size();
    if (cols != 2 * rows) throw std::invalid_argument("isotropy: expected n x 2n matrix");
    const std::size_t n = rows;
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = i; j < rows; ++j) {
            PuiseuxScalar q;
            for (std::size_t k = 0; k < n; ++k)
                q += m[i][k] * m[j][k + n] + m[i][k + n] * m[j][k];
            if (!q.is_zero()) return false;
        }
    }
    return true;
}

/// Chart data for an isotropic rowspace: after swapping columns j <-> j*
/// for j in the chart set, the first n columns B become invertible and the
/// row-reduced form is [I | A] with A skew. A is materialized without
/// division as scaled_a = adj(B) * C = det(B) * A, so
/// val pf(A_S) = val pf(scaled_a_S) - (|S|/2) val det(B).
struct WickChart {
    int n = 0;
    SubsetMask swapped = 0;  // the chart set J
    ScalarMatrix scaled_a;   // det(B) * A, skew-symmetric
    PuiseuxScalar det_b;

    TropicalValue pfaffian_valuation(SubsetMask s) const {
        if (popcount(s) % 2 != 0) return TropicalValue::infinity();
        PuiseuxScalar pf = pfaffian(scaled_a, s);
        if (pf.is_zero()) return TropicalValue::infinity();
        Rational v = pf.val().value() - Rational(popcount(s) / 2) * det_b.val().value();
        return TropicalValue(v);
    }
};

namespace detail {

inline ScalarMatrix swap_columns(const ScalarMatrix& m, SubsetMask chart) {
    const std::size_t n = m.size();
    ScalarMatrix out = m;
    for (int j = 0; j < static_cast<int>(n); ++j) {
        if (!(chart & (1u << j))) continue;
        for (std::size_t r = 0; r < n; ++r) std::swap(out[r][j], out[r][j + n]);
    }
    return out;
}

inline std::vector<int> iota_vec(int k) {
    std::vector<int> v(k);
    for (int i = 0; i < k; ++i) v[i] = i;
    return v;
}

}  // namespace detail

/// Builds the chart for a given swap set J, or nullopt when the first n
/// columns stay singular. Throws only on malformed input.
inline std::optional<WickChart> wick_chart(const ScalarMatrix& m, SubsetMask chart_set) {
    detail::check_rectangular(m);
    const int n = static_cast<int>(m.size());
    if (m.front().size() != 2 * m.size())
        throw std::invalid_argument("chart: expected n x 2n matrix");
    if (n > kMaxGroundSize) throw ScaleError("chart: ground set too large");

    ScalarMatrix swapped = detail::swap_columns(m, chart_set);
    std::vector<int> all_rows = detail::iota_vec(n);

    PuiseuxScalar det_b = detail::submatrix_det(swapped, all_rows, all_rows);
    if (det_b.is_zero()) return std::nullopt;

    // adj(B) via cofactors, then scaled_a = adj(B) * C.
    ScalarMatrix adj(n, std::vector<PuiseuxScalar>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            std::vector<int> rows, cols;
            for (int r = 0; r < n; ++r)
                if (r != j) rows.push_back(r);
            for (int c = 0; c < n; ++c)
                if (c != i) cols.push_back(c);
            PuiseuxScalar minor = detail::submatrix_det(swapped, rows, cols);
            adj[i][j] = ((i + j) % 2 == 0) ? minor : -minor;
        }
    }
    WickChart out;
    out.n = n;
    out.swapped = chart_set;
    out.det_b = det_b;
    out.scaled_a.assign(n, std::vector<PuiseuxScalar>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            PuiseuxScalar acc;
            for (int k = 0; k < n; ++k) acc += adj[i][k] * swapped[k][j + n];
            out.scaled_a[i][j] = std::move(acc);
        }

    for (int i = 0; i < n; ++i) {
        if (!out.scaled_a[i][i].is_zero())
            throw std::invalid_argument("chart: reduced matrix is not skew (diagonal)");
        for (int j = i + 1; j < n; ++j)
            if (!(out.scaled_a[i][j] == -out.scaled_a[j][i]))
                throw std::invalid_argument("chart: reduced matrix is not skew");
    }
    return out;
}

/// Deterministic chart selection: greedy column scan with j <-> j* swaps
/// on pivot failure; if the greedy prefix dead-ends, fall back to the
/// smallest valid swap set in (size, mask) order. Throws when the rowspace
/// has rank below n.
inline WickChart select_wick_chart(const ScalarMatrix& m) {
    detail::check_rectangular(m);
    const int n = static_cast<int>(m.size());
    if (m.front().size() != 2 * m.size())
        throw std::invalid_argument("chart: expected n x 2n matrix");

    // Greedy: keep column j when it extends the rank of the kept prefix,
    // otherwise swap to j*.
    SubsetMask greedy = 0;
    {
        int rank = 0;
        std::vector<std::vector<PuiseuxScalar>> ech;
        auto try_add = [&](const std::vector<PuiseuxScalar>& col) {
            std::vector<PuiseuxScalar> red = col;
            for (const auto& row : ech) {
                int lead = -1;
                for (int i = 0; i < n; ++i)
                    if (!row[i].is_zero()) { lead = i; break; }
                if (lead < 0 || red[lead].is_zero()) continue;
                // Cross-multiplied elimination keeps everything in the ring.
                PuiseuxScalar f = red[lead], g = row[lead];
                for (int i = 0; i < n; ++i) red[i] = red[i] * g - row[i] * f;
            }
            for (int i = 0; i < n; ++i)
                if (!red[i].is_zero()) {
                    ech.push_back(std::move(red));
                    return true;
                }
            return false;
        };
        for (int j = 0; j < n; ++j) {
            std::vector<PuiseuxScalar> plain(n), starred(n);
            for (int r = 0; r < n; ++r) {
                plain[r] = m[r][j];
                starred[r] = m[r][j + n];
            }
            if (try_add(plain)) {
                ++rank;
            } else if (try_add(starred)) {
                greedy |= (1u << j);
                ++rank;
            }
        }
        if (rank == n) {
            if (auto chart = wick_chart(m, greedy)) return *chart;
        }
    }

    // Exhaustive fallback in (|J|, mask) order.
    for (int size = 0; size <= n; ++size) {
        for (SubsetMask j = 0; j <= full_mask(n); ++j) {
            if (popcount(j) != size) continue;
            if (auto chart = wick_chart(m, j)) return *chart;
        }
    }
    throw std::invalid_argument("chart: rowspace has rank below n");
}

/// Tropical Wick vector of an isotropic rowspace: p_{[n] \ S} is the
/// valuation of pf(A_{S ^ J}) in the selected chart (infinity on the odd
/// side). Sign factors never matter at the valuation level.
inline TropicalWickVector wick_valuation_from_rowspace(const ScalarMatrix& m) {
    const int n = static_cast<int>(m.size());
    if (!rowspace_is_isotropic(m))
        throw std::invalid_argument("wick valuation: rowspace is not isotropic");
    WickChart chart = select_wick_chart(m);
    std::map<SubsetMask, Rational> entries;
    for (SubsetMask s = 0; s <= full_mask(n); ++s) {
        TropicalValue v = chart.pfaffian_valuation(s ^ chart.swapped);
        if (v.is_finite()) entries.emplace(full_mask(n) & ~s, v.value());
        if (s == full_mask(n)) break;
    }
    return TropicalWickVector(n, std::move(entries));
}

/// Tropical Pluecker vector of a full-rank k x m rowspace: p_S is the
/// valuation of the maximal minor on column set S. When m = 2k the ground
/// set is reported as the signed set J.
inline TropicalPluckerVector plucker_valuation_from_rowspace(const ScalarMatrix& m) {
    detail::check_rectangular(m);
    const int k = static_cast<int>(m.size());
    const int cols = static_cast<int>(m.front().size());
    if (cols > kMaxPluckerGroundSize) throw ScaleError("plucker valuation: too many columns");
    if (k > cols) throw std::invalid_argument("plucker valuation: more rows than columns");
    std::vector<int> all_rows = detail::iota_vec(k);
    std::map<SubsetMask, Rational> entries;
    for (SubsetMask s = 0; s <= full_mask(cols); ++s) {
        if (popcount(s) == k) {
            std::vector<int> col_list;
            for (int c = 0; c < cols; ++c)
                if (s & (1u << c)) col_list.push_back(c);
            PuiseuxScalar d = detail::submatrix_det(m, all_rows, col_list);
            if (!d.is_zero()) entries.emplace(s, d.val().value());
        }
        if (s == full_mask(cols)) break;
    }
    if (entries.empty()) throw std::invalid_argument("plucker valuation: rank below row count");
    return TropicalPluckerVector(cols, std::move(entries), /*signed_ground=*/cols == 2 * k);
}

/// Exact determinant of the k columns S of a k x m matrix (exposed for the
/// worked-example checks).
inline PuiseuxScalar column_minor(const ScalarMatrix& m, SubsetMask s) {
    detail::check_rectangular(m);
    const int k = static_cast<int>(m.size());
    if (popcount(s) != k) throw std::invalid_argument("column_minor: need k columns");
    std::vector<int> col_list;
    for (int c = 0; c < static_cast<int>(m.front().size()); ++c)
        if (s & (1u << c)) col_list.push_back(c);
    return detail::submatrix_det(m, detail::iota_vec(k), col_list);
}

/// Recovery of the defining constraints from Wick data needs the classical
/// sign conventions, which are deliberately out of scope here.
[[noreturn]] inline void recover_constraints(const TropicalWickVector&) {
    throw std::logic_error(
        "recover_constraints: not implemented (classical sign conventions unspecified)");
}

}  // namespace tropwick
