#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "tropwick/delta_matroid.hpp"
#include "tropwick/rational.hpp"
#include "tropwick/wick.hpp"

namespace tropwick {

inline constexpr int kMaxSubdivisionGroundSize = 5;

/// A cell of the regular subdivision induced by the heights p: the set of
/// support subsets minimizing p_R + sum_{j in R} v_j, together with the
/// certifying functional v.
struct SubdivisionCell {
    std::vector<SubsetMask> vertices;  // sorted
    std::vector<Rational> functional;  // v, one entry per ground element

    friend bool operator==(const SubdivisionCell& a, const SubdivisionCell& b) {
        return a.vertices == b.vertices;
    }
};

/// Argmin cell of the linear form (v, 1) on the lifted support points;
/// always nonempty.
inline SubdivisionCell cell_at(const TropicalWickVector& p, const std::vector<Rational>& v) {
    const int n = p.n();
    if (static_cast<int>(v.size()) != n) throw std::invalid_argument("cell_at: bad functional");
    SubdivisionCell cell;
    cell.functional = v;
    bool have = false;
    Rational best;
    for (const auto& [s, h] : p.entries()) {
        Rational w = h;
        for (int i = 0; i < n; ++i)
            if (s & (1u << i)) w += v[i];
        if (!have || w < best) {
            have = true;
            best = w;
            cell.vertices.clear();
        }
        if (w == best) cell.vertices.push_back(s);
    }
    return cell;
}

namespace detail {

// Enumerates affinely independent (d+1)-point subsets of the lifted
// support, keeping a row echelon of [e_S | -1 | -p_S] rows along the way.
// Each such subset spans a candidate hyperplane with normal (v, 1); the
// lower-supporting ones expose exactly the maximal cells.
class LowerHullSearch {
public:
    explicit LowerHullSearch(const TropicalWickVector& p) : n_(p.n()) {
        for (const auto& [s, h] : p.entries()) {
            points_.push_back(s);
            heights_.push_back(h);
        }
    }

    std::vector<SubdivisionCell> run() {
        if (points_.size() == 1)
            return {SubdivisionCell{{points_[0]}, std::vector<Rational>(n_, Rational(0))}};

        int affine_dim = affine_dimension();
        echelon_.clear();
        extend(0, affine_dim + 1);

        std::vector<SubdivisionCell> out;
        out.reserve(cells_.size());
        std::size_t covered = 0;
        std::vector<bool> seen(points_.size(), false);
        for (auto& [verts, v] : cells_) {
            for (SubsetMask s : verts) {
                auto it = std::lower_bound(points_.begin(), points_.end(), s);
                std::size_t idx = static_cast<std::size_t>(it - points_.begin());
                if (!seen[idx]) {
                    seen[idx] = true;
                    ++covered;
                }
            }
            out.push_back(SubdivisionCell{verts, v});
        }
        if (covered != points_.size())
            throw std::logic_error("lower hull: cells do not cover the support");
        return out;
    }

private:
    using Row = std::vector<Rational>;  // n coords, the -1 column, rhs -p

    Row point_row(std::size_t idx, bool with_rhs) const {
        Row r(n_ + 2, Rational(0));
        for (int i = 0; i < n_; ++i) r[i] = Rational((points_[idx] >> i) & 1u);
        r[n_] = -1;
        r[n_ + 1] = with_rhs ? Rational(-heights_[idx]) : Rational(0);
        return r;
    }

    // Reduces a row against the echelon; true when a nonzero coefficient
    // survives (the point is affinely independent of the chosen ones).
    bool reduce(Row& row) const {
        for (const auto& [pivot_col, pivot_row] : echelon_) {
            if (row[pivot_col] == 0) continue;
            Rational f = row[pivot_col];
            for (int j = 0; j <= n_ + 1; ++j) row[j] -= f * pivot_row[j];
        }
        for (int j = 0; j <= n_; ++j)
            if (row[j] != 0) return true;
        return false;
    }

    void push(Row row) {
        int col = 0;
        while (row[col] == 0) ++col;
        Rational inv = 1 / row[col];
        for (auto& v : row) v *= inv;
        echelon_.emplace_back(col, std::move(row));
    }

    int affine_dimension() {
        echelon_.clear();
        int rank = 0;
        for (std::size_t i = 0; i < points_.size(); ++i) {
            Row r = point_row(i, /*with_rhs=*/false);
            if (reduce(r)) {
                push(std::move(r));
                ++rank;
            }
        }
        echelon_.clear();
        return rank - 1;
    }

    void extend(std::size_t next, int needed) {
        if (needed == 0) {
            emit();
            return;
        }
        if (points_.size() - next < static_cast<std::size_t>(needed)) return;
        for (std::size_t i = next; i < points_.size(); ++i) {
            Row r = point_row(i, /*with_rhs=*/true);
            if (!reduce(r)) continue;
            auto saved = echelon_.size();
            push(std::move(r));
            chosen_.push_back(i);
            extend(i + 1, needed - 1);
            chosen_.pop_back();
            echelon_.resize(saved);
        }
    }

    // Solves for (v, c) with free variables zero, keeps lower-supporting
    // functionals, records the argmin vertex set.
    void emit() {
        std::vector<Rational> sol(n_ + 1, Rational(0));
        for (auto it = echelon_.rbegin(); it != echelon_.rend(); ++it) {
            const auto& [col, row] = *it;
            Rational v = row[n_ + 1];
            for (int j = col + 1; j <= n_; ++j) v -= row[j] * sol[j];
            sol[col] = v;
        }
        std::vector<Rational> v(sol.begin(), sol.begin() + n_);

        auto value_at = [&](std::size_t i) {
            Rational w = heights_[i];
            for (int j = 0; j < n_; ++j)
                if (points_[i] & (1u << j)) w += v[j];
            return w;
        };
        Rational plane_value = value_at(chosen_.front());
        std::vector<SubsetMask> argmin;
        for (std::size_t i = 0; i < points_.size(); ++i) {
            Rational w = value_at(i);
            if (w < plane_value) return;  // not lower-supporting
            if (w == plane_value) argmin.push_back(points_[i]);
        }
        std::sort(argmin.begin(), argmin.end());
        cells_.emplace(std::move(argmin), std::move(v));
    }

    int n_;
    std::vector<SubsetMask> points_;
    std::vector<Rational> heights_;
    std::vector<std::pair<int, Row>> echelon_;
    std::vector<std::size_t> chosen_;
    std::map<std::vector<SubsetMask>, std::vector<Rational>> cells_;
};

}  // namespace detail

/// All maximal cells of the regular subdivision induced by p, by exact
/// enumeration of candidate lower-supporting hyperplanes through affinely
/// spanning subsets of the lifted points. Every support point lies on the
/// lower hull here (the projections are distinct 0/1 points), which the
/// search asserts.
inline std::vector<SubdivisionCell> maximal_cells(const TropicalWickVector& p) {
    if (p.n() > kMaxSubdivisionGroundSize)
        throw ScaleError("subdivisions support n <= 5");
    return detail::LowerHullSearch(p).run();
}

/// The induced subdivision is an even Delta-matroid subdivision exactly
/// when every maximal cell's vertex set satisfies the even exchange axiom
/// (the one-cell case is the whole-polytope check; on 0/1 vertex sets an
/// offending long edge of the ambient polytope is never subdivided, so it
/// surfaces inside some maximal cell).
inline bool is_even_dm_subdivision(const TropicalWickVector& p) {
    for (const SubdivisionCell& cell : maximal_cells(p))
        if (!is_even_delta_matroid(p.n(), cell.vertices)) return false;
    return true;
}

}  // namespace tropwick
