#pragma once

#include <vector>

#include "tropwick/delta_matroid.hpp"
#include "tropwick/simplex.hpp"
#include "tropwick/subsets.hpp"

namespace tropwick {

struct PolytopeEdge {
    SubsetMask a = 0;
    SubsetMask b = 0;
    std::vector<int> diff;  // e_a - e_b, entries in {-1, 0, 1}

    // Type-D edge shape: +-e_i +- e_j with i != j.
    bool is_short() const { return popcount(a ^ b) == 2; }
};

/// Certified edges of the 0/1 polytope spanned by the indicator vectors of
/// `sets`. The pair (u, v) is an edge exactly when no convex combination of
/// the remaining vertices can share weight at the midpoint (u+v)/2, which
/// is an exact LP: maximize total weight off {u, v} subject to the
/// combination hitting the midpoint.
inline std::vector<PolytopeEdge> polytope_edge_vectors(int n,
                                                       const std::vector<SubsetMask>& sets) {
    if (n > kMaxGroundSize) throw ScaleError("polytope_edge_vectors: ground set too large");
    std::vector<SubsetMask> verts = detail::sorted_unique(sets);
    std::vector<PolytopeEdge> out;
    const std::size_t v = verts.size();
    for (std::size_t p = 0; p < v; ++p) {
        for (std::size_t q = p + 1; q < v; ++q) {
            // Constraints: sum_w 2*lambda_w e_w = e_p + e_q, sum_w lambda_w = 1.
            std::vector<std::vector<Rational>> a(n + 1, std::vector<Rational>(v, Rational(0)));
            std::vector<Rational> b(n + 1);
            for (int i = 0; i < n; ++i) {
                for (std::size_t w = 0; w < v; ++w)
                    if (verts[w] & (1u << i)) a[i][w] = 2;
                b[i] = Rational(((verts[p] >> i) & 1u) + ((verts[q] >> i) & 1u));
            }
            for (std::size_t w = 0; w < v; ++w) a[n][w] = 1;
            b[n] = 1;
            std::vector<Rational> c(v, Rational(1));
            c[p] = 0;
            c[q] = 0;
            LpResult lp = solve_lp_max(a, b, c);
            if (lp.status != LpResult::Optimal)
                throw std::logic_error("edge oracle: midpoint LP not optimal");
            if (lp.value != 0) continue;
            PolytopeEdge e;
            e.a = verts[q];
            e.b = verts[p];
            e.diff.resize(n);
            for (int i = 0; i < n; ++i)
                e.diff[i] = int((e.a >> i) & 1u) - int((e.b >> i) & 1u);
            out.push_back(std::move(e));
        }
    }
    return out;
}

inline std::vector<PolytopeEdge> polytope_edge_vectors(const EvenDeltaMatroid& m) {
    return polytope_edge_vectors(m.n(), m.bases());
}

}  // namespace tropwick
