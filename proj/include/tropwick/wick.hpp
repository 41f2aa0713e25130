#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tropwick/delta_matroid.hpp"
#include "tropwick/signed_space.hpp"
#include "tropwick/subsets.hpp"
#include "tropwick/tropical.hpp"

namespace tropwick {

// Wick-vector machinery also hosts Pluecker vectors over the signed set J,
// so the ground set may reach 2 * kMaxGroundSize.
inline constexpr int kMaxWickGroundSize = 2 * kMaxGroundSize;

/// A vector in T^(2^[n]) with finite support stored explicitly: a
/// valuated Delta-matroid candidate. Construction rejects the all-infinity
/// vector; parity and the exchange structure of the support are what the
/// relation checks below decide, not construction-time invariants.
class TropicalWickVector {
public:
    TropicalWickVector(int n, std::map<SubsetMask, Rational> finite_entries)
        : n_(n), entries_(std::move(finite_entries)) {
        if (n < 0 || n > kMaxWickGroundSize) throw ScaleError("ground set too large");
        if (entries_.empty()) throw std::invalid_argument("empty support");
        for (const auto& [s, v] : entries_)
            if (!subset_of(s, full_mask(n))) throw std::invalid_argument("entry outside [n]");
    }

    int n() const { return n_; }

    TropicalValue at(SubsetMask s) const {
        auto it = entries_.find(s);
        return it == entries_.end() ? TropicalValue::infinity() : TropicalValue(it->second);
    }

    const std::map<SubsetMask, Rational>& entries() const { return entries_; }

    std::vector<SubsetMask> support() const {
        std::vector<SubsetMask> out;
        out.reserve(entries_.size());
        for (const auto& [s, v] : entries_) out.push_back(s);
        return out;
    }

    bool support_in_single_parity() const {
        int parity = popcount(entries_.begin()->first) % 2;
        for (const auto& [s, v] : entries_)
            if (popcount(s) % 2 != parity) return false;
        return true;
    }

    /// p*_S = p_{[n] \ S}.
    TropicalWickVector dual() const {
        std::map<SubsetMask, Rational> out;
        for (const auto& [s, v] : entries_) out.emplace(full_mask(n_) & ~s, v);
        return TropicalWickVector(n_, std::move(out));
    }

    /// Extension view: value at a transversal of J.
    TropicalValue at_transversal(SubsetMask t_bar) const {
        return at(restriction(t_bar, n_));
    }

    friend bool operator==(const TropicalWickVector& a, const TropicalWickVector& b) {
        return a.n_ == b.n_ && a.entries_ == b.entries_;
    }

private:
    int n_;
    std::map<SubsetMask, Rational> entries_;
};

inline TropicalWickVector dual_wick(const TropicalWickVector& p) { return p.dual(); }

/// Ground-truth relation check: for every pair S, T the minimum over
/// i in S^T of p_{S^i} + p_{T^i} is attained at least twice or infinite.
/// Quadratic in 2^n; the local criterion below is the fast path.
inline bool check_wick_full(const TropicalWickVector& p) {
    const int n = p.n();
    const SubsetMask all = full_mask(n);
    std::vector<TropicalValue> terms;
    for (SubsetMask s = 0; s <= all; ++s) {
        for (SubsetMask t = s; t <= all; ++t) {
            SubsetMask diff = s ^ t;
            if (diff == 0) continue;
            terms.clear();
            for (SubsetMask w = diff; w; w &= w - 1) {
                SubsetMask bit = w & -w;
                terms.push_back(p.at(s ^ bit) + p.at(t ^ bit));
            }
            if (!min_achieved_twice(terms)) return false;
        }
        if (s == all) break;
    }
    return true;
}

/// Local criterion: the support is an even Delta-matroid and the four-term
/// relations hold (for every S and distinct a,b,c,d outside S, both
/// displayed minima are attained twice or infinite).
inline bool check_wick_local(const TropicalWickVector& p) {
    const int n = p.n();
    if (!p.support_in_single_parity()) return false;  // necessary, cheap
    if (!is_even_delta_matroid(n, p.support())) return false;
    const SubsetMask all = full_mask(n);
    for (SubsetMask s = 0; s <= all; ++s) {
        std::vector<int> spare;
        for (int i = 0; i < n; ++i)
            if (!(s & (1u << i))) spare.push_back(i);
        const int k = static_cast<int>(spare.size());
        for (int ia = 0; ia < k; ++ia)
            for (int ib = ia + 1; ib < k; ++ib)
                for (int ic = ib + 1; ic < k; ++ic)
                    for (int id = ic + 1; id < k; ++id) {
                        SubsetMask a = 1u << spare[ia], b = 1u << spare[ib];
                        SubsetMask c = 1u << spare[ic], d = 1u << spare[id];
                        std::vector<TropicalValue> even_terms = {
                            p.at(s | a | b | c | d) + p.at(s),
                            p.at(s | a | b) + p.at(s | c | d),
                            p.at(s | a | c) + p.at(s | b | d),
                            p.at(s | a | d) + p.at(s | b | c)};
                        if (!min_achieved_twice(even_terms)) return false;
                        std::vector<TropicalValue> odd_terms = {
                            p.at(s | a | b | c) + p.at(s | d),
                            p.at(s | a | b | d) + p.at(s | c),
                            p.at(s | a | c | d) + p.at(s | b),
                            p.at(s | b | c | d) + p.at(s | a)};
                        if (!min_achieved_twice(odd_terms)) return false;
                    }
        if (s == all) break;
    }
    return true;
}

/// The even Delta-matroid underlying a valid tropical Wick vector.
inline EvenDeltaMatroid support_matroid(const TropicalWickVector& p) {
    return EvenDeltaMatroid(p.n(), p.support());
}

/// A circuit or cocircuit vector of a tropical Wick vector, remembering
/// the generating transversal.
struct WickCircuit {
    SignedVector vec;
    bool cocircuit = false;
    SubsetMask transversal = 0;  // as the restriction T of T-bar to [n]
};

namespace detail {

inline std::optional<WickCircuit> circuit_like_at(const TropicalWickVector& p, SubsetMask t,
                                                  bool cocircuit) {
    const int n = p.n();
    if (!subset_of(t, full_mask(n))) throw std::invalid_argument("subset outside [n]");
    SubsetMask t_bar = extension(t, n);
    SignedVector vec(n);
    bool any = false;
    for (int coord = 0; coord < 2 * n; ++coord) {
        bool inside = (t_bar >> coord) & 1u;
        if (inside == cocircuit) continue;
        SubsetMask pair = (1u << coord) | (coord < n ? (1u << (coord + n)) : (1u << (coord - n)));
        TropicalValue v = p.at_transversal(t_bar ^ pair);
        if (v.is_finite()) any = true;
        vec.set(coord, v);
    }
    if (!any) return std::nullopt;
    return WickCircuit{std::move(vec), cocircuit, t};
}

inline SignedVector normalized_min_zero(const SignedVector& x) {
    std::optional<Rational> least;
    for (const TropicalValue& v : x.coords())
        if (v.is_finite() && (!least || v.value() < *least)) least = v.value();
    if (!least) return x;
    SignedVector out(x.n());
    for (int c = 0; c < 2 * x.n(); ++c) out.set(c, x.at(c) - *least);
    return out;
}

inline std::vector<WickCircuit> all_circuit_like(const TropicalWickVector& p, bool cocircuit) {
    std::map<SubsetMask, WickCircuit> by_support;
    for (SubsetMask t = 0; t <= full_mask(p.n()); ++t) {
        auto c = circuit_like_at(p, t, cocircuit);
        if (!c) continue;
        c->vec = normalized_min_zero(c->vec);
        by_support.emplace(c->vec.support(), std::move(*c));
    }
    std::vector<WickCircuit> out;
    out.reserve(by_support.size());
    for (auto& [s, c] : by_support) out.push_back(std::move(c));
    return out;
}

}  // namespace detail

/// The circuit vector c_T: value p-bar at T-bar ^ {i, i*} on coordinates i
/// inside T-bar, infinity elsewhere; nullopt when its support is empty.
/// Values are the raw lookups (not normalized).
inline std::optional<WickCircuit> circuit_at(const TropicalWickVector& p, SubsetMask t) {
    return detail::circuit_like_at(p, t, false);
}

/// The cocircuit vector c*_T: same lookups on coordinates outside T-bar.
inline std::optional<WickCircuit> cocircuit_at(const TropicalWickVector& p, SubsetMask t) {
    return detail::circuit_like_at(p, t, true);
}

/// Canonical circuits, one per support, minimum entry normalized to 0
/// (circuits with equal support agree up to a tropical scalar), sorted by
/// support mask.
inline std::vector<WickCircuit> all_circuits(const TropicalWickVector& p) {
    return detail::all_circuit_like(p, false);
}

inline std::vector<WickCircuit> all_cocircuits(const TropicalWickVector& p) {
    return detail::all_circuit_like(p, true);
}

/// Cocycle test against a precomputed circuit list (hot loops enumerate
/// many candidate vectors against one p).
inline bool is_cocycle_against(const std::vector<WickCircuit>& circuits,
                               const SignedVector& x) {
    if (!x.is_admissible()) return false;
    for (const WickCircuit& c : circuits)
        if (!tropically_orthogonal(x, c.vec)) return false;
    return true;
}

/// Cocycle: an admissible vector tropically orthogonal to every circuit.
inline bool is_cocycle(const TropicalWickVector& p, const SignedVector& x) {
    if (x.n() != p.n()) throw std::invalid_argument("dimension mismatch");
    return is_cocycle_against(all_circuits(p), x);
}

struct CocycleTerm {
    Rational shift;        // tropical scalar applied to the cocircuit
    WickCircuit cocircuit; // canonical (min-0) representative
};

/// Writes a cocycle x as a tropical combination of cocircuits, one term
/// per support index j, following the hull construction: pick a basis B of
/// the dual support matroid with j in ext(B), maximizing |ext(B) & supp(x)|
/// and then minimizing p*_B + sum of x over supp(x) & ext(B) (ties broken
/// by smallest ext(B) mask); the cocircuit at ext(B) ^ {k,k*} shifted so
/// its j-entry equals x_j dominates x and the combination reproduces it.
inline std::vector<CocycleTerm> cocycle_decompose(const TropicalWickVector& p,
                                                  const SignedVector& x) {
    const int n = p.n();
    if (x.support() == 0) throw std::invalid_argument("decompose: empty support");
    if (!is_cocycle(p, x)) throw std::invalid_argument("decompose: not a cocycle");

    const TropicalWickVector pd = p.dual();
    EvenDeltaMatroid dual_matroid = support_matroid(pd);
    const SubsetMask xsupp = x.support();

    std::vector<WickCircuit> canon = all_cocircuits(p);
    auto canonical_for = [&](SubsetMask supp) -> const WickCircuit& {
        for (const WickCircuit& c : canon)
            if (c.vec.support() == supp) return c;
        throw std::logic_error("decompose: constructed vector is not a known cocircuit");
    };

    std::vector<CocycleTerm> terms;
    std::vector<TropicalValue> lambdas;
    std::vector<TropicalVec> vecs;
    for (int j = 0; j < 2 * n; ++j) {
        if (x.at(j).is_infinite()) continue;
        SubsetMask j_bit = 1u << j;
        SubsetMask j_pair = j_bit | (j < n ? (j_bit << n) : (j_bit >> n));

        SignedVector d_j(n);
        if (!dual_matroid.is_independent(j_bit)) {
            // {j} is a cocircuit of the support matroid: the unit-support
            // cocircuit pinned at x_j.
            d_j.set(j, x.at(j));
        } else {
            // Select the basis of the dual matroid per the construction.
            bool have = false;
            SubsetMask best_ext = 0;
            int best_overlap = -1;
            Rational best_weight;
            for (SubsetMask b : dual_matroid.bases()) {
                SubsetMask bext = extension(b, n);
                if (!(bext & j_bit)) continue;
                int overlap = popcount(bext & xsupp);
                Rational weight = pd.at(b).value();
                for (int l = 0; l < 2 * n; ++l)
                    if ((bext >> l) & 1u && x.at(l).is_finite()) weight += x.at(l).value();
                if (!have || overlap > best_overlap ||
                    (overlap == best_overlap && weight < best_weight) ||
                    (overlap == best_overlap && weight == best_weight && bext < best_ext)) {
                    have = true;
                    best_ext = bext;
                    best_overlap = overlap;
                    best_weight = weight;
                }
            }
            if (!have) throw std::logic_error("decompose: no dual basis through j");

            // Circuit at (J \ ext(B)) ^ {j, j*}; orthogonality with x picks
            // the partner index k.
            SubsetMask comp = full_mask(2 * n) & ~best_ext;
            SubsetMask circ_bar = comp ^ j_pair;
            auto c_j = circuit_at(p, restriction(circ_bar, n));
            if (!c_j) throw std::logic_error("decompose: empty circuit in construction");
            int k = -1;
            TropicalValue best = TropicalValue::infinity();
            for (int l = 0; l < 2 * n; ++l) {
                if (l == j) continue;
                TropicalValue t = x.at(l) + c_j->vec.at(l);
                if (t.is_infinite()) continue;
                if (k == -1 || t < best) {
                    best = t;
                    k = l;
                }
            }
            TropicalValue at_j = x.at(j) + c_j->vec.at(j);
            if (k < 0 || !(best <= at_j))
                throw std::logic_error("decompose: orthogonality partner missing");

            SubsetMask k_bit = 1u << k;
            SubsetMask k_pair = k_bit | (k < n ? (k_bit << n) : (k_bit >> n));
            auto cstar = cocircuit_at(p, restriction(comp ^ k_pair, n));
            if (!cstar || cstar->vec.at(j).is_infinite())
                throw std::logic_error("decompose: cocircuit misses j");
            Rational delta = cstar->vec.at(j).value() - x.at(j).value();
            for (int l = 0; l < 2 * n; ++l) d_j.set(l, cstar->vec.at(l) - delta);
        }

        const WickCircuit& rep = canonical_for(d_j.support());
        // d_j = shift + canonical representative.
        Rational shift = d_j.at(j).value() - rep.vec.at(j).value();
        for (int l = 0; l < 2 * n; ++l)
            if (!(d_j.at(l) == rep.vec.at(l) + TropicalValue(shift)))
                throw std::logic_error("decompose: scalar mismatch against canonical cocircuit");
        terms.push_back(CocycleTerm{shift, rep});
        lambdas.push_back(TropicalValue(shift));
        vecs.push_back(rep.vec.coords());
    }

    if (!(SignedVector(n, tropical_combination(lambdas, vecs)) == x))
        throw std::logic_error("decompose: combination does not reproduce the cocycle");
    return terms;
}

/// The canonical valuated structure of an even Delta-matroid: p_T is minus
/// the rank of the extension of T for |T| even, infinity for |T| odd. The
/// result always satisfies the full relation check.
inline TropicalWickVector wick_from_rank(const EvenDeltaMatroid& m) {
    std::map<SubsetMask, Rational> entries;
    for (SubsetMask t = 0; t <= full_mask(m.n()); ++t) {
        if (popcount(t) % 2 != 0) {
            if (t == full_mask(m.n())) break;
            continue;
        }
        entries.emplace(t, Rational(-m.rank(extension(t, m.n()))));
        if (t == full_mask(m.n())) break;
    }
    return TropicalWickVector(m.n(), std::move(entries));
}

/// The 0/infinity vector supported on the bases of an even Delta-matroid.
inline TropicalWickVector indicator_wick(const EvenDeltaMatroid& m) {
    std::map<SubsetMask, Rational> entries;
    for (SubsetMask b : m.bases()) entries.emplace(b, Rational(0));
    return TropicalWickVector(m.n(), std::move(entries));
}

}  // namespace tropwick
