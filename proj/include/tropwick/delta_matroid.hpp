#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "tropwick/signed_space.hpp"
#include "tropwick/subsets.hpp"

namespace tropwick {

inline constexpr int kMaxGroundSize = 6;

namespace detail {

// Symmetric exchange axiom. With require_distinct the exchange partner b
// must differ from a (the even axiom).
inline bool exchange_axiom_holds(std::span<const SubsetMask> bases, bool require_distinct) {
    if (bases.empty()) return false;
    auto is_basis = [&](SubsetMask m) {
        return std::binary_search(bases.begin(), bases.end(), m);
    };
    for (SubsetMask a_set : bases) {
        for (SubsetMask b_set : bases) {
            SubsetMask diff = a_set ^ b_set;
            for (SubsetMask ta = diff; ta; ta &= ta - 1) {
                SubsetMask a_bit = ta & -ta;
                bool found = false;
                for (SubsetMask tb = diff; tb && !found; tb &= tb - 1) {
                    SubsetMask b_bit = tb & -tb;
                    if (require_distinct && b_bit == a_bit) continue;
                    // {a, b} is a set: b = a flips a alone.
                    if (is_basis(a_set ^ (a_bit | b_bit))) found = true;
                }
                if (!found) return false;
            }
        }
    }
    return true;
}

inline std::vector<SubsetMask> sorted_unique(std::vector<SubsetMask> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace detail

/// Symmetric exchange axiom with b = a allowed. The pure predicates also
/// serve ground sets as large as the signed set J, hence the looser guard.
inline bool is_delta_matroid(int n, std::vector<SubsetMask> bases) {
    if (n < 0 || n > 2 * kMaxGroundSize) throw ScaleError("ground set too large");
    return detail::exchange_axiom_holds(detail::sorted_unique(std::move(bases)), false);
}

/// Symmetric exchange axiom with b != a enforced; equivalently all bases
/// share cardinality parity on top of the plain axiom.
inline bool is_even_delta_matroid(int n, std::vector<SubsetMask> bases) {
    if (n < 0 || n > 2 * kMaxGroundSize) throw ScaleError("ground set too large");
    return detail::exchange_axiom_holds(detail::sorted_unique(std::move(bases)), true);
}

/// An even Delta-matroid on ground set [n], stored as its sorted basis
/// bitmasks. Construction validates the even exchange axiom.
class EvenDeltaMatroid {
public:
    EvenDeltaMatroid(int n, std::vector<SubsetMask> bases)
        : n_(n), bases_(detail::sorted_unique(std::move(bases))) {
        if (n < 0 || n > kMaxGroundSize) throw ScaleError("ground set too large");
        for (SubsetMask b : bases_)
            if (!subset_of(b, full_mask(n))) throw std::invalid_argument("basis outside [n]");
        if (!detail::exchange_axiom_holds(bases_, true))
            throw std::invalid_argument("not an even Delta-matroid");
    }

    // For internal construction of results that are even by construction
    // (duals, twists, minors, enumeration output).
    struct Unchecked {};
    EvenDeltaMatroid(int n, std::vector<SubsetMask> bases, Unchecked)
        : n_(n), bases_(detail::sorted_unique(std::move(bases))) {}

    int n() const { return n_; }
    const std::vector<SubsetMask>& bases() const { return bases_; }

    bool is_basis(SubsetMask m) const {
        return std::binary_search(bases_.begin(), bases_.end(), m);
    }

    friend bool operator==(const EvenDeltaMatroid& a, const EvenDeltaMatroid& b) {
        return a.n_ == b.n_ && a.bases_ == b.bases_;
    }

    /// Dual: bases are the complements [n] \ B.
    EvenDeltaMatroid dual() const { return twist(full_mask(n_)); }

    /// Twist by D: bases become B symmetric-difference D. The exchange
    /// structure is preserved, so the result is again even.
    EvenDeltaMatroid twist(SubsetMask d) const {
        std::vector<SubsetMask> out;
        out.reserve(bases_.size());
        for (SubsetMask b : bases_) out.push_back(b ^ d);
        return EvenDeltaMatroid(n_, std::move(out), Unchecked{});
    }

    /// Contraction of S: keep bases maximizing |B & S|, strip S, relabel
    /// [n] \ S order-preservingly.
    EvenDeltaMatroid contraction(SubsetMask s) const { return minor_(s, /*maximize=*/true); }

    /// Deletion of S: keep bases minimizing |B & S|, strip S, relabel.
    EvenDeltaMatroid deletion(SubsetMask s) const { return minor_(s, /*maximize=*/false); }

    /// Rank of an admissible J-subset: max over bases of |ext(B) & A|.
    int rank(SubsetMask admissible) const {
        if (!is_admissible_mask(admissible, n_))
            throw std::invalid_argument("rank: subset is not admissible");
        int best = 0;
        for (SubsetMask b : bases_)
            best = std::max(best, popcount(extension(b, n_) & admissible));
        return best;
    }

    /// S in J is independent when it sits inside some extended basis.
    bool is_independent(SubsetMask j_subset) const {
        for (SubsetMask b : bases_)
            if (subset_of(j_subset, extension(b, n_))) return true;
        return false;
    }

    /// Circuits: minimal admissible dependent subsets of J, enumerated by
    /// increasing size. (The fundamental-circuit generator below serves
    /// as an independent cross-check.)
    std::vector<SubsetMask> circuits() const {
        std::vector<SubsetMask> admissible_by_size[2 * kMaxGroundSize + 1];
        for (SubsetMask m = 0; m <= full_mask(2 * n_); ++m)
            if (is_admissible_mask(m, n_)) admissible_by_size[popcount(m)].push_back(m);
        std::vector<SubsetMask> out;
        for (int size = 1; size <= n_; ++size) {
            for (SubsetMask m : admissible_by_size[size]) {
                if (is_independent(m)) continue;
                bool minimal = true;
                for (SubsetMask t = m; t && minimal; t &= t - 1)
                    if (!is_independent(m ^ (t & -t))) minimal = false;
                if (minimal) out.push_back(m);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<SubsetMask> cocircuits() const { return dual().circuits(); }

    /// The unique circuit inside ext(B) + j, for a basis B and j outside
    /// ext(B): { i in ext(B) : ext(B) ^ {j,j*,i,i*} is an extended basis } + j.
    SubsetMask fundamental_circuit(SubsetMask basis, SignedIndex j) const {
        if (!is_basis(basis)) throw std::invalid_argument("fundamental_circuit: not a basis");
        SubsetMask bext = extension(basis, n_);
        SubsetMask jm = signed_bit(j.element, j.starred, n_);
        SubsetMask jm_pair = jm | signed_bit(j.element, !j.starred, n_);
        if (bext & jm) throw std::invalid_argument("fundamental_circuit: j lies in ext(B)");
        SubsetMask circuit = jm;
        for (SubsetMask t = bext; t; t &= t - 1) {
            SubsetMask i_bit = t & -t;
            int coord = std::countr_zero(i_bit);
            SubsetMask i_pair = i_bit | (coord < n_ ? (i_bit << n_) : (i_bit >> n_));
            // {j, j*, i, i*} as a set: if i = j* the two pairs coincide.
            SubsetMask candidate = bext ^ (jm_pair | i_pair);
            if (is_transversal_mask(candidate, n_) && is_basis(restriction(candidate, n_)))
                circuit |= i_bit;
        }
        return circuit;
    }

    /// S is a cycle when it is admissible and equals a union of circuits.
    /// Since circuits contained in S stay contained in their union, it is
    /// enough to check that the circuits inside S cover S.
    bool is_cycle(SubsetMask j_subset) const {
        if (!is_admissible_mask(j_subset, n_)) return false;
        SubsetMask covered = 0;
        for (SubsetMask c : circuits())
            if (subset_of(c, j_subset)) covered |= c;
        return covered == j_subset;
    }

private:
    EvenDeltaMatroid minor_(SubsetMask s, bool maximize) const {
        if (!subset_of(s, full_mask(n_))) throw std::invalid_argument("minor: set outside [n]");
        int best = maximize ? -1 : n_ + 1;
        for (SubsetMask b : bases_) {
            int k = popcount(b & s);
            best = maximize ? std::max(best, k) : std::min(best, k);
        }
        std::vector<SubsetMask> out;
        for (SubsetMask b : bases_)
            if (popcount(b & s) == best) out.push_back(compress_mask(b & ~s, s, n_));
        return EvenDeltaMatroid(n_ - popcount(s), std::move(out), Unchecked{});
    }

    int n_;
    std::vector<SubsetMask> bases_;
};

}  // namespace tropwick
