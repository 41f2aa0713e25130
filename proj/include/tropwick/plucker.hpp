#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "tropwick/delta_matroid.hpp"
#include "tropwick/subsets.hpp"
#include "tropwick/tropical.hpp"

namespace tropwick {

// Pluecker vectors live on an arbitrary finite ground set: either [m] or
// the signed set J with elements 1..v unstarred (bits 0..v-1) and starred
// (bits v..2v-1), where m = 2v.
inline constexpr int kMaxPluckerGroundSize = 2 * kMaxGroundSize;

namespace detail {

inline bool equicardinal_support(const std::map<SubsetMask, Rational>& entries, int* rank_out) {
    int r = popcount(entries.begin()->first);
    for (const auto& [s, v] : entries)
        if (popcount(s) != r) return false;
    if (rank_out) *rank_out = r;
    return true;
}

// Classical basis exchange on an equicardinal family.
inline bool matroid_exchange_holds(const std::vector<SubsetMask>& bases) {
    auto is_basis = [&](SubsetMask m) {
        return std::binary_search(bases.begin(), bases.end(), m);
    };
    for (SubsetMask a_set : bases)
        for (SubsetMask b_set : bases)
            for (SubsetMask ta = a_set & ~b_set; ta; ta &= ta - 1) {
                SubsetMask a_bit = ta & -ta;
                bool found = false;
                for (SubsetMask tb = b_set & ~a_set; tb && !found; tb &= tb - 1)
                    if (is_basis(a_set ^ a_bit ^ (tb & -tb))) found = true;
                if (!found) return false;
            }
    return true;
}

}  // namespace detail

/// A tropical Pluecker vector: equicardinal finite support over a ground
/// set of size m. The constructor enforces the equicardinality invariant;
/// whether the full axioms hold is is_tropical_plucker's business.
class TropicalPluckerVector {
public:
    TropicalPluckerVector(int m, std::map<SubsetMask, Rational> finite_entries,
                          bool signed_ground = false)
        : m_(m), signed_(signed_ground), entries_(std::move(finite_entries)) {
        if (m <= 0 || m > kMaxPluckerGroundSize) throw ScaleError("ground set too large");
        if (signed_ && m % 2 != 0)
            throw std::invalid_argument("signed ground set needs even size");
        if (entries_.empty()) throw std::invalid_argument("empty support");
        for (const auto& [s, v] : entries_)
            if (!subset_of(s, full_mask(m))) throw std::invalid_argument("entry outside ground");
        if (!detail::equicardinal_support(entries_, &rank_))
            throw std::invalid_argument("support is not equicardinal");
    }

    int ground_size() const { return m_; }
    bool signed_ground() const { return signed_; }
    int rank() const { return rank_; }
    const std::map<SubsetMask, Rational>& entries() const { return entries_; }

    TropicalValue at(SubsetMask s) const {
        auto it = entries_.find(s);
        return it == entries_.end() ? TropicalValue::infinity() : TropicalValue(it->second);
    }

    std::vector<SubsetMask> support() const {
        std::vector<SubsetMask> out;
        out.reserve(entries_.size());
        for (const auto& [s, v] : entries_) out.push_back(s);
        return out;
    }

    /// p*_S = p_{ground \ S}; rank becomes m - rank.
    TropicalPluckerVector dual() const {
        std::map<SubsetMask, Rational> out;
        for (const auto& [s, v] : entries_) out.emplace(full_mask(m_) & ~s, v);
        return TropicalPluckerVector(m_, std::move(out), signed_);
    }

    friend bool operator==(const TropicalPluckerVector& a, const TropicalPluckerVector& b) {
        return a.m_ == b.m_ && a.entries_ == b.entries_;
    }

private:
    int m_;
    bool signed_;
    int rank_ = 0;
    std::map<SubsetMask, Rational> entries_;
};

/// The 3-term relations alone: for every S of size rank-2 and distinct
/// a,b,c,d outside S, min(p_Sab + p_Scd, p_Sac + p_Sbd, p_Sad + p_Sbc) is
/// attained twice or infinite. (The headline non-example passes this while
/// failing the support condition.)
inline bool three_term_relations_hold(const TropicalPluckerVector& p) {
    const int m = p.ground_size();
    const int r = p.rank();
    if (r < 2) return true;
    const SubsetMask all = full_mask(m);
    for (SubsetMask s = 0; s <= all; ++s) {
        if (popcount(s) != r - 2) {
            if (s == all) break;
            continue;
        }
        std::vector<int> spare;
        for (int i = 0; i < m; ++i)
            if (!(s & (1u << i))) spare.push_back(i);
        const int k = static_cast<int>(spare.size());
        for (int ia = 0; ia < k; ++ia)
            for (int ib = ia + 1; ib < k; ++ib)
                for (int ic = ib + 1; ic < k; ++ic)
                    for (int id = ic + 1; id < k; ++id) {
                        SubsetMask a = 1u << spare[ia], b = 1u << spare[ib];
                        SubsetMask c = 1u << spare[ic], d = 1u << spare[id];
                        std::vector<TropicalValue> terms = {p.at(s | a | b) + p.at(s | c | d),
                                                            p.at(s | a | c) + p.at(s | b | d),
                                                            p.at(s | a | d) + p.at(s | b | c)};
                        if (!min_achieved_twice(terms)) return false;
                    }
        if (s == all) break;
    }
    return true;
}

/// Support forms a classical matroid (equicardinal + basis exchange).
inline bool support_is_matroid(const TropicalPluckerVector& p) {
    return detail::matroid_exchange_holds(p.support());
}

/// Local criterion for tropical Pluecker vectors: matroid support plus the
/// 3-term relations.
inline bool is_tropical_plucker(const TropicalPluckerVector& p) {
    return support_is_matroid(p) && three_term_relations_hold(p);
}

/// Raw-data overload: false (not an error) when the support is not even
/// equicardinal.
inline bool is_tropical_plucker(int m, const std::map<SubsetMask, Rational>& entries) {
    if (entries.empty()) return false;
    if (!detail::equicardinal_support(entries, nullptr)) return false;
    return is_tropical_plucker(TropicalPluckerVector(m, entries));
}

/// A Pluecker circuit or cocircuit vector in T^m with its generating set.
struct PluckerCircuit {
    TropicalVec vec;
    bool cocircuit = false;
    SubsetMask generator = 0;
};

namespace detail {

inline std::optional<TropicalVec> normalized_or_empty(TropicalVec v) {
    std::optional<Rational> least;
    for (const TropicalValue& t : v)
        if (t.is_finite() && (!least || t.value() < *least)) least = t.value();
    if (!least) return std::nullopt;
    for (TropicalValue& t : v) t = t - *least;
    return v;
}

inline SubsetMask vec_support(const TropicalVec& v) {
    SubsetMask m = 0;
    for (std::size_t j = 0; j < v.size(); ++j)
        if (v[j].is_finite()) m |= (1u << j);
    return m;
}

}  // namespace detail

/// Circuits d_T, |T| = rank+1, entries p_{T-i} on i in T; canonical min-0
/// representatives, one per support.
inline std::vector<PluckerCircuit> plucker_circuits(const TropicalPluckerVector& p) {
    const int m = p.ground_size();
    std::map<SubsetMask, PluckerCircuit> by_support;
    for (SubsetMask t = 0; t <= full_mask(m); ++t) {
        if (popcount(t) == p.rank() + 1) {
            TropicalVec vec(m, TropicalValue::infinity());
            for (SubsetMask w = t; w; w &= w - 1) {
                SubsetMask bit = w & -w;
                vec[std::countr_zero(bit)] = p.at(t ^ bit);
            }
            if (auto norm = detail::normalized_or_empty(std::move(vec))) {
                SubsetMask support = detail::vec_support(*norm);
                by_support.emplace(support, PluckerCircuit{std::move(*norm), false, t});
            }
        }
        if (t == full_mask(m)) break;
    }
    std::vector<PluckerCircuit> out;
    for (auto& [s, c] : by_support) out.push_back(std::move(c));
    return out;
}

/// Cocircuits d*_T, |T| = rank-1, entries p_{T+i} on i outside T. (These
/// are the circuits of the dual vector under complement reindexing.)
inline std::vector<PluckerCircuit> plucker_cocircuits(const TropicalPluckerVector& p) {
    const int m = p.ground_size();
    std::map<SubsetMask, PluckerCircuit> by_support;
    if (p.rank() >= 1) {
        for (SubsetMask t = 0; t <= full_mask(m); ++t) {
            if (popcount(t) == p.rank() - 1) {
                TropicalVec vec(m, TropicalValue::infinity());
                for (SubsetMask w = full_mask(m) & ~t; w; w &= w - 1) {
                    SubsetMask bit = w & -w;
                    vec[std::countr_zero(bit)] = p.at(t | bit);
                }
                if (auto norm = detail::normalized_or_empty(std::move(vec))) {
                    SubsetMask support = detail::vec_support(*norm);
                    by_support.emplace(support, PluckerCircuit{std::move(*norm), true, t});
                }
            }
            if (t == full_mask(m)) break;
        }
    }
    std::vector<PluckerCircuit> out;
    for (auto& [s, c] : by_support) out.push_back(std::move(c));
    return out;
}

/// Membership in the tropical linear space L_p: tropical orthogonality to
/// every Pluecker circuit. (Generation goes through the cocircuit hull;
/// membership never does.)
inline bool in_linear_space(const TropicalPluckerVector& p, const TropicalVec& x) {
    if (static_cast<int>(x.size()) != p.ground_size())
        throw std::invalid_argument("dimension mismatch");
    for (const PluckerCircuit& c : plucker_circuits(p))
        if (!tropically_orthogonal(x, c.vec)) return false;
    return true;
}

/// Deterministic pseudo-random tropical combinations of the Pluecker
/// cocircuits; every output lies in L_p.
inline std::vector<TropicalVec> sample_linear_space(const TropicalPluckerVector& p,
                                                    std::uint64_t seed, int count) {
    std::vector<PluckerCircuit> cocircuits = plucker_cocircuits(p);
    if (cocircuits.empty()) return {};
    std::mt19937_64 rng(seed);
    std::vector<TropicalVec> out;
    out.reserve(static_cast<std::size_t>(count));
    // Shift grid: small rationals, kept deterministic across platforms by
    // using raw engine output only.
    const Rational grid[] = {Rational(0), Rational(1), Rational(2), Rational(1, 2),
                             Rational(3)};
    for (int s = 0; s < count; ++s) {
        std::size_t picks = 1 + rng() % 3;
        std::vector<TropicalValue> lambdas;
        std::vector<TropicalVec> vecs;
        for (std::size_t k = 0; k < picks; ++k) {
            const PluckerCircuit& c = cocircuits[rng() % cocircuits.size()];
            lambdas.push_back(TropicalValue(grid[rng() % 5]));
            vecs.push_back(c.vec);
        }
        out.push_back(tropical_combination(lambdas, vecs));
    }
    return out;
}

/// Isotropicality of the tropical linear space of p, for p on the signed
/// ground set J with rank half the ground size: p_{J \ T} = p_{T*} for
/// every half-size subset T of J. Only self-star-incompatible T constrain
/// anything (J \ T equals T* when T is admissible).
inline bool is_isotropical(const TropicalPluckerVector& p) {
    if (!p.signed_ground()) throw std::invalid_argument("isotropical: ground set is not J");
    const int m = p.ground_size();
    const int v = m / 2;
    if (p.rank() != v) throw std::invalid_argument("isotropical: rank must be half the ground");
    const SubsetMask all = full_mask(m);
    for (SubsetMask t = 0; t <= all; ++t) {
        if (popcount(t) == v && !(p.at(all & ~t) == p.at(star_mask(t, v)))) return false;
        if (t == all) break;
    }
    return true;
}

}  // namespace tropwick
