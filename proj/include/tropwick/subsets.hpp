#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace tropwick {

// Subsets of the ground set [n] = {1,..,n} are bitmasks with bit i-1 for
// element i. Subsets of the signed set J = {1,..,n,1*,..,n*} are 2n-bit
// masks: bits 0..n-1 unstarred, bits n..2n-1 starred.
using SubsetMask = std::uint32_t;

inline SubsetMask full_mask(int n) { return (n >= 32) ? ~0u : ((1u << n) - 1u); }

inline int popcount(SubsetMask m) { return std::popcount(m); }

inline bool subset_of(SubsetMask a, SubsetMask b) { return (a & ~b) == 0; }

// Extension of S in [n] to the transversal S | ([n] \ S)* in J.
inline SubsetMask extension(SubsetMask s, int n) {
    return s | ((~s & full_mask(n)) << n);
}

// Restriction of a J-subset to its unstarred part, as a subset of [n].
inline SubsetMask restriction(SubsetMask j_mask, int n) { return j_mask & full_mask(n); }

// The involution on J swapping i and i*.
inline SubsetMask star_mask(SubsetMask j_mask, int n) {
    SubsetMask lo = j_mask & full_mask(n);
    SubsetMask hi = (j_mask >> n) & full_mask(n);
    return (lo << n) | hi;
}

// A J-subset is admissible when it holds at most one of {i, i*} per i.
inline bool is_admissible_mask(SubsetMask j_mask, int n) {
    return ((j_mask & full_mask(n)) & ((j_mask >> n) & full_mask(n))) == 0;
}

inline bool is_transversal_mask(SubsetMask j_mask, int n) {
    return is_admissible_mask(j_mask, n) && popcount(j_mask) == n;
}

// J-mask of the single signed index (element is 1-based).
inline SubsetMask signed_bit(int element, bool starred, int n) {
    return 1u << ((element - 1) + (starred ? n : 0));
}

inline std::vector<int> mask_elements(SubsetMask m) {
    std::vector<int> out;
    for (SubsetMask t = m; t; t &= t - 1) out.push_back(std::countr_zero(t) + 1);
    return out;
}

// All subsets of [n] whose mask lies inside `within`, in mask order.
inline std::vector<SubsetMask> submasks_of(SubsetMask within) {
    std::vector<SubsetMask> out;
    SubsetMask s = 0;
    while (true) {
        out.push_back(s);
        if (s == within) break;
        s = (s - within) & within;
    }
    return out;
}

// Relabels a subset of [n] \ removed to the compacted ground set obtained
// by deleting `removed` and renumbering order-preservingly.
inline SubsetMask compress_mask(SubsetMask s, SubsetMask removed, int n) {
    SubsetMask out = 0;
    int pos = 0;
    for (int i = 0; i < n; ++i) {
        if (removed & (1u << i)) continue;
        if (s & (1u << i)) out |= (1u << pos);
        ++pos;
    }
    return out;
}

}  // namespace tropwick
