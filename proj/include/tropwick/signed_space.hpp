#pragma once

#include <stdexcept>

#include "tropwick/subsets.hpp"
#include "tropwick/tropical.hpp"

namespace tropwick {

/// An index into the signed set J: an element of [n], plain or starred.
/// The involution * swaps starred, so idx.star().star() == idx.
struct SignedIndex {
    int element = 1;  // 1-based
    bool starred = false;

    SignedIndex star() const { return {element, !starred}; }
    int coord(int n) const { return (element - 1) + (starred ? n : 0); }

    friend bool operator==(const SignedIndex&, const SignedIndex&) = default;
};

/// A vector in T^J with coordinates ordered 1..n, 1*..n*.
class SignedVector {
public:
    explicit SignedVector(int n)
        : n_(n), coords_(2 * static_cast<std::size_t>(n), TropicalValue::infinity()) {
        if (n <= 0) throw std::invalid_argument("SignedVector: n must be positive");
    }
    SignedVector(int n, TropicalVec coords) : n_(n), coords_(std::move(coords)) {
        if (n <= 0 || coords_.size() != 2 * static_cast<std::size_t>(n))
            throw std::invalid_argument("SignedVector: bad coordinate count");
    }

    int n() const { return n_; }
    const TropicalVec& coords() const { return coords_; }

    const TropicalValue& operator[](SignedIndex i) const { return coords_[i.coord(n_)]; }
    const TropicalValue& at(int coord) const { return coords_.at(coord); }
    void set(SignedIndex i, TropicalValue v) { coords_[i.coord(n_)] = std::move(v); }
    void set(int coord, TropicalValue v) { coords_.at(coord) = std::move(v); }

    SubsetMask support() const {
        SubsetMask m = 0;
        for (std::size_t j = 0; j < coords_.size(); ++j)
            if (coords_[j].is_finite()) m |= (1u << j);
        return m;
    }

    /// Admissible: no i has both x_i and x_{i*} finite.
    bool is_admissible() const { return is_admissible_mask(support(), n_); }

    /// Swaps the i and i* coordinates.
    SignedVector reflection() const {
        SignedVector out(n_);
        for (int i = 0; i < n_; ++i) {
            out.coords_[i] = coords_[i + n_];
            out.coords_[i + n_] = coords_[i];
        }
        return out;
    }

    friend bool operator==(const SignedVector& a, const SignedVector& b) {
        return a.n_ == b.n_ && a.coords_ == b.coords_;
    }

private:
    int n_;
    TropicalVec coords_;
};

inline bool tropically_orthogonal(const SignedVector& x, const SignedVector& y) {
    if (x.n() != y.n()) throw std::invalid_argument("dimension mismatch");
    return tropically_orthogonal(x.coords(), y.coords());
}

}  // namespace tropwick
