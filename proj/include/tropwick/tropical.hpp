#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tropwick/rational.hpp"

namespace tropwick {

/// Min-plus semiring scalar: an exact rational or the distinguished
/// element infinity. Tropical addition is min, tropical multiplication
/// is classical +, with v + inf = inf.
class TropicalValue {
public:
    TropicalValue() : finite_(false) {}  // infinity
    TropicalValue(Rational v) : finite_(true), value_(std::move(v)) {}
    TropicalValue(long v) : finite_(true), value_(v) {}

    static TropicalValue infinity() { return TropicalValue(); }

    bool is_finite() const { return finite_; }
    bool is_infinite() const { return !finite_; }

    // Only valid on finite values.
    const Rational& value() const {
        if (!finite_) throw std::logic_error("value() on infinity");
        return value_;
    }

    friend TropicalValue operator+(const TropicalValue& a, const TropicalValue& b) {
        if (!a.finite_ || !b.finite_) return infinity();
        return TropicalValue(Rational(a.value_ + b.value_));
    }

    friend TropicalValue operator-(const TropicalValue& a, const Rational& shift) {
        if (!a.finite_) return infinity();
        return TropicalValue(Rational(a.value_ - shift));
    }

    // Total order with infinity as the greatest element.
    friend bool operator<(const TropicalValue& a, const TropicalValue& b) {
        if (!a.finite_) return false;
        if (!b.finite_) return true;
        return a.value_ < b.value_;
    }
    friend bool operator==(const TropicalValue& a, const TropicalValue& b) {
        if (a.finite_ != b.finite_) return false;
        return !a.finite_ || a.value_ == b.value_;
    }
    friend bool operator!=(const TropicalValue& a, const TropicalValue& b) { return !(a == b); }
    friend bool operator<=(const TropicalValue& a, const TropicalValue& b) {
        return a < b || a == b;
    }

    std::string str() const { return finite_ ? to_string(value_) : "inf"; }

private:
    bool finite_;
    Rational value_;
};

inline TropicalValue trop_min(const TropicalValue& a, const TropicalValue& b) {
    return a < b ? a : b;
}

/// True iff the minimum of the list is attained by at least two entries,
/// or all entries are infinite, or the list is empty (the vacuous minimum
/// is infinity and counts as attained).
inline bool min_achieved_twice(std::span<const TropicalValue> values) {
    const TropicalValue* best = nullptr;
    int hits = 0;
    for (const TropicalValue& v : values) {
        if (v.is_infinite()) continue;
        if (best == nullptr || v < *best) {
            best = &v;
            hits = 1;
        } else if (v == *best) {
            ++hits;
        }
    }
    return best == nullptr || hits >= 2;
}

inline bool min_achieved_twice(const std::vector<TropicalValue>& values) {
    return min_achieved_twice(std::span<const TropicalValue>(values));
}

// A coordinate vector over the tropical semiring; the index semantics
// (plain ground set or the signed set J) are supplied by the caller.
using TropicalVec = std::vector<TropicalValue>;

/// x and y are tropically orthogonal when min_j (x_j + y_j) is attained
/// at least twice or equals infinity.
inline bool tropically_orthogonal(const TropicalVec& x, const TropicalVec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("dimension mismatch");
    std::vector<TropicalValue> sums;
    sums.reserve(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) sums.push_back(x[j] + y[j]);
    return min_achieved_twice(sums);
}

/// Coordinatewise min of the shifted vectors lambda_i + a_i.
inline TropicalVec tropical_combination(const std::vector<TropicalValue>& lambdas,
                                        const std::vector<TropicalVec>& vecs) {
    if (lambdas.size() != vecs.size())
        throw std::invalid_argument("combination: length mismatch");
    if (vecs.empty()) throw std::invalid_argument("combination: empty family");
    const std::size_t dim = vecs.front().size();
    for (const TropicalVec& v : vecs)
        if (v.size() != dim) throw std::invalid_argument("combination: dimension mismatch");
    TropicalVec out(dim, TropicalValue::infinity());
    for (std::size_t i = 0; i < vecs.size(); ++i)
        for (std::size_t j = 0; j < dim; ++j)
            out[j] = trop_min(out[j], lambdas[i] + vecs[i][j]);
    return out;
}

struct HullResult {
    bool member = false;
    // Least witness when member: tropical_combination(lambdas, generators) == x.
    std::vector<TropicalValue> lambdas;
};

/// Decides membership of x in the tropical convex hull of the generators
/// by residuation. For each generator a the least feasible coefficient is
/// lambda = sup over finite a_j of (x_j - a_j); membership holds exactly
/// when the combination with these coefficients reproduces x. A generator
/// with all-infinite coordinates gets lambda = infinity.
inline HullResult in_tropical_hull(const TropicalVec& x, const std::vector<TropicalVec>& gens) {
    if (gens.empty()) throw std::invalid_argument("hull: empty generator list");
    const std::size_t dim = x.size();
    for (const TropicalVec& g : gens)
        if (g.size() != dim) throw std::invalid_argument("hull: dimension mismatch");

    std::vector<TropicalValue> lambdas;
    lambdas.reserve(gens.size());
    for (const TropicalVec& g : gens) {
        std::optional<Rational> sup;  // nullopt: none seen yet
        bool forced_infinite = false;
        bool any_finite_coord = false;
        for (std::size_t j = 0; j < dim; ++j) {
            if (g[j].is_infinite()) continue;
            any_finite_coord = true;
            if (x[j].is_infinite()) {
                forced_infinite = true;
                break;
            }
            Rational cand = x[j].value() - g[j].value();
            if (!sup || cand > *sup) sup = cand;
        }
        if (!any_finite_coord || forced_infinite)
            lambdas.push_back(TropicalValue::infinity());
        else
            lambdas.push_back(TropicalValue(*sup));
    }
    HullResult res;
    res.member = tropical_combination(lambdas, gens) == x;
    if (res.member) res.lambdas = std::move(lambdas);
    return res;
}

}  // namespace tropwick
