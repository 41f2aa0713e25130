#pragma once

#include <map>
#include <string>

#include "tropwick/rational.hpp"
#include "tropwick/tropical.hpp"

namespace tropwick {

/// A finite formal sum of terms c * t^q with rational c and q: enough
/// Puiseux arithmetic for exact valuations at desk scale. Ring operations
/// only; no general series inversion (row reduction downstream clears
/// pivots by cross-multiplication instead).
class PuiseuxScalar {
public:
    PuiseuxScalar() = default;
    PuiseuxScalar(const Rational& constant) {
        if (constant != 0) terms_.emplace(Rational(0), constant);
    }
    PuiseuxScalar(long constant) : PuiseuxScalar(Rational(constant)) {}

    static PuiseuxScalar monomial(const Rational& coeff, const Rational& exponent) {
        PuiseuxScalar f;
        if (coeff != 0) f.terms_.emplace(exponent, coeff);
        return f;
    }

    bool is_zero() const { return terms_.empty(); }

    /// Least exponent with nonzero coefficient; infinity for the zero sum.
    TropicalValue val() const {
        if (terms_.empty()) return TropicalValue::infinity();
        return TropicalValue(terms_.begin()->first);
    }

    const std::map<Rational, Rational>& terms() const { return terms_; }

    friend PuiseuxScalar operator+(const PuiseuxScalar& a, const PuiseuxScalar& b) {
        PuiseuxScalar out = a;
        for (const auto& [q, c] : b.terms_) out.add_term(q, c);
        return out;
    }

    friend PuiseuxScalar operator-(const PuiseuxScalar& a, const PuiseuxScalar& b) {
        PuiseuxScalar out = a;
        for (const auto& [q, c] : b.terms_) out.add_term(q, Rational(-c));
        return out;
    }

    friend PuiseuxScalar operator-(const PuiseuxScalar& a) {
        PuiseuxScalar out;
        for (const auto& [q, c] : a.terms_) out.terms_.emplace(q, Rational(-c));
        return out;
    }

    friend PuiseuxScalar operator*(const PuiseuxScalar& a, const PuiseuxScalar& b) {
        PuiseuxScalar out;
        for (const auto& [qa, ca] : a.terms_)
            for (const auto& [qb, cb] : b.terms_)
                out.add_term(Rational(qa + qb), Rational(ca * cb));
        return out;
    }

    PuiseuxScalar& operator+=(const PuiseuxScalar& b) { return *this = *this + b; }
    PuiseuxScalar& operator-=(const PuiseuxScalar& b) { return *this = *this - b; }
    PuiseuxScalar& operator*=(const PuiseuxScalar& b) { return *this = *this * b; }

    friend bool operator==(const PuiseuxScalar& a, const PuiseuxScalar& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const PuiseuxScalar& a, const PuiseuxScalar& b) {
        return !(a == b);
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [q, c] : terms_) {
            Rational coeff = c;
            if (!first) {
                out += (coeff < 0) ? "-" : "+";
                if (coeff < 0) coeff = -coeff;
            }
            first = false;
            if (q == 0) {
                out += to_string(coeff);
            } else {
                if (coeff != 1) out += to_string(coeff) + "*";
                out += "t^(" + to_string(q) + ")";
            }
        }
        return out;
    }

private:
    void add_term(const Rational& q, const Rational& c) {
        auto it = terms_.find(q);
        if (it == terms_.end()) {
            if (c != 0) terms_.emplace(q, c);
            return;
        }
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }

    std::map<Rational, Rational> terms_;  // exponent -> nonzero coefficient
};

}  // namespace tropwick
