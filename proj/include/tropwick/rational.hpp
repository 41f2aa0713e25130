#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace tropwick {

// Exact rational scalar. All arithmetic in this library is exact; no
// floating point anywhere.
using Rational = mpq_class;

// Thrown when an input exceeds the supported desk-scale instance sizes.
struct ScaleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses "a" or "a/b" (base 10). Throws std::invalid_argument on anything else.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    for (char c : text) {
        if (!(c == '-' || c == '/' || (c >= '0' && c <= '9')))
            throw std::invalid_argument("bad rational literal: " + text);
    }
    mpq_class q;
    if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
        throw std::invalid_argument("bad rational literal: " + text);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace tropwick
