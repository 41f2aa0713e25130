#pragma once

#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tropwick/puiseux.hpp"
#include "tropwick/rational.hpp"
#include "tropwick/signed_space.hpp"
#include "tropwick/subsets.hpp"
#include "tropwick/tropical.hpp"

namespace tropwick {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_no, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
};

namespace io {

// ---------------------------------------------------------------------
// Subset literals. Concatenated digits with optional stars ("123", "12*3",
// "{}" or "-" for the empty set); multi-digit elements use the bracketed
// form "[10 12*]". Elements are 1-based; starred items land in the high
// half of a J-mask.

inline SubsetMask parse_subset_literal(const std::string& token, int n, bool allow_star,
                                       int line_no) {
    if (token == "{}" || token == "-") return 0;
    SubsetMask out = 0;
    auto add = [&](long element, bool starred) {
        if (element < 1 || element > n)
            throw ParseError(line_no, "element " + std::to_string(element) + " outside [" +
                                          std::to_string(n) + "]");
        if (starred && !allow_star)
            throw ParseError(line_no, "starred element in an unsigned ground set");
        out |= signed_bit(static_cast<int>(element), starred, n);
    };
    if (!token.empty() && token.front() == '[') {
        if (token.back() != ']') throw ParseError(line_no, "unterminated '['");
        std::istringstream in(token.substr(1, token.size() - 2));
        std::string item;
        while (in >> item) {
            bool starred = !item.empty() && item.back() == '*';
            if (starred) item.pop_back();
            try {
                add(std::stol(item), starred);
            } catch (const std::logic_error&) {
                throw ParseError(line_no, "bad element '" + item + "'");
            }
        }
        return out;
    }
    for (std::size_t i = 0; i < token.size();) {
        if (token[i] < '0' || token[i] > '9')
            throw ParseError(line_no, "bad subset literal '" + token + "'");
        long element = token[i] - '0';
        ++i;
        bool starred = i < token.size() && token[i] == '*';
        if (starred) ++i;
        add(element, starred);
    }
    return out;
}

// Prints by ascending element, unstarred before starred within an element.
inline std::string subset_literal(SubsetMask mask, int n, bool is_signed) {
    if (mask == 0) return "{}";
    std::string out;
    for (int i = 1; i <= n; ++i) {
        if (mask & signed_bit(i, false, n)) out += std::to_string(i);
        if (is_signed && (mask & signed_bit(i, true, n))) out += std::to_string(i) + "*";
    }
    return out;
}

inline TropicalValue parse_tropical(const std::string& token, int line_no) {
    if (token == "inf") return TropicalValue::infinity();
    try {
        return TropicalValue(parse_rational(token));
    } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
    }
}

// ---------------------------------------------------------------------
// Delta-matroid files: "n <n>", then one basis per line as space-separated
// elements ("-" for the empty basis). Canonical output sorts bases as
// integers (by bitmask value).

struct DeltaMatroidFile {
    int n = 0;
    std::vector<SubsetMask> bases;
};

inline DeltaMatroidFile read_delta_matroid(std::istream& in) {
    DeltaMatroidFile out;
    std::string line;
    int line_no = 0;
    if (!std::getline(in, line)) throw ParseError(1, "missing header");
    ++line_no;
    {
        std::istringstream head(line);
        std::string tag;
        if (!(head >> tag >> out.n) || tag != "n" || out.n < 0)
            throw ParseError(line_no, "expected header 'n <n>'");
    }
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream row(line);
        std::string item;
        SubsetMask basis = 0;
        bool any = false;
        while (row >> item) {
            any = true;
            if (item == "-") continue;
            long element;
            try {
                element = std::stol(item);
            } catch (const std::logic_error&) {
                throw ParseError(line_no, "bad element '" + item + "'");
            }
            if (element < 1 || element > out.n)
                throw ParseError(line_no, "element " + item + " outside [" +
                                              std::to_string(out.n) + "]");
            basis |= (1u << (element - 1));
        }
        if (any) out.bases.push_back(basis);
    }
    if (out.bases.empty()) throw ParseError(line_no + 1, "no bases listed");
    return out;
}

inline void write_delta_matroid(std::ostream& os, int n, std::vector<SubsetMask> bases) {
    std::sort(bases.begin(), bases.end());
    bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
    os << "n " << n << "\n";
    for (SubsetMask b : bases) {
        if (b == 0) {
            os << "-\n";
            continue;
        }
        bool first = true;
        for (int i = 1; i <= n; ++i) {
            if (!(b & (1u << (i - 1)))) continue;
            if (!first) os << ' ';
            os << i;
            first = false;
        }
        os << "\n";
    }
}

// ---------------------------------------------------------------------
// Wick / Pluecker vector files: "n <n>" (append " J" for the signed ground
// set of size 2n), then "<subset> <value>" per line; entries not listed
// are infinite.

struct WickFile {
    int n = 0;             // ground size: n, or 2n when signed
    bool signed_ground = false;
    std::map<SubsetMask, Rational> entries;
};

inline WickFile read_wick_vector(std::istream& in) {
    WickFile out;
    std::string line;
    int line_no = 0;
    if (!std::getline(in, line)) throw ParseError(1, "missing header");
    ++line_no;
    int header_n = 0;
    {
        std::istringstream head(line);
        std::string tag, j_tag;
        if (!(head >> tag >> header_n) || tag != "n" || header_n <= 0)
            throw ParseError(line_no, "expected header 'n <n> [J]'");
        if (head >> j_tag) {
            if (j_tag != "J") throw ParseError(line_no, "unexpected header token " + j_tag);
            out.signed_ground = true;
        }
    }
    out.n = out.signed_ground ? 2 * header_n : header_n;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view rest(line);
        auto skip_ws = [&] {
            while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t'))
                rest.remove_prefix(1);
        };
        skip_ws();
        if (rest.empty()) continue;
        std::string subset_token;
        if (rest.front() == '[') {
            auto close = rest.find(']');
            if (close == std::string_view::npos) throw ParseError(line_no, "unterminated '['");
            subset_token = std::string(rest.substr(0, close + 1));
            rest.remove_prefix(close + 1);
        } else {
            auto ws = rest.find_first_of(" \t");
            subset_token = std::string(rest.substr(0, ws));
            rest.remove_prefix(ws == std::string_view::npos ? rest.size() : ws);
        }
        skip_ws();
        if (rest.empty()) throw ParseError(line_no, "missing value");
        std::string value_token(rest.substr(0, rest.find_first_of(" \t")));
        SubsetMask mask =
            parse_subset_literal(subset_token, header_n, out.signed_ground, line_no);
        TropicalValue value = parse_tropical(value_token, line_no);
        if (value.is_finite()) {
            if (!out.entries.emplace(mask, value.value()).second)
                throw ParseError(line_no, "duplicate entry " + subset_token);
        }
    }
    if (out.entries.empty()) throw ParseError(line_no + 1, "empty support");
    return out;
}

inline void write_wick_vector(std::ostream& os, int ground_size, bool signed_ground,
                              const std::map<SubsetMask, Rational>& entries) {
    int header_n = signed_ground ? ground_size / 2 : ground_size;
    os << "n " << header_n << (signed_ground ? " J" : "") << "\n";
    for (const auto& [s, v] : entries)
        os << subset_literal(s, header_n, signed_ground) << ' ' << to_string(v) << "\n";
}

// ---------------------------------------------------------------------
// Vectors in T^J: 2n whitespace-separated values ordered 1..n then
// 1*..n*; one vector per line.

inline SignedVector parse_signed_vector(const std::string& line, int n, int line_no) {
    std::istringstream in(line);
    std::string token;
    TropicalVec coords;
    while (in >> token) coords.push_back(parse_tropical(token, line_no));
    if (static_cast<int>(coords.size()) != 2 * n)
        throw ParseError(line_no, "expected " + std::to_string(2 * n) + " coordinates");
    return SignedVector(n, std::move(coords));
}

inline std::vector<SignedVector> read_signed_vectors(std::istream& in, int n) {
    std::vector<SignedVector> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        bool blank = line.find_first_not_of(" \t") == std::string::npos;
        if (blank) continue;
        out.push_back(parse_signed_vector(line, n, line_no));
    }
    return out;
}

inline std::string signed_vector_line(const SignedVector& x) {
    std::string out;
    for (int c = 0; c < 2 * x.n(); ++c) {
        if (c) out += ' ';
        out += x.at(c).str();
    }
    return out;
}

// ---------------------------------------------------------------------
// Puiseux scalar tokens: term (("+"|"-") term)*, where term is
// coeff, coeff "*t^(" q ")", or "t^(" q ")"; coeff and q rational.

inline PuiseuxScalar parse_puiseux(const std::string& token, int line_no) {
    PuiseuxScalar out;
    std::size_t pos = 0;
    auto fail = [&](const std::string& msg) -> ParseError {
        return ParseError(line_no, msg + " in scalar '" + token + "'");
    };
    bool leading = true;
    while (pos < token.size()) {
        int sign = 1;
        if (token[pos] == '+' || token[pos] == '-') {
            if (token[pos] == '-') sign = -1;
            ++pos;
        } else if (!leading) {
            throw fail("expected '+' or '-'");
        }
        leading = false;
        Rational coeff(1);
        bool have_coeff = false;
        std::size_t start = pos;
        while (pos < token.size() &&
               ((token[pos] >= '0' && token[pos] <= '9') || token[pos] == '/'))
            ++pos;
        if (pos > start) {
            coeff = parse_rational(token.substr(start, pos - start));
            have_coeff = true;
            if (pos < token.size() && token[pos] == '*') ++pos;
        }
        Rational exponent(0);
        if (pos < token.size() && token[pos] == 't') {
            ++pos;
            if (pos + 1 >= token.size() || token[pos] != '^' || token[pos + 1] != '(')
                throw fail("expected 't^(q)'");
            pos += 2;
            std::size_t close = token.find(')', pos);
            if (close == std::string::npos) throw fail("unterminated exponent");
            exponent = parse_rational(token.substr(pos, close - pos));
            pos = close + 1;
        } else if (!have_coeff) {
            throw fail("expected a coefficient or 't'");
        }
        out += PuiseuxScalar::monomial(sign < 0 ? Rational(-coeff) : coeff, exponent);
    }
    if (leading) throw fail("empty scalar");
    return out;
}

// ---------------------------------------------------------------------
// Matrix files: "n <rows> cols <cols>", then rows of whitespace-separated
// scalar expressions; columns of an n x 2n matrix are ordered 1..n, 1*..n*.

struct MatrixFile {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<PuiseuxScalar>> entries;
};

inline MatrixFile read_matrix(std::istream& in) {
    MatrixFile out;
    std::string line;
    int line_no = 0;
    if (!std::getline(in, line)) throw ParseError(1, "missing header");
    ++line_no;
    {
        std::istringstream head(line);
        std::string tag_n, tag_cols;
        if (!(head >> tag_n >> out.rows >> tag_cols >> out.cols) || tag_n != "n" ||
            tag_cols != "cols" || out.rows <= 0 || out.cols <= 0)
            throw ParseError(line_no, "expected header 'n <rows> cols <cols>'");
    }
    while (std::getline(in, line) && static_cast<int>(out.entries.size()) < out.rows) {
        ++line_no;
        std::istringstream row_in(line);
        std::string token;
        std::vector<PuiseuxScalar> row;
        while (row_in >> token) row.push_back(parse_puiseux(token, line_no));
        if (row.empty()) continue;
        if (static_cast<int>(row.size()) != out.cols)
            throw ParseError(line_no, "expected " + std::to_string(out.cols) + " entries");
        out.entries.push_back(std::move(row));
    }
    if (static_cast<int>(out.entries.size()) != out.rows)
        throw ParseError(line_no + 1, "expected " + std::to_string(out.rows) + " rows");
    return out;
}

}  // namespace io
}  // namespace tropwick
