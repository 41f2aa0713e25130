#include "doctest.h"

#include <algorithm>
#include <set>

#include "test_helpers.hpp"
#include "tropwick/plucker.hpp"
#include "tropwick/puiseux.hpp"
#include "tropwick/realization.hpp"
#include "tropwick/wick.hpp"

using namespace tropwick;
using namespace tw_test;

namespace {

ScalarMatrix int_matrix(const std::vector<std::vector<long>>& rows) {
    ScalarMatrix out;
    for (const auto& row : rows) {
        out.emplace_back();
        for (long v : row) out.back().emplace_back(v);
    }
    return out;
}

// The n = 4 worked example needing a column swap (columns 1..4, 1*..4*).
ScalarMatrix example_matrix4() {
    return int_matrix({{1, 0, -1, 0, 0, 1, 0, 2},
                       {0, 1, 3, 0, -1, 0, 0, 0},
                       {0, 0, 0, 0, 1, -3, 1, -5},
                       {0, 0, 5, 1, -2, 0, 0, 0}});
}

// The n = 3 worked example with bases {123, 1, 2, 3}.
ScalarMatrix example_matrix3() {
    return int_matrix({{1, 0, 0, 0, 1, -1}, {0, 1, 0, -1, 0, 2}, {0, 0, 1, 1, -2, 0}});
}

ScalarMatrix witness_matrix(long corner) {
    return int_matrix({{1, 0, 0, 0, 0, 1, 2, corner},
                       {0, 1, 0, 0, -1, 0, 1, 2},
                       {0, 0, 1, 0, -2, -1, 0, 1},
                       {0, 0, 0, 1, -corner, -2, -1, 0}});
}

TropicalWickVector normalized_min_zero_wick(const TropicalWickVector& p) {
    Rational least;
    bool have = false;
    for (const auto& [s, v] : p.entries())
        if (!have || v < least) {
            have = true;
            least = v;
        }
    std::map<SubsetMask, Rational> out;
    for (const auto& [s, v] : p.entries()) out.emplace(s, Rational(v - least));
    return TropicalWickVector(p.n(), std::move(out));
}

}  // namespace

TEST_SUITE("realization") {
    TEST_CASE("puiseux scalar arithmetic") {
        PuiseuxScalar zero;
        CHECK(zero.val().is_infinite());
        PuiseuxScalar f = PuiseuxScalar::monomial(Rational(3), Rational(1) / 2) +
                          PuiseuxScalar::monomial(Rational(2), Rational(2));
        CHECK(f.val() == TropicalValue(Rational(1) / 2));
        CHECK((f - f).is_zero());
        CHECK((f * PuiseuxScalar(1)) == f);
        CHECK((-f + f).is_zero());
    }

    TEST_CASE("valuation is additive under multiplication") {
        RationalGen gen(41);
        for (int trial = 0; trial < 100; ++trial) {
            PuiseuxScalar f, g;
            for (int k = 0; k < 3; ++k) {
                f += PuiseuxScalar::monomial(gen.small(), gen.small());
                g += PuiseuxScalar::monomial(gen.small(), gen.small());
            }
            PuiseuxScalar prod = f * g;
            if (f.is_zero() || g.is_zero()) {
                CHECK(prod.is_zero());
            } else {
                // Leading terms cannot cancel: exponents are minimal.
                CHECK(prod.val() == f.val() + g.val());
            }
        }
    }

    TEST_CASE("pfaffian of small skew matrices") {
        ScalarMatrix two = int_matrix({{0, 7}, {-7, 0}});
        CHECK(pfaffian(two, full_mask(2)) == PuiseuxScalar(7));
        CHECK(pfaffian(two, 0) == PuiseuxScalar(1));
        CHECK(pfaffian(two, 1) .is_zero());  // odd subset
        ScalarMatrix bad = int_matrix({{0, 1}, {1, 0}});
        CHECK_THROWS_AS(pfaffian(bad, full_mask(2)), std::invalid_argument);
    }

    TEST_CASE("worked example: chart with the third column swapped") {
        ScalarMatrix m = example_matrix4();
        REQUIRE(rowspace_is_isotropic(m));
        auto chart = wick_chart(m, mask({3}));
        REQUIRE(chart.has_value());
        CHECK(chart->det_b == PuiseuxScalar(1));
        // With det B = 1 the scaled matrix is the chart matrix itself.
        ScalarMatrix expected = int_matrix(
            {{0, 1, -1, 2}, {-1, 0, 3, 0}, {1, -3, 0, -5}, {-2, 0, 5, 0}});
        CHECK(chart->scaled_a == expected);
        CHECK(pfaffian(chart->scaled_a, mask({2, 3})) == PuiseuxScalar(3));
        CHECK(pfaffian(chart->scaled_a, mask({1, 2, 3, 4})) == PuiseuxScalar(1));
    }

    TEST_CASE("worked example: wick valuation entries") {
        TropicalWickVector p = wick_valuation_from_rowspace(example_matrix4());
        CHECK(p.at(mask({1, 3, 4})).is_finite());
        CHECK(p.at(mask({3})).is_finite());
        CHECK(p.at(mask({2, 4})).is_infinite());
        CHECK(check_wick_full(p));
    }

    TEST_CASE("chart choice does not change the projective valuation") {
        ScalarMatrix m = example_matrix4();
        auto manual = wick_chart(m, mask({3}));
        REQUIRE(manual.has_value());
        std::map<SubsetMask, Rational> entries;
        for (SubsetMask s = 0; s <= full_mask(4); ++s) {
            TropicalValue v = manual->pfaffian_valuation(s ^ manual->swapped);
            if (v.is_finite()) entries.emplace(full_mask(4) & ~s, v.value());
            if (s == full_mask(4)) break;
        }
        TropicalWickVector from_manual(4, std::move(entries));
        TropicalWickVector from_auto = wick_valuation_from_rowspace(m);
        CHECK(normalized_min_zero_wick(from_manual) == normalized_min_zero_wick(from_auto));
    }

    TEST_CASE("running example: support and derived data") {
        TropicalWickVector p = wick_valuation_from_rowspace(example_matrix3());
        CHECK(p.support() == std::vector<SubsetMask>{mask({1}), mask({2}), mask({3}),
                                                     mask({1, 2, 3})});
        for (SubsetMask s : p.support()) CHECK(p.at(s) == TropicalValue(0));
    }

    TEST_CASE("isotropy violations and rank deficits are reported") {
        ScalarMatrix not_isotropic = int_matrix({{1, 0, 1, 0}, {0, 1, 0, 1}});
        CHECK_FALSE(rowspace_is_isotropic(not_isotropic));
        CHECK_THROWS_AS(wick_valuation_from_rowspace(not_isotropic), std::invalid_argument);
        ScalarMatrix deficient = int_matrix({{1, 0, 0, 1}, {1, 0, 0, 1}});
        REQUIRE(rowspace_is_isotropic(deficient));
        CHECK_THROWS_AS(wick_valuation_from_rowspace(deficient), std::invalid_argument);
    }

    TEST_CASE("valuations with genuine series entries") {
        PuiseuxScalar t_half = PuiseuxScalar::monomial(Rational(3), Rational(1) / 2) +
                               PuiseuxScalar::monomial(Rational(2), Rational(2));
        ScalarMatrix m(2, std::vector<PuiseuxScalar>(4));
        m[0][0] = PuiseuxScalar(1);
        m[1][1] = PuiseuxScalar(1);
        m[0][3] = t_half;
        m[1][2] = -t_half;
        REQUIRE(rowspace_is_isotropic(m));
        TropicalWickVector p = wick_valuation_from_rowspace(m);
        CHECK(p.at(mask({1, 2})) == TropicalValue(0));
        CHECK(p.at(0) == TropicalValue(Rational(1) / 2));
    }

    TEST_CASE("row operations preserve the projective wick valuation") {
        // Rowspace-equivalent matrices give the same normalized vector.
        ScalarMatrix m = example_matrix3();
        ScalarMatrix combined = m;
        for (int c = 0; c < 6; ++c) {
            combined[0][c] = m[0][c] + m[1][c] * PuiseuxScalar(3);
            combined[1][c] = m[1][c] - m[2][c];
        }
        TropicalWickVector a = wick_valuation_from_rowspace(m);
        TropicalWickVector b = wick_valuation_from_rowspace(combined);
        CHECK(normalized_min_zero_wick(a) == normalized_min_zero_wick(b));
    }

    TEST_CASE("identity-block pluecker valuation") {
        ScalarMatrix m = int_matrix({{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}});
        TropicalPluckerVector p = plucker_valuation_from_rowspace(m);
        CHECK(p.support() == std::vector<SubsetMask>{mask({1, 2})});
        CHECK(p.at(mask({1, 2})) == TropicalValue(0));
        CHECK_FALSE(p.signed_ground());
    }

    TEST_CASE("pluecker valuation rejects rank-deficient input") {
        ScalarMatrix m = int_matrix({{1, 2, 3}, {2, 4, 6}});
        CHECK_THROWS_AS(plucker_valuation_from_rowspace(m), std::invalid_argument);
    }

    TEST_CASE("witness pair: equal wick valuations, different pluecker valuations") {
        ScalarMatrix m1 = witness_matrix(2);
        ScalarMatrix m2 = witness_matrix(4);
        REQUIRE(rowspace_is_isotropic(m1));
        REQUIRE(rowspace_is_isotropic(m2));
        CHECK(wick_valuation_from_rowspace(m1) == wick_valuation_from_rowspace(m2));

        // The four-point minor distinguishes the tropical linear spaces.
        SubsetMask probe = jmask(4, {{3, false}, {4, false}, {3, true}, {4, true}});
        CHECK(column_minor(m1, probe) == PuiseuxScalar(2));
        CHECK(column_minor(m2, probe).is_zero());

        TropicalPluckerVector q1 = plucker_valuation_from_rowspace(m1);
        TropicalPluckerVector q2 = plucker_valuation_from_rowspace(m2);
        CHECK(q1.signed_ground());
        CHECK(is_tropical_plucker(q1));
        CHECK(is_tropical_plucker(q2));
        CHECK(q1.at(probe) == TropicalValue(0));
        CHECK(q2.at(probe).is_infinite());
        CHECK_FALSE(q1 == q2);
    }

    TEST_CASE("isotropic rowspaces give isotropical pluecker valuations") {
        for (const ScalarMatrix& m :
             {witness_matrix(2), witness_matrix(4), example_matrix3(), example_matrix4()}) {
            REQUIRE(rowspace_is_isotropic(m));
            CHECK(is_isotropical(plucker_valuation_from_rowspace(m)));
        }
    }

    TEST_CASE("admissible members of the tropical linear space are cocycles") {
        ScalarMatrix m1 = witness_matrix(2);
        TropicalWickVector p = wick_valuation_from_rowspace(m1);
        TropicalPluckerVector q = plucker_valuation_from_rowspace(m1);
        auto circuits = all_circuits(p);
        int admissible_found = 0;
        RationalGen gen(4242);
        auto cocircuits = all_cocircuits(p);
        for (int trial = 0; trial < 60; ++trial) {
            const WickCircuit& k = cocircuits[gen.raw() % cocircuits.size()];
            SignedVector x(p.n());
            Rational shift = gen.small();
            for (int c = 0; c < 2 * p.n(); ++c)
                x.set(c, k.vec.at(c) + TropicalValue(shift));
            REQUIRE(x.is_admissible());
            ++admissible_found;
            CHECK(in_linear_space(q, x.coords()));
            CHECK(is_cocycle_against(circuits, x));
        }
        CHECK(admissible_found == 60);
        // Every cocircuit of p lies in the tropical linear space of q.
        for (const WickCircuit& k : cocircuits) CHECK(in_linear_space(q, k.vec.coords()));
        // Hull-sampled members of the space that happen to be admissible
        // are cocycles as well.
        for (const TropicalVec& v : sample_linear_space(q, 11, 200)) {
            SignedVector x(p.n(), v);
            if (x.is_admissible()) CHECK(is_cocycle_against(circuits, x));
        }
    }

    TEST_CASE("reflections of members are orthogonal to the space when isotropical") {
        // Sampled consistency for the reflected-space reading of
        // isotropicality: x, y in L imply reflection(x) orthogonal to y.
        ScalarMatrix m1 = witness_matrix(2);
        TropicalPluckerVector q = plucker_valuation_from_rowspace(m1);
        REQUIRE(is_isotropical(q));
        auto samples = sample_linear_space(q, 23, 30);
        for (const TropicalVec& x : samples) {
            SignedVector reflected = SignedVector(4, x).reflection();
            for (const TropicalVec& y : samples)
                CHECK(tropically_orthogonal(reflected.coords(), y));
        }
    }

    TEST_CASE("pluecker criterion agrees with the relation check on the signed ground") {
        ScalarMatrix m1 = witness_matrix(2);
        TropicalPluckerVector q = plucker_valuation_from_rowspace(m1);
        TropicalWickVector as_wick(q.ground_size(), q.entries());
        CHECK(is_tropical_plucker(q) == check_wick_full(as_wick));
        CHECK(check_wick_local(as_wick));
    }
}
