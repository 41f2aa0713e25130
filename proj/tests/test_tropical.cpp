#include "doctest.h"

#include <algorithm>

#include "test_helpers.hpp"
#include "tropwick/signed_space.hpp"
#include "tropwick/tropical.hpp"

using namespace tropwick;
using namespace tw_test;

namespace {

// Brute-force hull membership over the finite candidate grid of residuated
// shifts {x_j - a_ij} plus infinity; independent of the residuation path.
bool hull_member_brute_force(const TropicalVec& x, const std::vector<TropicalVec>& gens) {
    std::vector<std::vector<TropicalValue>> candidates(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
        candidates[i].push_back(TropicalValue::infinity());
        for (std::size_t j = 0; j < x.size(); ++j)
            if (x[j].is_finite() && gens[i][j].is_finite())
                candidates[i].push_back(TropicalValue(Rational(x[j].value() - gens[i][j].value())));
    }
    std::vector<std::size_t> pick(gens.size(), 0);
    while (true) {
        std::vector<TropicalValue> lambdas;
        for (std::size_t i = 0; i < gens.size(); ++i) lambdas.push_back(candidates[i][pick[i]]);
        if (tropical_combination(lambdas, gens) == x) return true;
        std::size_t i = 0;
        while (i < gens.size() && ++pick[i] == candidates[i].size()) pick[i++] = 0;
        if (i == gens.size()) return false;
    }
}

}  // namespace

TEST_SUITE("tropical") {
    TEST_CASE("min_achieved_twice on the stated examples") {
        CHECK(min_achieved_twice({inf(), inf(), inf()}));
        CHECK(min_achieved_twice(tv({0, 0, 3})));
        CHECK_FALSE(min_achieved_twice(tv({-1, 0, 0, 0})));
        CHECK(min_achieved_twice(TropicalVec{}));
    }

    TEST_CASE("tropical value arithmetic and order") {
        CHECK((TropicalValue(2) + TropicalValue(3)) == TropicalValue(5));
        CHECK((TropicalValue(2) + inf()).is_infinite());
        CHECK(trop_min(TropicalValue(2), inf()) == TropicalValue(2));
        CHECK(inf() == inf());
        CHECK(TropicalValue(-1) < TropicalValue(0));
        CHECK(TropicalValue(0) < inf());
    }

    TEST_CASE("orthogonality examples") {
        // n = 2 vectors over J: coordinates 1 2 1* 2*.
        CHECK(tropically_orthogonal(tv({0, 0, -1000, -1000}), tv({0, 0, -1000, -1000})));
        CHECK_FALSE(tropically_orthogonal(tv({0, -1000, -1000, -1000}),
                                          tv({0, -1000, -1000, -1000})));
        CHECK_THROWS_AS(tropically_orthogonal(tv({0}), tv({0, 1})), std::invalid_argument);
    }

    TEST_CASE("orthogonality is symmetric") {
        RationalGen gen(7);
        for (int trial = 0; trial < 200; ++trial) {
            TropicalVec x, y;
            for (int j = 0; j < 6; ++j) {
                x.push_back(gen.raw() % 3 == 0 ? inf() : TropicalValue(gen.small()));
                y.push_back(gen.raw() % 3 == 0 ? inf() : TropicalValue(gen.small()));
            }
            CHECK(tropically_orthogonal(x, y) == tropically_orthogonal(y, x));
        }
    }

    TEST_CASE("signed indices") {
        SignedIndex i{2, false};
        CHECK(i.star() == SignedIndex{2, true});
        CHECK(i.star().star() == i);
        CHECK(i.coord(3) == 1);
        CHECK(i.star().coord(3) == 4);
    }

    TEST_CASE("admissibility") {
        SignedVector all_inf(2);
        CHECK(all_inf.is_admissible());
        CHECK(SignedVector(2, tv({0, -1000, -1000, 0})).is_admissible());
        CHECK_FALSE(SignedVector(2, tv({0, -1000, 0, -1000})).is_admissible());
    }

    TEST_CASE("reflection swaps stars and is an involution") {
        SignedVector x(2, tv({1, -1000, 2, 3}));
        SignedVector r = x.reflection();
        CHECK(r.coords() == tv({2, 3, 1, -1000}));
        CHECK(r.reflection() == x);
    }

    TEST_CASE("tropical combination basics") {
        TropicalVec v = tv({1, -1000, 2});
        CHECK(tropical_combination({TropicalValue(0)}, {v}) == v);
        CHECK(tropical_combination({inf(), TropicalValue(0)}, {tv({5, 5, 5}), v}) == v);
        CHECK(tropical_combination({TropicalValue(0), TropicalValue(0)},
                                   {tv({0, -1000}), tv({-1000, 1})}) == tv({0, 1}));
        CHECK_THROWS_AS(tropical_combination({TropicalValue(0)}, {v, v}),
                        std::invalid_argument);
    }

    TEST_CASE("hull membership basics") {
        std::vector<TropicalVec> gens = {tv({0, 1, -1000}), tv({2, 0, -1000})};
        CHECK(in_tropical_hull(gens[0], gens).member);
        // A finite coordinate where every generator is infinite is unreachable.
        CHECK_FALSE(in_tropical_hull(tv({0, 1, 0}), gens).member);
        CHECK_THROWS_AS(in_tropical_hull(tv({0}), {}), std::invalid_argument);
    }

    TEST_CASE("hull membership agrees with the brute-force candidate search") {
        RationalGen gen(99);
        int members = 0;
        for (int trial = 0; trial < 300; ++trial) {
            std::vector<TropicalVec> gens;
            std::size_t count = 1 + gen.raw() % 3;
            for (std::size_t i = 0; i < count; ++i) {
                TropicalVec g;
                for (int j = 0; j < 3; ++j)
                    g.push_back(gen.raw() % 4 == 0 ? inf() : TropicalValue(gen.small()));
                gens.push_back(g);
            }
            TropicalVec x;
            if (gen.raw() % 2 == 0) {
                // Random point, mostly non-members.
                for (int j = 0; j < 3; ++j)
                    x.push_back(gen.raw() % 4 == 0 ? inf() : TropicalValue(gen.small()));
            } else {
                // A genuine combination, always a member.
                std::vector<TropicalValue> lambdas;
                for (std::size_t i = 0; i < count; ++i)
                    lambdas.push_back(gen.raw() % 4 == 0 ? inf() : TropicalValue(gen.small()));
                x = tropical_combination(lambdas, gens);
            }
            bool fast = in_tropical_hull(x, gens).member;
            bool slow = hull_member_brute_force(x, gens);
            CHECK(fast == slow);
            if (fast) ++members;
        }
        CHECK(members > 50);  // both outcomes exercised
    }

    TEST_CASE("residuation witness is least among witnesses") {
        RationalGen gen(1234);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<TropicalVec> gens;
            std::size_t count = 1 + gen.raw() % 3;
            for (std::size_t i = 0; i < count; ++i) {
                TropicalVec g;
                for (int j = 0; j < 4; ++j)
                    g.push_back(gen.raw() % 4 == 0 ? inf() : TropicalValue(gen.small()));
                gens.push_back(g);
            }
            std::vector<TropicalValue> mu;
            for (std::size_t i = 0; i < count; ++i)
                mu.push_back(gen.raw() % 4 == 0 ? inf() : TropicalValue(gen.small()));
            TropicalVec x = tropical_combination(mu, gens);
            HullResult res = in_tropical_hull(x, gens);
            REQUIRE(res.member);
            // lambda_i dominates x coordinatewise...
            for (std::size_t i = 0; i < count; ++i)
                for (std::size_t j = 0; j < 4; ++j)
                    CHECK(x[j] <= res.lambdas[i] + gens[i][j]);
            // ...and is below any other witness on generators that matter.
            for (std::size_t i = 0; i < count; ++i) {
                bool all_infinite = true;
                for (const TropicalValue& v : gens[i])
                    if (v.is_finite()) all_infinite = false;
                if (!all_infinite) CHECK(res.lambdas[i] <= mu[i]);
            }
        }
    }
}
