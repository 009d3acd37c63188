#include <random>

#include "doctest.h"
#include "ncg/algebra.hpp"
#include "test_helpers.hpp"

using namespace ncg;

TEST_CASE("chi basis is a set of orthogonal idempotents summing to 1") {
    auto base = make_points(4);
    AlgebraElement sum = AlgebraElement::zero(base);
    for (int i = 1; i <= 4; ++i) {
        AlgebraElement ci = AlgebraElement::chi(base, i);
        CHECK(ci * ci == ci);
        for (int j = 1; j <= 4; ++j)
            if (j != i) CHECK((ci * AlgebraElement::chi(base, j)).is_zero());
        sum = sum + ci;
    }
    CHECK(sum == AlgebraElement::one(base));
}

TEST_CASE("algebra arithmetic is componentwise and commutative") {
    auto base = make_points(3);
    std::mt19937 rng(21);
    for (int t = 0; t < 150; ++t) {
        AlgebraElement f = testutil::rand_algebra(base, rng);
        AlgebraElement g = testutil::rand_algebra(base, rng);
        CHECK(f * g == g * f);
        for (int k = 1; k <= 3; ++k) {
            CHECK((f * g)(k) == f(k) * g(k));
            CHECK((f + g)(k) == f(k) + g(k));
            CHECK(f.involution()(k) == f(k).conj());
        }
    }
}

TEST_CASE("try_invert splits into unit and vanishing-set cases") {
    auto base = make_points(3);
    AlgebraElement u = Scalar(2) * AlgebraElement::chi(base, 1) +
                       Scalar::i() * AlgebraElement::chi(base, 2) +
                       Scalar(-1) * AlgebraElement::chi(base, 3);
    auto inv = try_invert(u);
    REQUIRE(std::holds_alternative<AlgebraElement>(inv));
    CHECK(std::get<AlgebraElement>(inv) * u == AlgebraElement::one(base));

    AlgebraElement v = AlgebraElement::chi(base, 1);  // vanishes at 2 and 3
    auto bad = try_invert(v);
    REQUIRE(std::holds_alternative<NotAUnit>(bad));
    CHECK(std::get<NotAUnit>(bad).vanishing_points == std::vector<int>{2, 3});
}

TEST_CASE("conjugate module actions are twisted by the involution") {
    auto base = make_points(3);
    std::mt19937 rng(22);
    for (int t = 0; t < 120; ++t) {
        AlgebraElement a = testutil::rand_algebra(base, rng);
        AlgebraElement e = testutil::rand_algebra(base, rng);
        Conj<AlgebraElement> ce{e};
        CHECK((a * ce).value == e * a.involution());
        CHECK((ce * a).value == a.involution() * e);
        // Module laws survive the twist.
        AlgebraElement b = testutil::rand_algebra(base, rng);
        CHECK((a * (b * ce)).value == ((a * b) * ce).value);
        CHECK(((ce * a) * b).value == (ce * (a * b)).value);
    }
}
