#include <random>

#include "doctest.h"
#include "ncg/scalar.hpp"
#include "test_helpers.hpp"

using namespace ncg;

TEST_CASE("scalar canonical strings") {
    CHECK(Scalar(0).str() == "0/1+0/1*i");
    CHECK(Scalar(1).str() == "1/1+0/1*i");
    CHECK(Scalar::i().str() == "0/1+1/1*i");
    CHECK((-Scalar::i()).str() == "0/1+-1/1*i");
    CHECK(Scalar(Rational(-3, 4), Rational(5, 6)).str() == "-3/4+5/6*i");
}

TEST_CASE("scalar parse accepts canonical grammar and shorthands") {
    CHECK(Scalar::parse("2") == Scalar(2));
    CHECK(Scalar::parse("-3/4") == Scalar(Rational(-3, 4)));
    CHECK(Scalar::parse("i") == Scalar::i());
    CHECK(Scalar::parse("-i") == -Scalar::i());
    CHECK(Scalar::parse("2*i") == Scalar(Rational(0), Rational(2)));
    CHECK(Scalar::parse("0/1+-1/1*i") == -Scalar::i());
    CHECK(Scalar::parse("1/2+1/3*i") == Scalar(Rational(1, 2), Rational(1, 3)));
    CHECK_THROWS_AS(Scalar::parse(""), ParseError);
    CHECK_THROWS_AS(Scalar::parse("1/2+"), ParseError);
    CHECK_THROWS_AS(Scalar::parse("x"), ParseError);
}

TEST_CASE("scalar parse round-trips the canonical form") {
    std::mt19937 rng(11);
    for (int t = 0; t < 200; ++t) {
        Scalar s = testutil::rand_scalar(rng);
        CHECK(Scalar::parse(s.str()) == s);
    }
}

TEST_CASE("scalar field axioms on random values") {
    std::mt19937 rng(12);
    for (int t = 0; t < 150; ++t) {
        Scalar a = testutil::rand_scalar(rng);
        Scalar b = testutil::rand_scalar(rng);
        Scalar c = testutil::rand_scalar(rng);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK((a * b).conj() == a.conj() * b.conj());
        if (!a.is_zero()) {
            CHECK(a * a.inverse() == Scalar(1));
            CHECK(b / a * a == b);
        }
    }
}

TEST_CASE("division by zero throws") {
    CHECK_THROWS_AS(Scalar(0).inverse(), DivisionByZero);
    CHECK_THROWS_AS(Scalar(1) / Scalar(0), DivisionByZero);
}
