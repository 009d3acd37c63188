#include <random>

#include "doctest.h"
#include "ncg/calculus.hpp"
#include "test_helpers.hpp"

using namespace ncg;

TEST_CASE("three-point dimensions and junk per degree") {
    const DifferentialCalculus& calc = testutil::three_point();
    CHECK(calc.dim(0) == 3);
    CHECK(calc.dim(1) == 6);
    CHECK(calc.dim(2) == 6);
    CHECK(calc.dim(3) == 6);
    for (int p = 0; p <= 3; ++p) CHECK(calc.junk_dim(p) == 0);
}

TEST_CASE("e_1, e_2 form a free right basis of Omega^1") {
    const DifferentialCalculus& calc = testutil::three_point();
    auto check = calc.free_basis_check();
    REQUIRE(std::holds_alternative<DifferentialCalculus::FreeBasis>(check));
    CHECK(std::get<DifferentialCalculus::FreeBasis>(check).basis.size() == 2);

    // Round trip through right-basis coordinates over A.
    std::mt19937 rng(41);
    for (int t = 0; t < 120; ++t) {
        Form x = testutil::rand_form(calc, 1, rng);
        CHECK(calc.from_right_coords(calc.right_coords(x)) == x);
    }
}

TEST_CASE("the four bimodule relation families hold as exact identities") {
    const DifferentialCalculus& calc = testutil::three_point();
    auto base = calc.base();
    auto one = AlgebraElement::one(base);
    // e_i = class of d(chi_i) for all three points; e_3 = -e_1 - e_2.
    for (int i = 1; i <= 3; ++i) {
        AlgebraElement ci = AlgebraElement::chi(base, i);
        CHECK(ci * calc.e(i) == calc.e(i) * (one - ci));
        CHECK(calc.e(i) * ci == (one - ci) * calc.e(i));
        for (int j = 1; j <= 3; ++j) {
            if (j == i) continue;
            AlgebraElement cj = AlgebraElement::chi(base, j);
            CHECK(ci * calc.e(j) == -(calc.e(i) * cj));
            CHECK(calc.e(i) * cj == -(ci * calc.e(j)));
        }
    }
    CHECK(calc.e(3) == -(calc.e(1) + calc.e(2)));
}

TEST_CASE("forms are represented exactly as block operators") {
    const DifferentialCalculus& calc = testutil::three_point();
    std::mt19937 rng(42);
    for (int t = 0; t < 100; ++t) {
        Form x = testutil::rand_form(calc, 1, rng);
        Form y = testutil::rand_form(calc, 1, rng);
        // Quotient coordinates of the represented operator recover the form.
        CHECK(calc.coords_of((x + y).represent(), 1) == (x + y).coords());
    }
}

TEST_CASE("degree zero calculus is just the algebra") {
    DifferentialCalculus calc(testutil::make_triple("three-point"), 0);
    CHECK(calc.max_degree() == 0);
    CHECK(calc.dim(0) == 3);
    CHECK(calc.junk_dim(0) == 0);
    CHECK_THROWS(calc.space(1));
}

TEST_CASE("two-point path has a rank-1 free basis") {
    GraphTripleSpec spec = GraphTripleSpec::from_json_text(
        R"({"points": ["a", "b"], "edges": [{"i": 1, "j": 2}]})");
    DifferentialCalculus calc(std::make_shared<SpectralTriple>(spec), 3);
    CHECK(calc.dim(0) == 2);
    CHECK(calc.dim(1) == 2);
    auto check = calc.free_basis_check();
    REQUIRE(std::holds_alternative<DifferentialCalculus::FreeBasis>(check));
    CHECK(std::get<DifferentialCalculus::FreeBasis>(check).basis.size() == 1);
}

TEST_CASE("a triple with an uncovered point has no free basis") {
    GraphTripleSpec spec = GraphTripleSpec::from_json_text(
        R"({"points": ["a", "b", "c"], "edges": [{"i": 1, "j": 2}]})");
    DifferentialCalculus calc(std::make_shared<SpectralTriple>(spec), 1);
    auto check = calc.free_basis_check();
    REQUIRE(std::holds_alternative<NotFree>(check));
    CHECK_THROWS_AS(calc.bimodule_table(), NotFreeError);
}
