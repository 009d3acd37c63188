#include <random>

#include "doctest.h"
#include "ncg/linalg.hpp"
#include "test_helpers.hpp"

using namespace ncg;

namespace {

Matrix rand_matrix(int r, int c, std::mt19937& rng) {
    Matrix m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = testutil::rand_scalar(rng);
    return m;
}

}  // namespace

TEST_CASE("rank plus kernel dimension equals column count; kernel annihilates") {
    std::mt19937 rng(31);
    for (int t = 0; t < 120; ++t) {
        int r = 1 + t % 5, c = 1 + (t * 7) % 6;
        Matrix m = rand_matrix(r, c, rng);
        auto ker = kernel_basis(m);
        CHECK(rank(m) + static_cast<int>(ker.size()) == c);
        for (const Vec& v : ker) {
            Vec mv = mat_vec(m, v);
            for (const Scalar& s : mv) CHECK(s.is_zero());
        }
    }
}

TEST_CASE("solve returns an exact solution when one exists") {
    std::mt19937 rng(32);
    for (int t = 0; t < 120; ++t) {
        int r = 2 + t % 4, c = 2 + (t * 5) % 4;
        Matrix m = rand_matrix(r, c, rng);
        Vec x = testutil::rand_vec(c, rng);
        Vec b = mat_vec(m, x);
        auto sol = solve(m, b);
        REQUIRE(sol.has_value());
        CHECK(mat_vec(m, *sol) == b);
    }
}

TEST_CASE("inverse multiplies back to the identity") {
    std::mt19937 rng(33);
    int found = 0;
    while (found < 100) {
        int n = 2 + found % 3;
        Matrix m = rand_matrix(n, n, rng);
        auto inv = inverse(m);
        if (!inv) continue;
        CHECK(m * *inv == Matrix::identity(n));
        CHECK(*inv * m == Matrix::identity(n));
        ++found;
    }
    Matrix z(3, 3);  // singular
    CHECK(!inverse(z).has_value());
}

TEST_CASE("span basis recovers coordinates of members") {
    std::mt19937 rng(34);
    for (int t = 0; t < 100; ++t) {
        int n = 4 + t % 3;
        SpanBasis span(n);
        std::vector<Vec> gens;
        for (int g = 0; g < 3; ++g) {
            Vec v = testutil::rand_vec(n, rng);
            if (span.add(v)) gens.push_back(v);
        }
        Vec combo(n, Scalar(0));
        Vec coeffs;
        for (const Vec& g : gens) {
            Scalar c = testutil::rand_scalar(rng);
            coeffs.push_back(c);
            for (int i = 0; i < n; ++i) combo[i] += c * g[i];
        }
        CHECK(span.contains(combo));
        auto got = span.coordinates(combo);
        REQUIRE(got.has_value());
        CHECK(*got == coeffs);
        for (const Scalar& s : span.reduce(combo)) CHECK(s.is_zero());
    }
}
