#include <random>

#include "doctest.h"
#include "json.hpp"
#include "ncg/report.hpp"
#include "test_helpers.hpp"

using namespace ncg;

namespace {

const std::vector<AcsMatrix>& solutions() {
    static std::vector<AcsMatrix> sols =
        std::get<std::vector<AcsMatrix>>(solve_acs(testutil::three_point()));
    return sols;
}

// Deterministic nondegenerate member of a family: sum (a+1) * basis[a].
MetricMatrix weighted_member(const MetricFamily& family) {
    MetricMatrix g = family.basis.at(0);
    for (size_t a = 1; a < family.basis.size(); ++a)
        for (int i = 1; i <= g.rank(); ++i)
            for (int j = 1; j <= g.rank(); ++j)
                g.entry(i, j) = g.entry(i, j) +
                                Scalar(static_cast<long>(a + 1)) *
                                    family.basis[a].entry(i, j);
    return g;
}

}  // namespace

TEST_CASE("metric constraints cut out a bimodule-morphism family") {
    const DifferentialCalculus& calc = testutil::three_point();
    Matrix sys = metric_constraints(calc);
    auto kernel = kernel_basis(sys);
    CHECK(!kernel.empty());

    // Published sample relations at (k, i, j) = (2, 1, 1): every solution
    // has g_21(3) = 0 and g_11(2) = -g_21(2).
    const int n = 3;
    auto flat = [&](int a, int b, int k) { return ((a - 1) * 2 + (b - 1)) * n + (k - 1); };
    for (const Vec& v : kernel) {
        CHECK(v[flat(2, 1, 3)].is_zero());
        CHECK(v[flat(1, 1, 2)] == -v[flat(2, 1, 2)]);
    }

    // Oracle: a family member really is a bimodule morphism, checked by
    // direct evaluation against chi multiplication on random arguments.
    MetricFamily family = solve_compatible_metrics(calc, solutions()[0]);
    std::mt19937 rng(71);
    for (int t = 0; t < 100; ++t) {
        MetricMatrix g = testutil::rand_family_member(family, rng);
        Form x = testutil::rand_form(calc, 1, rng);
        Form y = testutil::rand_form(calc, 1, rng);
        AlgebraElement f = testutil::rand_algebra(calc.base(), rng);
        CHECK(testutil::metric_eval(calc, g, f * x, y) ==
              f * testutil::metric_eval(calc, g, x, y));
        CHECK(testutil::metric_eval(calc, g, x, y * f) ==
              testutil::metric_eval(calc, g, x, y) * f);
    }
}

TEST_CASE("every structure has a six-dimensional compatible family") {
    const DifferentialCalculus& calc = testutil::three_point();
    std::mt19937 rng(72);
    for (const AcsMatrix& J : solutions()) {
        MetricFamily family = solve_compatible_metrics(calc, J);
        CHECK(family.basis.size() == 6);
        CHECK(family.det_conditions.size() == 3);  // one per point

        // Compatibility oracle: g(J x, J y) = g(x, y) on random arguments.
        for (int t = 0; t < 20; ++t) {
            MetricMatrix g = testutil::rand_family_member(family, rng);
            Form x = testutil::rand_form(calc, 1, rng);
            Form y = testutil::rand_form(calc, 1, rng);
            Form Jx = calc.from_right_coords(J.apply(calc.right_coords(x)));
            Form Jy = calc.from_right_coords(J.apply(calc.right_coords(y)));
            CHECK(testutil::metric_eval(calc, g, Jx, Jy) ==
                  testutil::metric_eval(calc, g, x, y));
        }
    }
}

TEST_CASE("metric determinant and pointwise inverse") {
    const DifferentialCalculus& calc = testutil::three_point();
    auto base = calc.base();

    MetricFamily family = solve_compatible_metrics(calc, solutions()[0]);
    MetricMatrix g = weighted_member(family);
    AlgebraElement det = metric_det(g);
    for (int k = 1; k <= 3; ++k) CHECK(!det(k).is_zero());

    auto inv = metric_inverse(g);
    REQUIRE(std::holds_alternative<MetricMatrix>(inv));
    const MetricMatrix& gi = std::get<MetricMatrix>(inv);
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j) {
            AlgebraElement prod = AlgebraElement::zero(base);
            for (int k = 1; k <= 2; ++k) prod = prod + g.entry(i, k) * gi.entry(k, j);
            CHECK(prod == (i == j ? AlgebraElement::one(base)
                                  : AlgebraElement::zero(base)));
        }

    // A metric whose determinant vanishes at points 2 and 3 reports them.
    MetricMatrix sing(2, base);
    sing.entry(1, 1) = AlgebraElement::chi(base, 1);
    sing.entry(2, 2) = AlgebraElement::one(base);
    auto bad = metric_inverse(sing);
    REQUIRE(std::holds_alternative<NotAUnit>(bad));
    CHECK(std::get<NotAUnit>(bad).vanishing_points == std::vector<int>{2, 3});
}

TEST_CASE("fundamental form lies in bidegree (1,1) and is not closed") {
    const DifferentialCalculus& calc = testutil::three_point();
    for (size_t s = 0; s < solutions().size(); ++s) {
        PqSpace pq = extend_and_pq(calc, solutions()[s], 3);
        MetricFamily family = solve_compatible_metrics(calc, solutions()[s]);
        MetricMatrix g = weighted_member(family);
        auto omega = fundamental_form(calc, g, pq);
        REQUIRE(std::holds_alternative<Form>(omega));
        const Form& w = std::get<Form>(omega);
        CHECK(mat_vec(pq.component(1, 1).projection, w.coords()) == w.coords());
        // No nondegenerate compatible metric is Kahler here.
        Vec domega = kahler_check(w);
        bool zero = true;
        for (const Scalar& c : domega) zero = zero && c.is_zero();
        CHECK(!zero);
    }
}

TEST_CASE("every structure yields a verifiable nonexistence certificate") {
    const DifferentialCalculus& calc = testutil::three_point();
    for (size_t s = 0; s < solutions().size(); ++s) {
        PqSpace pq = extend_and_pq(calc, solutions()[s], 3);
        auto outcome = kahler_search_certificate(calc, solutions()[s], pq);
        REQUIRE(std::holds_alternative<NoKahlerCertificate>(outcome));
        const auto& cert = std::get<NoKahlerCertificate>(outcome);
        CHECK(cert.witness_point >= 1);
        CHECK(cert.solution_basis.size() == 3);
        CHECK(rank(cert.combined_system) +
                  static_cast<int>(cert.solution_basis.size()) ==
              cert.combined_system.cols);

        // Oracle: every kernel vector annihilates the system.
        for (const Vec& v : cert.solution_basis)
            for (const Scalar& c : mat_vec(cert.combined_system, v))
                CHECK(c.is_zero());

        std::string text = certificate_to_json(cert, *calc.triple().spec());
        CertificateVerification v = verify_certificate_json(text);
        CHECK(v.ok);
        CHECK(v.failures.empty());
    }
}

TEST_CASE("tampered certificates are rejected") {
    const DifferentialCalculus& calc = testutil::three_point();
    PqSpace pq = extend_and_pq(calc, solutions()[0], 3);
    auto outcome = kahler_search_certificate(calc, solutions()[0], pq);
    const auto& cert = std::get<NoKahlerCertificate>(outcome);
    std::string text = certificate_to_json(cert, *calc.triple().spec());

    auto tampered = nlohmann::json::parse(text);
    tampered["solution_basis"][0][0] = "7/1+0/1*i";
    CertificateVerification v1 = verify_certificate_json(tampered.dump());
    CHECK(!v1.ok);
    CHECK(!v1.failures.empty());

    auto wrong_witness = nlohmann::json::parse(text);
    wrong_witness["witness_point"] = 0;
    CHECK(!verify_certificate_json(wrong_witness.dump()).ok);

    auto wrong_j = nlohmann::json::parse(text);
    wrong_j["j"][0][0][0] = "0/1+2/1*i";
    CHECK(!verify_certificate_json(wrong_j.dump()).ok);

    CHECK(!verify_certificate_json("{}").ok);
    CHECK(!verify_certificate_json("not json").ok);
}

TEST_CASE("hermitian metrics induce compatible metrics") {
    const DifferentialCalculus& calc = testutil::three_point();
    std::mt19937 rng(74);
    for (const AcsMatrix& J : solutions()) {
        MetricFamily hermitian = solve_hermitian_metrics(calc, J);
        CHECK(hermitian.basis.size() == 6);

        Matrix metric_sys = metric_constraints(calc);
        Matrix compat_sys = compatibility_constraints(calc, J);
        const int n = 3;
        auto flat = [&](int a, int b, int k) {
            return ((a - 1) * 2 + (b - 1)) * n + (k - 1);
        };
        for (int t = 0; t < 15; ++t) {
            MetricMatrix h = testutil::rand_family_member(hermitian, rng);
            MetricMatrix g = hermitian_induce(calc, h);
            Vec v(12, Scalar(0));
            for (int a = 1; a <= 2; ++a)
                for (int b = 1; b <= 2; ++b)
                    for (int k = 1; k <= n; ++k) v[flat(a, b, k)] = g.entry(a, b)(k);
            for (const Scalar& c : mat_vec(metric_sys, v)) CHECK(c.is_zero());
            for (const Scalar& c : mat_vec(compat_sys, v)) CHECK(c.is_zero());
        }
    }
}
