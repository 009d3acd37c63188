#pragma once

// Shared fixtures and exact random generators for the test suites.

#include <memory>
#include <random>

#include "ncg/report.hpp"

namespace testutil {

inline std::shared_ptr<ncg::SpectralTriple> make_triple(const std::string& builtin) {
    return std::make_shared<ncg::SpectralTriple>(ncg::GraphTripleSpec::builtin(builtin));
}

// The builtin three-point calculus, built once per test binary.
inline const ncg::DifferentialCalculus& three_point() {
    static ncg::DifferentialCalculus calc(make_triple("three-point"), 3);
    return calc;
}

inline ncg::Rational rand_rational(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 9);
    return ncg::Rational(num(rng), den(rng));
}

inline ncg::Scalar rand_scalar(std::mt19937& rng) {
    return ncg::Scalar(rand_rational(rng), rand_rational(rng));
}

inline ncg::Scalar rand_nonzero_scalar(std::mt19937& rng) {
    for (;;) {
        ncg::Scalar s = rand_scalar(rng);
        if (!s.is_zero()) return s;
    }
}

inline ncg::AlgebraElement rand_algebra(const ncg::PointSetPtr& base,
                                        std::mt19937& rng) {
    ncg::AlgebraElement f = ncg::AlgebraElement::zero(base);
    for (int k = 1; k <= base->size(); ++k)
        f = f + rand_scalar(rng) * ncg::AlgebraElement::chi(base, k);
    return f;
}

inline ncg::Form rand_form(const ncg::DifferentialCalculus& calc, int degree,
                           std::mt19937& rng) {
    ncg::Vec coords(calc.dim(degree));
    for (auto& c : coords) c = rand_scalar(rng);
    return calc.from_coords(degree, coords);
}

inline ncg::Vec rand_vec(int n, std::mt19937& rng) {
    ncg::Vec v(n);
    for (auto& c : v) c = rand_scalar(rng);
    return v;
}

// g evaluated on x (x) y through the bimodule rule: the middle-leg factor
// of x is converted across the tensor sign before reading off g_{il}.
inline ncg::AlgebraElement metric_eval(const ncg::DifferentialCalculus& calc,
                                       const ncg::MetricMatrix& g, const ncg::Form& x,
                                       const ncg::Form& y) {
    const ncg::BimoduleTable& table = calc.bimodule_table();
    auto xs = calc.right_coords(x);
    auto ys = calc.right_coords(y);
    ncg::AlgebraElement out = ncg::AlgebraElement::zero(calc.base());
    for (int i = 1; i <= g.rank(); ++i)
        for (int j = 1; j <= g.rank(); ++j) {
            auto conv = table.left_convert(xs[i - 1], j);
            for (int l = 1; l <= g.rank(); ++l)
                out = out + g.entry(i, l) * conv[l - 1] * ys[j - 1];
        }
    return out;
}

// Random member of a metric family, sum of random scalar multiples of the
// basis.
inline ncg::MetricMatrix rand_family_member(const ncg::MetricFamily& family,
                                            std::mt19937& rng) {
    ncg::MetricMatrix g = family.basis.at(0);
    for (int i = 1; i <= g.rank(); ++i)
        for (int j = 1; j <= g.rank(); ++j)
            g.entry(i, j) = ncg::AlgebraElement::zero(g.base());
    for (const ncg::MetricMatrix& b : family.basis) {
        ncg::Scalar c = rand_scalar(rng);
        for (int i = 1; i <= g.rank(); ++i)
            for (int j = 1; j <= g.rank(); ++j)
                g.entry(i, j) = g.entry(i, j) + c * b.entry(i, j);
    }
    return g;
}

}  // namespace testutil
