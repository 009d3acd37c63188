#pragma once

// Exact arithmetic over the Gaussian rationals Q(i): the coefficient
// field for all algebra elements, block operators and linear solving.

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <stdexcept>
#include <string>

namespace ncg {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct DivisionByZero : std::domain_error {
    DivisionByZero() : std::domain_error("division by zero in Q(i)") {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// A Gaussian rational re + im*i. cpp_rational keeps components in lowest
// terms with positive denominator, so equality is structural.
class Scalar {
public:
    Scalar() = default;
    Scalar(long n) : re_(n) {}  // NOLINT: implicit by intent
    Scalar(Rational re) : re_(std::move(re)) {}
    Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static Scalar i() { return Scalar(Rational(0), Rational(1)); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    Scalar conj() const { return Scalar(re_, -im_); }

    // Exact multiplicative inverse; throws DivisionByZero on 0.
    Scalar inverse() const;

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        return Scalar(a.re_ + b.re_, a.im_ + b.im_);
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        return Scalar(a.re_ - b.re_, a.im_ - b.im_);
    }
    friend Scalar operator-(const Scalar& a) { return Scalar(-a.re_, -a.im_); }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        return Scalar(a.re_ * b.re_ - a.im_ * b.im_,
                      a.re_ * b.im_ + a.im_ * b.re_);
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        return a * b.inverse();
    }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // Total order used only for canonical sorting of outputs.
    friend bool operator<(const Scalar& a, const Scalar& b) {
        if (a.re_ != b.re_) return a.re_ < b.re_;
        return a.im_ < b.im_;
    }

    // Exact string form "p/q+r/s*i" with lowest-terms components and the
    // sign carried by the numerator, e.g. "0/1+1/1*i" for i.
    std::string str() const;

    // Accepts the canonical grammar plus integer and pure-rational
    // shorthands ("2", "-3/4", "i", "-i", "2*i").
    static Scalar parse(const std::string& text);

private:
    Rational re_{0};
    Rational im_{0};
};

std::string rational_str(const Rational& r);

}  // namespace ncg
