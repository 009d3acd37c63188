#pragma once

// The commutative *-algebra A = C(Y) of functions on a finite point set,
// in the point (chi) basis, plus the conjugate-bimodule tagging rules.

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "ncg/scalar.hpp"

namespace ncg {

struct BaseMismatch : std::invalid_argument {
    BaseMismatch() : std::invalid_argument("algebra elements live over different point sets") {}
};

struct IndexOutOfRange : std::out_of_range {
    explicit IndexOutOfRange(const std::string& what) : std::out_of_range(what) {}
};

class PointSet {
public:
    explicit PointSet(std::vector<std::string> labels);

    int size() const { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }

    friend bool operator==(const PointSet& a, const PointSet& b) {
        return a.labels_ == b.labels_;
    }

private:
    std::vector<std::string> labels_;
};

using PointSetPtr = std::shared_ptr<const PointSet>;

PointSetPtr make_points(std::vector<std::string> labels);
PointSetPtr make_points(int n);  // labels "1".."n"

// A function on the point set: one Scalar per point. Multiplication is
// componentwise (the chi basis diagonalizes A).
class AlgebraElement {
public:
    AlgebraElement(PointSetPtr base, std::vector<Scalar> values);

    // The unit and zero of A, and the indicator chi_i (1-based index).
    static AlgebraElement one(const PointSetPtr& base);
    static AlgebraElement zero(const PointSetPtr& base);
    static AlgebraElement chi(const PointSetPtr& base, int i);

    const PointSetPtr& base() const { return base_; }
    int size() const { return static_cast<int>(values_.size()); }
    const Scalar& operator()(int i) const;  // value at point i, 1-based
    const std::vector<Scalar>& values() const { return values_; }

    bool is_zero() const;

    AlgebraElement involution() const;  // componentwise conjugate

    friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
    friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
    friend AlgebraElement operator-(const AlgebraElement& a);
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
    friend AlgebraElement operator*(const Scalar& c, const AlgebraElement& a);

    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b);
    friend bool operator!=(const AlgebraElement& a, const AlgebraElement& b) {
        return !(a == b);
    }

    std::string str() const;

private:
    PointSetPtr base_;
    std::vector<Scalar> values_;
};

// Failure value for try_invert: the element vanishes at these points
// (1-based) and so is not a unit of A.
struct NotAUnit {
    std::vector<int> vanishing_points;
};

// Componentwise inverse when f is a unit; otherwise the vanishing set.
std::variant<AlgebraElement, NotAUnit> try_invert(const AlgebraElement& f);

// An element of a conjugate bimodule: same underlying value, with the
// twisted actions a*conj(e) = conj(e*a.involution()) and
// conj(e)*a = conj(a.involution()*e). T must support a*T and T*a.
template <typename T>
struct Conj {
    T value;

    friend bool operator==(const Conj& x, const Conj& y) { return x.value == y.value; }
};

template <typename T>
Conj<T> operator*(const AlgebraElement& a, const Conj<T>& e) {
    return Conj<T>{e.value * a.involution()};
}

template <typename T>
Conj<T> operator*(const Conj<T>& e, const AlgebraElement& a) {
    return Conj<T>{a.involution() * e.value};
}

}  // namespace ncg
