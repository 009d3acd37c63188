#pragma once

// The universal differential calculus over C(Y), worked in the path
// basis: Omega_u^p has C-basis the tuples (i0,...,ip) with consecutive
// entries distinct, where (i0,...,ip) stands for chi_{i0} d(chi_{i1}) ...
// d(chi_{ip}). Products glue with a Kronecker delta, d is the Leibniz
// derivation with d(chi) the signed sum of insertions.

#include <map>
#include <vector>

#include "ncg/algebra.hpp"
#include "ncg/triple.hpp"

namespace ncg {

using Path = std::vector<int>;  // 1-based point indices, consecutive distinct

class UniversalForm {
public:
    UniversalForm(PointSetPtr base, int degree);

    // Degree-0 embedding of an algebra element.
    static UniversalForm from_algebra(const AlgebraElement& f);

    // d(chi_j) as a 1-form: sum_{k != j} path(k,j) - path(j,k).
    static UniversalForm dchi(const PointSetPtr& base, int j);

    // chi_{i0} dchi_{i1} ... dchi_{ip} for an arbitrary index tuple.
    static UniversalForm from_symbol(const PointSetPtr& base, const Path& indices);

    const PointSetPtr& base() const { return base_; }
    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Path, Scalar>& terms() const { return terms_; }

    void add_term(const Path& p, const Scalar& c);

    UniversalForm& operator+=(const UniversalForm& o);
    friend UniversalForm operator+(UniversalForm a, const UniversalForm& b) {
        a += b;
        return a;
    }
    friend UniversalForm operator-(const UniversalForm& a);
    friend UniversalForm operator*(const Scalar& c, const UniversalForm& a);
    friend UniversalForm operator*(const UniversalForm& a, const UniversalForm& b);

    friend bool operator==(const UniversalForm& a, const UniversalForm& b) {
        return a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

private:
    PointSetPtr base_;
    int degree_;
    std::map<Path, Scalar> terms_;
};

// The unique degree-one derivation with d(a) = 1 (x) a - a (x) 1.
UniversalForm universal_d(const UniversalForm& u);

// The involution of the universal *-calculus:
// (a0 da1 ... dap)* = (-1)^{p(p-1)/2} d(ap*) ... d(a1*) a0*.
UniversalForm universal_star(const UniversalForm& u);

// pi_u(a0 da1 ... dap) = pi(a0) [D,a1] ... [D,ap].
BlockOperator pi_u(const UniversalForm& u, const SpectralTriple& triple);

}  // namespace ncg
