#include "ncg/universal.hpp"

namespace ncg {

UniversalForm::UniversalForm(PointSetPtr base, int degree)
    : base_(std::move(base)), degree_(degree) {
    if (degree < 0) throw std::invalid_argument("negative form degree");
}

void UniversalForm::add_term(const Path& p, const Scalar& c) {
    if (static_cast<int>(p.size()) != degree_ + 1)
        throw std::invalid_argument("path length does not match degree");
    if (c.is_zero()) return;
    auto it = terms_.find(p);
    if (it == terms_.end()) {
        terms_.emplace(p, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

UniversalForm UniversalForm::from_algebra(const AlgebraElement& f) {
    UniversalForm u(f.base(), 0);
    for (int i = 1; i <= f.size(); ++i) u.add_term({i}, f(i));
    return u;
}

UniversalForm UniversalForm::dchi(const PointSetPtr& base, int j) {
    if (j < 1 || j > base->size()) throw IndexOutOfRange("dchi index out of range");
    UniversalForm u(base, 1);
    for (int k = 1; k <= base->size(); ++k) {
        if (k == j) continue;
        u.add_term({k, j}, Scalar(1));
        u.add_term({j, k}, Scalar(-1));
    }
    return u;
}

UniversalForm UniversalForm::from_symbol(const PointSetPtr& base, const Path& indices) {
    if (indices.empty()) throw std::invalid_argument("empty symbol");
    UniversalForm u(base, 0);
    u.add_term({indices[0]}, Scalar(1));
    for (size_t k = 1; k < indices.size(); ++k) u = u * dchi(base, indices[k]);
    return u;
}

UniversalForm& UniversalForm::operator+=(const UniversalForm& o) {
    if (degree_ != o.degree_) throw std::invalid_argument("degree mismatch in sum");
    if (!(*base_ == *o.base_)) throw BaseMismatch();
    for (const auto& [p, c] : o.terms_) add_term(p, c);
    return *this;
}

UniversalForm operator-(const UniversalForm& a) {
    UniversalForm out(a.base_, a.degree_);
    for (const auto& [p, c] : a.terms_) out.terms_.emplace(p, -c);
    return out;
}

UniversalForm operator*(const Scalar& c, const UniversalForm& a) {
    UniversalForm out(a.base_, a.degree_);
    if (c.is_zero()) return out;
    for (const auto& [p, x] : a.terms_) out.terms_.emplace(p, c * x);
    return out;
}

UniversalForm operator*(const UniversalForm& a, const UniversalForm& b) {
    if (!(*a.base_ == *b.base_)) throw BaseMismatch();
    UniversalForm out(a.base_, a.degree_ + b.degree_);
    for (const auto& [p, cp] : a.terms_) {
        for (const auto& [q, cq] : b.terms_) {
            if (p.back() != q.front()) continue;  // tensor-over-A gluing
            Path glued = p;
            glued.insert(glued.end(), q.begin() + 1, q.end());
            out.add_term(glued, cp * cq);
        }
    }
    return out;
}

UniversalForm universal_d(const UniversalForm& u) {
    // d(chi_{i0} dchi_{i1}...dchi_{ip}) = dchi_{i0} dchi_{i1} ... dchi_{ip}.
    UniversalForm out(u.base(), u.degree() + 1);
    for (const auto& [p, c] : u.terms()) {
        UniversalForm term = UniversalForm::dchi(u.base(), p[0]);
        for (size_t k = 1; k < p.size(); ++k)
            term = term * UniversalForm::dchi(u.base(), p[k]);
        out += c * term;
    }
    return out;
}

UniversalForm universal_star(const UniversalForm& u) {
    const int p = u.degree();
    // (-1)^{p(p-1)/2}
    Scalar sign((p * (p - 1) / 2) % 2 == 0 ? 1 : -1);
    UniversalForm out(u.base(), p);
    for (const auto& [path, c] : u.terms()) {
        UniversalForm term(u.base(), 0);
        term.add_term({path[0]}, Scalar(1));  // chi_{i0} (self-adjoint)
        // d(chi_{ip}) ... d(chi_{i1}) chi_{i0}, right to left.
        UniversalForm acc = term;
        if (path.size() > 1) {
            acc = UniversalForm::dchi(u.base(), path[path.size() - 1]);
            for (size_t k = path.size() - 2; k >= 1; --k)
                acc = acc * UniversalForm::dchi(u.base(), path[k]);
            acc = acc * term;
        }
        out += (sign * c.conj()) * acc;
    }
    return out;
}

BlockOperator pi_u(const UniversalForm& u, const SpectralTriple& triple) {
    if (!(*u.base() == *triple.base())) throw BaseMismatch();
    BlockOperator out(triple.spec());
    for (const auto& [path, c] : u.terms()) {
        BlockOperator term = triple.represent(AlgebraElement::chi(triple.base(), path[0]));
        for (size_t k = 1; k < path.size(); ++k)
            term = term * triple.commutator(AlgebraElement::chi(triple.base(), path[k]));
        out = out + c * term;
    }
    return out;
}

}  // namespace ncg
