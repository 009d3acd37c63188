#include "ncg/algebra.hpp"

#include <algorithm>
#include <unordered_set>

namespace ncg {

PointSet::PointSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw std::invalid_argument("point set must be nonempty");
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_)
        if (!seen.insert(l).second)
            throw std::invalid_argument("duplicate point label '" + l + "'");
}

PointSetPtr make_points(std::vector<std::string> labels) {
    return std::make_shared<const PointSet>(std::move(labels));
}

PointSetPtr make_points(int n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (int i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
    return make_points(std::move(labels));
}

AlgebraElement::AlgebraElement(PointSetPtr base, std::vector<Scalar> values)
    : base_(std::move(base)), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != base_->size())
        throw std::invalid_argument("value count does not match point count");
}

AlgebraElement AlgebraElement::one(const PointSetPtr& base) {
    return AlgebraElement(base, std::vector<Scalar>(base->size(), Scalar(1)));
}

AlgebraElement AlgebraElement::zero(const PointSetPtr& base) {
    return AlgebraElement(base, std::vector<Scalar>(base->size(), Scalar(0)));
}

AlgebraElement AlgebraElement::chi(const PointSetPtr& base, int i) {
    if (i < 1 || i > base->size())
        throw IndexOutOfRange("chi index " + std::to_string(i) + " out of range");
    std::vector<Scalar> v(base->size(), Scalar(0));
    v[i - 1] = Scalar(1);
    return AlgebraElement(base, std::move(v));
}

const Scalar& AlgebraElement::operator()(int i) const {
    if (i < 1 || i > size())
        throw IndexOutOfRange("point index " + std::to_string(i) + " out of range");
    return values_[i - 1];
}

bool AlgebraElement::is_zero() const {
    return std::all_of(values_.begin(), values_.end(),
                       [](const Scalar& s) { return s.is_zero(); });
}

AlgebraElement AlgebraElement::involution() const {
    std::vector<Scalar> v;
    v.reserve(values_.size());
    for (const auto& s : values_) v.push_back(s.conj());
    return AlgebraElement(base_, std::move(v));
}

namespace {
void check_base(const AlgebraElement& a, const AlgebraElement& b) {
    if (!(*a.base() == *b.base())) throw BaseMismatch();
}
}  // namespace

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
    check_base(a, b);
    std::vector<Scalar> v;
    v.reserve(a.values_.size());
    for (size_t k = 0; k < a.values_.size(); ++k) v.push_back(a.values_[k] + b.values_[k]);
    return AlgebraElement(a.base_, std::move(v));
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
    check_base(a, b);
    std::vector<Scalar> v;
    v.reserve(a.values_.size());
    for (size_t k = 0; k < a.values_.size(); ++k) v.push_back(a.values_[k] - b.values_[k]);
    return AlgebraElement(a.base_, std::move(v));
}

AlgebraElement operator-(const AlgebraElement& a) {
    std::vector<Scalar> v;
    v.reserve(a.values_.size());
    for (const auto& s : a.values_) v.push_back(-s);
    return AlgebraElement(a.base_, std::move(v));
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    check_base(a, b);
    std::vector<Scalar> v;
    v.reserve(a.values_.size());
    for (size_t k = 0; k < a.values_.size(); ++k) v.push_back(a.values_[k] * b.values_[k]);
    return AlgebraElement(a.base_, std::move(v));
}

AlgebraElement operator*(const Scalar& c, const AlgebraElement& a) {
    std::vector<Scalar> v;
    v.reserve(a.values_.size());
    for (const auto& s : a.values_) v.push_back(c * s);
    return AlgebraElement(a.base_, std::move(v));
}

bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return *a.base_ == *b.base_ && a.values_ == b.values_;
}

std::string AlgebraElement::str() const {
    std::string out = "(";
    for (size_t k = 0; k < values_.size(); ++k) {
        if (k) out += ", ";
        out += values_[k].str();
    }
    return out + ")";
}

std::variant<AlgebraElement, NotAUnit> try_invert(const AlgebraElement& f) {
    std::vector<int> vanishing;
    for (int i = 1; i <= f.size(); ++i)
        if (f(i).is_zero()) vanishing.push_back(i);
    if (!vanishing.empty()) return NotAUnit{std::move(vanishing)};
    std::vector<Scalar> v;
    v.reserve(f.size());
    for (int i = 1; i <= f.size(); ++i) v.push_back(f(i).inverse());
    return AlgebraElement(f.base(), std::move(v));
}

}  // namespace ncg
