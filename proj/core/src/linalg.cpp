#include "ncg/linalg.hpp"

namespace ncg {

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols, rows);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) t.at(c, r) = at(r, c);
    return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matrix shape mismatch");
    Matrix out(a.rows, b.cols);
    for (int r = 0; r < a.rows; ++r)
        for (int k = 0; k < a.cols; ++k) {
            if (a.at(r, k).is_zero()) continue;
            for (int c = 0; c < b.cols; ++c)
                out.at(r, c) += a.at(r, k) * b.at(k, c);
        }
    return out;
}

Vec mat_vec(const Matrix& m, const Vec& v) {
    if (static_cast<int>(v.size()) != m.cols)
        throw std::invalid_argument("matrix/vector shape mismatch");
    Vec out(m.rows, Scalar(0));
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c)
            if (!m.at(r, c).is_zero()) out[r] += m.at(r, c) * v[c];
    return out;
}

std::vector<int> rref(Matrix& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int pivot = -1;
        for (int r = row; r < m.rows; ++r)
            if (!m.at(r, col).is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(m.data[row], m.data[pivot]);
        Scalar inv = m.at(row, col).inverse();
        for (int c = col; c < m.cols; ++c) m.at(row, c) *= inv;
        for (int r = 0; r < m.rows; ++r) {
            if (r == row || m.at(r, col).is_zero()) continue;
            Scalar factor = m.at(r, col);
            for (int c = col; c < m.cols; ++c)
                m.at(r, c) -= factor * m.at(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

int rank(Matrix m) { return static_cast<int>(rref(m).size()); }

std::vector<Vec> kernel_basis(const Matrix& m) {
    Matrix r = m;
    std::vector<int> pivots = rref(r);
    std::vector<bool> is_pivot(m.cols, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (int free = 0; free < m.cols; ++free) {
        if (is_pivot[free]) continue;
        Vec v(m.cols, Scalar(0));
        v[free] = Scalar(1);
        for (size_t k = 0; k < pivots.size(); ++k)
            v[pivots[k]] = -r.at(static_cast<int>(k), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
    if (static_cast<int>(b.size()) != m.rows)
        throw std::invalid_argument("rhs size mismatch");
    Matrix aug(m.rows, m.cols + 1);
    for (int r = 0; r < m.rows; ++r) {
        for (int c = 0; c < m.cols; ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, m.cols) = b[r];
    }
    std::vector<int> pivots = rref(aug);
    for (int p : pivots)
        if (p == m.cols) return std::nullopt;  // 0 = 1 row
    Vec x(m.cols, Scalar(0));
    for (size_t k = 0; k < pivots.size(); ++k)
        x[pivots[k]] = aug.at(static_cast<int>(k), m.cols);
    return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("inverse of non-square matrix");
    int n = m.rows;
    Matrix aug(n, 2 * n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, n + r) = Scalar(1);
    }
    std::vector<int> pivots = rref(aug);
    if (static_cast<int>(pivots.size()) < n || pivots[n - 1] != n - 1) return std::nullopt;
    Matrix inv(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) inv.at(r, c) = aug.at(r, n + c);
    return inv;
}

bool SpanBasis::add(const Vec& v) {
    if (static_cast<int>(v.size()) != dim_)
        throw std::invalid_argument("span: ambient dimension mismatch");
    Vec residual = v;
    Vec combo(generators_.size() + 1, Scalar(0));
    combo.back() = Scalar(1);
    for (size_t k = 0; k < echelon_.size(); ++k) {
        const Scalar& coef = residual[pivot_cols_[k]];
        if (coef.is_zero()) continue;
        Scalar factor = coef;
        for (int c = 0; c < dim_; ++c) residual[c] -= factor * echelon_[k][c];
        for (size_t j = 0; j < combos_[k].size(); ++j)
            combo[j] -= factor * combos_[k][j];
    }
    int pivot = -1;
    for (int c = 0; c < dim_; ++c)
        if (!residual[c].is_zero()) {
            pivot = c;
            break;
        }
    if (pivot < 0) return false;
    Scalar inv = residual[pivot].inverse();
    for (int c = 0; c < dim_; ++c) residual[c] *= inv;
    for (auto& x : combo) x *= inv;
    // Back-substitute into existing rows to keep the echelon reduced.
    for (size_t k = 0; k < echelon_.size(); ++k) {
        const Scalar factor = echelon_[k][pivot];
        if (factor.is_zero()) continue;
        for (int c = 0; c < dim_; ++c) echelon_[k][c] -= factor * residual[c];
        combos_[k].resize(combo.size(), Scalar(0));
        for (size_t j = 0; j < combo.size(); ++j) combos_[k][j] -= factor * combo[j];
    }
    generators_.push_back(v);
    echelon_.push_back(std::move(residual));
    pivot_cols_.push_back(pivot);
    for (auto& row : combos_) row.resize(generators_.size(), Scalar(0));
    combo.resize(generators_.size(), Scalar(0));
    combos_.push_back(std::move(combo));
    return true;
}

Vec SpanBasis::reduce(const Vec& v) const {
    Vec residual = v;
    for (size_t k = 0; k < echelon_.size(); ++k) {
        const Scalar coef = residual[pivot_cols_[k]];
        if (coef.is_zero()) continue;
        for (int c = 0; c < dim_; ++c) residual[c] -= coef * echelon_[k][c];
    }
    return residual;
}

bool SpanBasis::contains(const Vec& v) const {
    Vec r = reduce(v);
    for (const auto& s : r)
        if (!s.is_zero()) return false;
    return true;
}

std::optional<Vec> SpanBasis::coordinates(const Vec& v) const {
    Vec residual = v;
    Vec coords(generators_.size(), Scalar(0));
    for (size_t k = 0; k < echelon_.size(); ++k) {
        const Scalar coef = residual[pivot_cols_[k]];
        if (coef.is_zero()) continue;
        for (int c = 0; c < dim_; ++c) residual[c] -= coef * echelon_[k][c];
        for (size_t j = 0; j < combos_[k].size(); ++j)
            coords[j] += coef * combos_[k][j];
    }
    for (const auto& s : residual)
        if (!s.is_zero()) return std::nullopt;
    return coords;
}

}  // namespace ncg
