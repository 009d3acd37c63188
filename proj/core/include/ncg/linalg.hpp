#pragma once

// Exact dense linear algebra over Q(i): echelon reduction with
// deterministic pivot choice (first nonzero column, first row), kernels,
// solving, inversion, and an incremental span with coordinate recovery.

#include <optional>
#include <vector>

#include "ncg/scalar.hpp"

namespace ncg {

using Vec = std::vector<Scalar>;

struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<Vec> data;  // row-major

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), data(r, Vec(c, Scalar(0))) {}

    Scalar& at(int r, int c) { return data[r][c]; }
    const Scalar& at(int r, int c) const { return data[r][c]; }

    static Matrix identity(int n);
    Matrix transpose() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
    }
};

Vec mat_vec(const Matrix& m, const Vec& v);

// In-place reduced row echelon form; returns pivot column per pivot row.
std::vector<int> rref(Matrix& m);

int rank(Matrix m);

// Basis of {x : m x = 0}, deterministic (one vector per free column, in
// column order, free coordinate set to 1).
std::vector<Vec> kernel_basis(const Matrix& m);

// One solution of m x = b, or nullopt when inconsistent.
std::optional<Vec> solve(const Matrix& m, const Vec& b);

// Inverse of a square matrix, or nullopt when singular.
std::optional<Matrix> inverse(const Matrix& m);

// Incrementally built subspace of Q(i)^n. Remembers the original
// generating vectors that enlarged the span, so members can be expressed
// back in those generators.
class SpanBasis {
public:
    explicit SpanBasis(int ambient_dim) : dim_(ambient_dim) {}

    int ambient_dim() const { return dim_; }
    int size() const { return static_cast<int>(generators_.size()); }
    const std::vector<Vec>& generators() const { return generators_; }

    // Adds v; returns true iff v was outside the current span.
    bool add(const Vec& v);

    bool contains(const Vec& v) const;

    // Residual of v after eliminating against the echelon rows; the
    // canonical representative of v modulo this subspace.
    Vec reduce(const Vec& v) const;

    // Coordinates of v in the generator basis, or nullopt if v is
    // outside the span.
    std::optional<Vec> coordinates(const Vec& v) const;

private:
    int dim_;
    std::vector<Vec> generators_;
    std::vector<Vec> echelon_;       // reduced rows, unit pivots, distinct pivot cols
    std::vector<int> pivot_cols_;    // pivot column of each echelon row
    std::vector<Vec> combos_;        // echelon_[k] = sum_j combos_[k][j] * generators_[j]
};

}  // namespace ncg
