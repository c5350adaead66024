#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hptkit/graded.hpp"
#include "hptkit/scalar.hpp"

namespace hptkit::linalg {

using Vector = std::vector<Scalar>;

/// Dense row-major rational matrix. Used for per-degree reductions only; maps
/// themselves are stored sparsely.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);
    /// Matrix whose columns are `columns`, each of length `rows`.
    static Matrix from_columns(std::size_t rows, const std::vector<Vector>& columns);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vector column(std::size_t c) const;
    Matrix transpose() const;
    Matrix operator*(const Matrix& other) const;
    Vector operator*(const Vector& v) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

/// In-place reduced row echelon form; returns pivot column indices in order.
std::vector<std::size_t> rref(Matrix& m);

std::size_t rank(const Matrix& m);

/// Basis of the kernel: one vector per free column, with 1 at that column.
std::vector<Vector> nullspace(const Matrix& m, std::vector<std::size_t>* free_columns = nullptr);

/// Basis of the column space in reduced column echelon form: each vector has a
/// leading 1 at its pivot row and zeros at the other basis vectors' pivot rows.
/// Ordered by pivot row. `pivot_rows` receives the pivot rows when non-null.
std::vector<Vector> column_space_basis(const Matrix& m, std::vector<std::size_t>* pivot_rows = nullptr);

std::optional<Vector> solve(const Matrix& a, const Vector& b);
std::optional<Matrix> inverse(const Matrix& m);

/// Dense block of `f` for source degree `src_degree`.
Matrix block(const GradedMap& f, int src_degree);
/// Writes a dense block into `f` (overwriting that degree's entries).
void store_block(GradedMap& f, int src_degree, const Matrix& m);

Vector to_dense(const SparseColumn& column, std::size_t size);
SparseColumn to_sparse(const Vector& v);

/// Per-degree rank of `f`.
std::size_t rank_at(const GradedMap& f, int src_degree);

}  // namespace hptkit::linalg
