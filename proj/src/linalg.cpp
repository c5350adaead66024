#include "hptkit/linalg.hpp"

#include "hptkit/errors.hpp"

namespace hptkit::linalg {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vector>& columns) {
    Matrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows) throw StructuralError("column length mismatch");
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
    }
    return m;
}

Vector Matrix::column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    }
    return t;
}

Matrix Matrix::operator*(const Matrix& other) const {
    if (cols_ != other.rows_) throw StructuralError("matrix product shape mismatch");
    Matrix out(rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& a = (*this)(r, k);
            if (is_zero(a)) continue;
            for (std::size_t c = 0; c < other.cols_; ++c) {
                if (!is_zero(other(k, c))) out(r, c) += a * other(k, c);
            }
        }
    }
    return out;
}

Vector Matrix::operator*(const Vector& v) const {
    if (cols_ != v.size()) throw StructuralError("matrix-vector shape mismatch");
    Vector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            if (!is_zero(v[c])) out[r] += (*this)(r, c) * v[c];
        }
    }
    return out;
}

std::vector<std::size_t> rref(Matrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && is_zero(m(sel, col))) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row) {
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(sel, c), m(row, c));
        }
        const Scalar inv = 1 / m(row, col);
        for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || is_zero(m(r, col))) continue;
            const Scalar factor = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c) {
                if (!is_zero(m(row, c))) m(r, c) -= factor * m(row, c);
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t rank(const Matrix& m) {
    Matrix copy = m;
    return rref(copy).size();
}

std::vector<Vector> nullspace(const Matrix& m, std::vector<std::size_t>* free_columns) {
    Matrix r = m;
    const auto pivots = rref(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vector v(m.cols());
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, free);
        basis.push_back(std::move(v));
        if (free_columns) free_columns->push_back(free);
    }
    return basis;
}

std::vector<Vector> column_space_basis(const Matrix& m, std::vector<std::size_t>* pivot_rows) {
    Matrix t = m.transpose();
    const auto pivots = rref(t);
    std::vector<Vector> basis;
    basis.reserve(pivots.size());
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        Vector v(m.rows());
        for (std::size_t r = 0; r < m.rows(); ++r) v[r] = t(i, r);
        basis.push_back(std::move(v));
    }
    if (pivot_rows) *pivot_rows = pivots;
    return basis;
}

std::optional<Vector> solve(const Matrix& a, const Vector& b) {
    if (b.size() != a.rows()) throw StructuralError("solve: right-hand side length mismatch");
    Matrix aug(a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
        aug(r, a.cols()) = b[r];
    }
    const auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    Vector x(a.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, a.cols());
    return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    const std::size_t n = m.rows();
    Matrix aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
        aug(r, n + r) = 1;
    }
    const auto pivots = rref(aug);
    if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
    }
    return inv;
}

Matrix block(const GradedMap& f, int src_degree) {
    const std::size_t cols = f.source()->dim(src_degree);
    const std::size_t rows = f.target()->dim(src_degree + f.degree());
    Matrix m(rows, cols);
    for (std::size_t c = 0; c < cols; ++c) {
        for (const auto& [r, v] : f.column(src_degree, c)) m(r, c) = v;
    }
    return m;
}

void store_block(GradedMap& f, int src_degree, const Matrix& m) {
    if (m.cols() != f.source()->dim(src_degree) || m.rows() != f.target()->dim(src_degree + f.degree())) {
        throw StructuralError("store_block: block shape mismatch in degree " + std::to_string(src_degree));
    }
    for (std::size_t c = 0; c < m.cols(); ++c) {
        for (std::size_t r = 0; r < m.rows(); ++r) f.set(src_degree, r, c, m(r, c));
    }
}

Vector to_dense(const SparseColumn& column, std::size_t size) {
    Vector v(size);
    for (const auto& [r, x] : column) v.at(r) = x;
    return v;
}

SparseColumn to_sparse(const Vector& v) {
    SparseColumn out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!is_zero(v[i])) out.emplace(i, v[i]);
    }
    return out;
}

std::size_t rank_at(const GradedMap& f, int src_degree) {
    return rank(block(f, src_degree));
}

}  // namespace hptkit::linalg
