#pragma once

// Test helpers and independent dense oracles (plain Gauss-Jordan on mpq_class,
// written separately from the library's elimination code).

#include <optional>
#include <string>
#include <vector>

#include "hptkit/graded.hpp"
#include "hptkit/scalar.hpp"

namespace oracle {

using hptkit::Scalar;
using Dense = std::vector<std::vector<Scalar>>;

inline Dense dense(const hptkit::GradedMap& f, int deg) {
    const std::size_t rows = f.target()->dim(deg + f.degree());
    const std::size_t cols = f.source()->dim(deg);
    Dense m(rows, std::vector<Scalar>(cols));
    for (std::size_t c = 0; c < cols; ++c) {
        for (const auto& [r, v] : f.column(deg, c)) m[r][c] = v;
    }
    return m;
}

inline std::size_t rank(Dense m) {
    std::size_t r = 0;
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            const Scalar f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

inline std::optional<Dense> inverse(Dense m) {
    const std::size_t n = m.size();
    Dense inv(n, std::vector<Scalar>(n));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return std::nullopt;
        std::swap(m[p], m[c]);
        std::swap(inv[p], inv[c]);
        const Scalar d = m[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            m[c][j] /= d;
            inv[c][j] /= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || m[i][c] == 0) continue;
            const Scalar f = m[i][c];
            for (std::size_t j = 0; j < n; ++j) {
                m[i][j] -= f * m[c][j];
                inv[i][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

inline Dense multiply(const Dense& a, const Dense& b) {
    const std::size_t n = a.size();
    const std::size_t k = b.size();
    const std::size_t m = k ? b[0].size() : 0;
    Dense out(n, std::vector<Scalar>(m));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
        }
    }
    return out;
}

inline Dense identity(std::size_t n) {
    Dense out(n, std::vector<Scalar>(n));
    for (std::size_t i = 0; i < n; ++i) out[i][i] = 1;
    return out;
}

}  // namespace oracle
