#include "hptkit/random_instances.hpp"

#include <algorithm>
#include <tuple>

#include "hptkit/errors.hpp"
#include "hptkit/excore.hpp"
#include "hptkit/linalg.hpp"

namespace hptkit {

namespace {

using linalg::Matrix;
using linalg::Vector;

int weight_of(const WeightedComplex& wc, int deg, std::size_t k) { return wc.weight.at(deg).at(k); }

std::vector<std::size_t> with_weight(const WeightedComplex& wc, int deg, int w) {
    std::vector<std::size_t> out;
    auto it = wc.weight.find(deg);
    if (it == wc.weight.end()) return out;
    for (std::size_t k = 0; k < it->second.size(); ++k) {
        if (it->second[k] == w) out.push_back(k);
    }
    return out;
}

Matrix select_columns(const Matrix& m, const std::vector<std::size_t>& cols) {
    Matrix out(m.rows(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        for (std::size_t r = 0; r < m.rows(); ++r) out(r, c) = m(r, cols[c]);
    }
    return out;
}

// Random element of the span of `basis` (vectors indexed like `positions`).
Vector random_combination(Rng& rng, const std::vector<Vector>& basis, std::size_t length) {
    Vector v(length);
    for (const auto& b : basis) {
        if (!rng.chance(2, 3)) continue;
        const long c = rng.small_nonzero();
        for (std::size_t i = 0; i < length; ++i) v[i] += c * b[i];
    }
    return v;
}

// Fills column `col` of f (source degree deg) with a random vector from the span of
// `basis`, expressed over the target positions `rows`.
void fill_column(Rng& rng, GradedMap& f, int deg, std::size_t col, const std::vector<Vector>& basis,
                 const std::vector<std::size_t>& rows) {
    if (basis.empty() || !rng.chance(7, 8)) return;
    const Vector v = random_combination(rng, basis, rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!is_zero(v[i])) f.set(deg, rows[i], col, v[i]);
    }
}

std::vector<int> sorted_degrees(const WeightedComplex& wc) {
    std::vector<int> out;
    for (const auto& [deg, ws] : wc.weight) out.push_back(deg);
    return out;
}

std::optional<GradedMap> solve_gaps(Rng& rng, const WeightedComplex& wc, int max_gap) {
    const auto& N = wc.complex.module();
    const GradedMap& d = wc.complex.d();
    GradedMap del = GradedMap::zero(N, N, -1);
    std::vector<GradedMap> parts;  // parts[g-1] lowers the weight by exactly g

    for (int gap = 1; gap <= max_gap; ++gap) {
        std::vector<std::tuple<int, std::size_t, std::size_t>> unknowns;  // (deg, row, col)
        for (int deg : N->degrees()) {
            for (std::size_t col = 0; col < N->dim(deg); ++col) {
                const int w = weight_of(wc, deg, col);
                for (std::size_t row : with_weight(wc, deg - 1, w - gap)) unknowns.emplace_back(deg, row, col);
            }
        }
        GradedMap rhs = GradedMap::zero(N, N, -2);
        for (int a = 1; a < gap; ++a) rhs -= compose(parts[a - 1], parts[gap - a - 1]);

        std::map<std::tuple<int, std::size_t, std::size_t>, std::size_t> eq_index;
        auto index = [&eq_index](int deg, std::size_t row, std::size_t col) {
            auto key = std::make_tuple(deg, row, col);
            auto it = eq_index.find(key);
            if (it != eq_index.end()) return it->second;
            const std::size_t k = eq_index.size();
            eq_index.emplace(key, k);
            return k;
        };
        std::vector<std::vector<std::pair<std::size_t, Scalar>>> columns;
        for (const auto& [deg, row, col] : unknowns) {
            GradedMap e(N, N, -1);
            e.set(deg, row, col, 1);
            const GradedMap image = compose(d, e) + compose(e, d);
            std::vector<std::pair<std::size_t, Scalar>> entries;
            image.for_each([&](int sd, std::size_t r, std::size_t c, const Scalar& v) {
                entries.emplace_back(index(sd, r, c), v);
            });
            columns.push_back(std::move(entries));
        }
        std::vector<std::pair<std::size_t, Scalar>> b_entries;
        rhs.for_each([&](int sd, std::size_t r, std::size_t c, const Scalar& v) {
            b_entries.emplace_back(index(sd, r, c), v);
        });

        Matrix A(eq_index.size(), unknowns.size());
        for (std::size_t u = 0; u < columns.size(); ++u) {
            for (const auto& [row, v] : columns[u]) A(row, u) = v;
        }
        Vector b(eq_index.size());
        for (const auto& [row, v] : b_entries) b[row] = v;

        auto particular = linalg::solve(A, b);
        if (!particular) return std::nullopt;
        const auto kernel = linalg::nullspace(A);
        Vector x(unknowns.size());
        for (int draw = 0; draw < 4; ++draw) {
            x = random_combination(rng, kernel, unknowns.size());
            for (std::size_t i = 0; i < x.size(); ++i) x[i] += (*particular)[i];
            if (std::any_of(x.begin(), x.end(), [](const Scalar& v) { return !is_zero(v); })) break;
        }

        GradedMap part(N, N, -1);
        for (std::size_t u = 0; u < unknowns.size(); ++u) {
            const auto& [deg, row, col] = unknowns[u];
            if (!is_zero(x[u])) part.set(deg, row, col, x[u]);
        }
        del += part;
        parts.push_back(std::move(part));
    }
    return del;
}

GradedMap conjugation_perturbation(Rng& rng, const WeightedComplex& wc) {
    const auto& N = wc.complex.module();
    GradedMap n(N, N, 0);
    for (int deg : N->degrees()) {
        for (std::size_t col = 0; col < N->dim(deg); ++col) {
            for (std::size_t row = 0; row < N->dim(deg); ++row) {
                if (weight_of(wc, deg, row) < weight_of(wc, deg, col) && rng.chance(1, 2)) {
                    n.set(deg, row, col, rng.small_nonzero());
                }
            }
        }
    }
    const GradedMap g = GradedMap::identity(N) + n;
    const GradedMap g_inv = neumann_inverse(n);
    return product({g, wc.complex.d(), g_inv}) - wc.complex.d();
}

}  // namespace

WeightedComplex random_weighted_complex(Rng& rng, const InstanceShape& shape) {
    const std::size_t n = static_cast<std::size_t>(rng.range(static_cast<long>(shape.min_dim),
                                                             static_cast<long>(shape.max_dim)));
    // A window of two to four consecutive degrees inside the allowed range.
    const int lo = static_cast<int>(rng.range(shape.min_degree, std::max(shape.min_degree, shape.max_degree - 1)));
    const int hi = std::min(shape.max_degree, lo + static_cast<int>(rng.range(1, 3)));
    std::vector<std::pair<int, int>> elements;  // (degree, weight)
    for (std::size_t k = 0; k < n; ++k) {
        const int deg = static_cast<int>(rng.range(lo, hi));
        const int w = static_cast<int>(rng.below(static_cast<std::uint64_t>(shape.weights)));
        elements.emplace_back(deg, w);
    }
    std::stable_sort(elements.begin(), elements.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    GradedModule::LabelMap labels;
    std::map<int, std::vector<int>> weights;
    for (std::size_t k = 0; k < elements.size(); ++k) {
        labels[elements[k].first].push_back("e" + std::to_string(k));
        weights[elements[k].first].push_back(elements[k].second);
    }
    const auto N = make_module(std::move(labels));
    WeightedComplex wc{ChainComplex(N), std::move(weights)};

    GradedMap d(N, N, -1);
    for (int deg : sorted_degrees(wc)) {
        for (int w = 0; w < shape.weights; ++w) {
            const auto targets = with_weight(wc, deg - 1, w);
            if (targets.empty()) continue;
            // Columns of d_deg lie in ker d_{deg-1} restricted to weight w.
            const auto kernel = linalg::nullspace(select_columns(linalg::block(d, deg - 1), targets));
            for (std::size_t col : with_weight(wc, deg, w)) fill_column(rng, d, deg, col, kernel, targets);
        }
    }
    wc.complex = ChainComplex(N, std::move(d));
    require_complex(wc.complex, "random_weighted_complex");
    return wc;
}

GradedMap random_homotopy(Rng& rng, const WeightedComplex& wc) {
    const auto& N = wc.complex.module();
    GradedMap h(N, N, 1);
    auto degrees = sorted_degrees(wc);
    std::reverse(degrees.begin(), degrees.end());
    const int weights = [&wc] {
        int m = 0;
        for (const auto& [deg, ws] : wc.weight) {
            for (int w : ws) m = std::max(m, w + 1);
        }
        return m;
    }();
    for (int deg : degrees) {
        for (int w = 0; w < weights; ++w) {
            const auto targets = with_weight(wc, deg + 1, w);
            if (targets.empty()) continue;
            const auto kernel = linalg::nullspace(select_columns(linalg::block(h, deg + 1), targets));
            for (std::size_t col : with_weight(wc, deg, w)) fill_column(rng, h, deg, col, kernel, targets);
        }
    }
    if (!compose(h, h).is_zero()) throw InternalConsistencyError("random_homotopy: h² ≠ 0");
    return h;
}

Perturbation random_perturbation(Rng& rng, const WeightedComplex& wc, int retries) {
    int max_weight = 0;
    for (const auto& [deg, ws] : wc.weight) {
        for (int w : ws) max_weight = std::max(max_weight, w);
    }
    std::optional<GradedMap> del;
    for (int attempt = 0; attempt < retries && !del; ++attempt) del = solve_gaps(rng, wc, max_weight);
    if (!del) del = conjugation_perturbation(rng, wc);
    Perturbation p{wc.complex, std::move(*del)};
    if (!check_perturbation(p).passed()) throw InternalConsistencyError("random_perturbation: (d + ∂)² ≠ 0");
    return p;
}

PseudoInstance random_pseudo_instance(std::uint64_t seed, const InstanceShape& shape) {
    Rng rng(seed);
    WeightedComplex wc = random_weighted_complex(rng, shape);
    GradedMap h = random_homotopy(rng, wc);
    GradedMap tau = compose(wc.complex.d(), h) + compose(h, wc.complex.d());
    Perturbation p = random_perturbation(rng, wc);
    return {Pseudocontraction{wc.complex, std::move(tau), std::move(h)}, std::move(p)};
}

ContractionInstance random_contraction_instance(std::uint64_t seed, const InstanceShape& shape) {
    Rng rng(seed);
    WeightedComplex wc = random_weighted_complex(rng, shape);
    Contraction c = homology_contraction(wc.complex);
    Perturbation p = random_perturbation(rng, wc);
    return {std::move(c), std::move(p)};
}

ChainComplex random_complex(std::uint64_t seed, const InstanceShape& shape) {
    Rng rng(seed);
    return random_weighted_complex(rng, shape).complex;
}

}  // namespace hptkit
