#include "hptkit/excore.hpp"

#include <sstream>

#include "hptkit/errors.hpp"
#include "hptkit/linalg.hpp"

namespace hptkit {

using linalg::Matrix;
using linalg::Vector;

Report validate_complex(const ChainComplex& complex) {
    Report report("chain complex");
    const GradedMap dd = compose(complex.d(), complex.d());
    if (dd.is_zero()) {
        report.add("d2", true);
        return report;
    }
    const auto zero = GradedMap::zero(complex.module(), complex.module(), -2);
    std::ostringstream os;
    os << "d∘d ≠ 0 at ";
    bool first = true;
    for (const auto& diff : all_differences(dd, zero, 64)) {
        os << (first ? "" : "; ") << diff;
        first = false;
    }
    report.add("d2", false, os.str());
    return report;
}

void require_complex(const ChainComplex& complex, const char* what) {
    const Report r = validate_complex(complex);
    if (!r.passed()) throw ContractViolation(std::string(what) + ": " + r.checks().front().detail);
}

// ---------------------------------------------------------------------------

std::optional<SparseColumn> ImageSubcomplex::coordinates(int degree, const SparseColumn& v) const {
    SparseColumn coords;
    auto it = pivot_rows.find(degree);
    if (it != pivot_rows.end()) {
        for (std::size_t k = 0; k < it->second.size(); ++k) {
            auto jt = v.find(it->second[k]);
            if (jt != v.end()) coords.emplace(k, jt->second);
        }
    }
    if (inclusion.apply(degree, coords) != v) return std::nullopt;
    return coords;
}

GradedMap ImageSubcomplex::corestrict(const GradedMap& f) const {
    if (!same_module(f.target(), inclusion.target())) {
        throw StructuralError("corestrict: map does not land in the ambient complex");
    }
    GradedMap out(f.source(), complex.module(), f.degree());
    for (int deg : f.support()) {
        const int tdeg = deg + f.degree();
        for (std::size_t c = 0; c < f.source()->dim(deg); ++c) {
            const auto& col = f.column(deg, c);
            if (col.empty()) continue;
            auto coords = coordinates(tdeg, col);
            if (!coords) {
                throw ContractViolation("corestrict: image of " + f.source()->labels(deg)[c] +
                                        " leaves the subcomplex");
            }
            for (const auto& [k, v] : *coords) out.set(deg, k, c, v);
        }
    }
    return out;
}

ImageSubcomplex image_subcomplex(const ChainComplex& complex, const GradedMap& t) {
    const auto& N = complex.module();
    if (t.degree() != 0 || !same_module(t.source(), N) || !same_module(t.target(), N)) {
        throw StructuralError("image_subcomplex: expected a degree 0 endomorphism of the complex");
    }
    if (compose(complex.d(), t) != compose(t, complex.d())) {
        throw ContractViolation("image_subcomplex: map is not a chain map (d t ≠ t d)");
    }

    GradedModule::LabelMap labels;
    std::map<int, std::vector<Vector>> bases;
    std::map<int, std::vector<std::size_t>> pivots;
    for (int deg : N->degrees()) {
        std::vector<std::size_t> rows;
        auto basis = linalg::column_space_basis(linalg::block(t, deg), &rows);
        if (basis.empty()) continue;
        auto& names = labels[deg];
        for (auto r : rows) names.push_back(N->labels(deg)[r]);
        bases.emplace(deg, std::move(basis));
        pivots.emplace(deg, std::move(rows));
    }
    auto M = make_module(std::move(labels));

    GradedMap inclusion(M, N, 0);
    for (const auto& [deg, basis] : bases) {
        for (std::size_t k = 0; k < basis.size(); ++k) {
            for (std::size_t r = 0; r < basis[k].size(); ++r) inclusion.set(deg, r, k, basis[k][r]);
        }
    }

    ImageSubcomplex image{ChainComplex(M), inclusion, pivots};
    GradedMap d_restricted = image.corestrict(compose(complex.d(), inclusion));
    image.complex = ChainComplex(M, std::move(d_restricted));
    require_complex(image.complex, "image_subcomplex");
    return image;
}

// ---------------------------------------------------------------------------

std::size_t default_cap(const GradedModule& module) { return 1 + module.total_dim(); }

NeumannSeries neumann_series(const GradedMap& u, std::optional<std::size_t> cap) {
    if (u.degree() != 0 || !same_module(u.source(), u.target())) {
        throw StructuralError("neumann_series: expected a degree 0 endomorphism");
    }
    const std::size_t limit = cap.value_or(default_cap(*u.source()));
    const GradedMap minus_u = -u;
    GradedMap term = GradedMap::identity(u.source());
    GradedMap sum = term;
    std::size_t terms = 1;
    while (true) {
        term = compose(minus_u, term);
        if (term.is_zero()) break;
        if (terms >= limit) {
            throw NonNilpotentError("Neumann series did not terminate within " + std::to_string(limit) +
                                        " iterations",
                                    terms);
        }
        sum += term;
        ++terms;
    }
    return {std::move(sum), terms};
}

GradedMap neumann_inverse(const GradedMap& u, std::optional<std::size_t> cap) {
    NeumannSeries series = neumann_series(u, cap);
    const GradedMap one_plus_u = GradedMap::identity(u.source()) + u;
    const GradedMap id = GradedMap::identity(u.source());
    if (compose(one_plus_u, series.value) != id || compose(series.value, one_plus_u) != id) {
        throw InternalConsistencyError("neumann_inverse: result is not a two-sided inverse of 1 + u");
    }
    return std::move(series.value);
}

// ---------------------------------------------------------------------------

namespace {

// Per-degree splitting N_j = B_j ⊕ H_j ⊕ C_j with B = im d, B ⊕ H = ker d.
struct Splitting {
    std::vector<Vector> boundaries;
    std::vector<Vector> harmonic;
    std::vector<std::string> harmonic_labels;
    std::vector<Vector> complement;
    Matrix coords;  // inverse of [B | H | C]
};

// Appends candidates to `basis` whenever they raise its rank.
template <typename Candidates, typename OnAccept>
void extend_basis(std::size_t dim, std::vector<Vector>& basis, const Candidates& candidates, OnAccept on_accept) {
    std::size_t current = basis.size();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        basis.push_back(candidates[i]);
        if (linalg::rank(Matrix::from_columns(dim, basis)) > current) {
            ++current;
            on_accept(i);
        } else {
            basis.pop_back();
        }
    }
}

}  // namespace

Contraction homology_contraction(const ChainComplex& complex) {
    require_complex(complex, "homology_contraction");
    const auto& N = complex.module();
    std::map<int, Splitting> split;

    for (int deg : N->degrees()) {
        const std::size_t dim = N->dim(deg);
        Splitting s;
        s.boundaries = linalg::column_space_basis(linalg::block(complex.d(), deg + 1));
        std::vector<std::size_t> free_cols;
        const auto cycles = linalg::nullspace(linalg::block(complex.d(), deg), &free_cols);

        std::vector<Vector> basis = s.boundaries;
        extend_basis(dim, basis, cycles, [&](std::size_t i) {
            s.harmonic.push_back(cycles[i]);
            s.harmonic_labels.push_back(N->labels(deg)[free_cols[i]]);
        });

        std::vector<Vector> units;
        for (std::size_t k = 0; k < dim; ++k) {
            Vector e(dim);
            e[k] = 1;
            units.push_back(std::move(e));
        }
        extend_basis(dim, basis, units, [&](std::size_t i) { s.complement.push_back(units[i]); });

        auto inv = linalg::inverse(Matrix::from_columns(dim, basis));
        if (!inv) throw InternalConsistencyError("homology_contraction: splitting basis is singular");
        s.coords = std::move(*inv);
        split.emplace(deg, std::move(s));
    }

    GradedModule::LabelMap hlabels;
    for (const auto& [deg, s] : split) {
        if (!s.harmonic_labels.empty()) hlabels[deg] = s.harmonic_labels;
    }
    auto H = make_module(std::move(hlabels));

    GradedMap pi(N, H, 0);
    GradedMap nabla(H, N, 0);
    GradedMap h(N, N, 1);
    for (const auto& [deg, s] : split) {
        const std::size_t nb = s.boundaries.size();
        const std::size_t nh = s.harmonic.size();
        const std::size_t dim = N->dim(deg);
        for (std::size_t k = 0; k < nh; ++k) {
            for (std::size_t r = 0; r < dim; ++r) nabla.set(deg, r, k, s.harmonic[k][r]);
            for (std::size_t c = 0; c < dim; ++c) pi.set(deg, k, c, s.coords(nb + k, c));
        }
        if (nb == 0) continue;
        // h = C_{j+1} K⁻¹ Q_B with K the matrix of d: C_{j+1} -> B_j in B-coordinates
        const Splitting& up = split.at(deg + 1);
        const Matrix C = Matrix::from_columns(N->dim(deg + 1), up.complement);
        Matrix QB(nb, dim);
        for (std::size_t r = 0; r < nb; ++r) {
            for (std::size_t c = 0; c < dim; ++c) QB(r, c) = s.coords(r, c);
        }
        const Matrix K = QB * linalg::block(complex.d(), deg + 1) * C;
        auto Kinv = linalg::inverse(K);
        if (!Kinv) throw InternalConsistencyError("homology_contraction: d is not invertible onto boundaries");
        linalg::store_block(h, deg, C * *Kinv * QB);
    }

    return Contraction{ChainComplex(H), complex, std::move(pi), std::move(nabla), std::move(h)};
}

std::map<int, std::size_t> betti_numbers(const ChainComplex& complex) {
    std::map<int, std::size_t> out;
    for (int deg : complex.module()->degrees()) {
        const std::size_t z = complex.module()->dim(deg) - linalg::rank_at(complex.d(), deg);
        const std::size_t b = linalg::rank_at(complex.d(), deg + 1);
        out[deg] = z - b;
    }
    return out;
}

}  // namespace hptkit
