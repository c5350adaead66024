#pragma once

// Exact linear algebra on graded modules: complexes, images, Neumann inverses
// and contractions onto homology.

#include <cstddef>
#include <optional>
#include <vector>

#include "hptkit/graded.hpp"
#include "hptkit/report.hpp"
#include "hptkit/structures.hpp"

namespace hptkit {

/// Square-zero check. One "d2" line; on failure the detail lists every violating
/// (degree, entry) pair.
Report validate_complex(const ChainComplex& complex);

/// Throws ContractViolation unless d² = 0.
void require_complex(const ChainComplex& complex, const char* what);

/// Image tN ⊆ N of a degree-0 chain map, with its basis in reduced column echelon
/// form. Basis element k of degree j is labelled by the N-label of its pivot row.
struct ImageSubcomplex {
    ChainComplex complex;
    GradedMap inclusion;
    /// pivot_rows[j][k]: row of N_j where basis vector k has its leading 1.
    std::map<int, std::vector<std::size_t>> pivot_rows;

    /// Corestricts f: X -> N, whose image must lie in the subcomplex, to X -> M.
    /// Throws ContractViolation if some image leaves the span.
    GradedMap corestrict(const GradedMap& f) const;
    /// Coordinates of a vector of N_degree in the image basis, if it lies in the span.
    std::optional<SparseColumn> coordinates(int degree, const SparseColumn& v) const;
};

/// Throws ContractViolation unless t has degree 0 and commutes with d.
ImageSubcomplex image_subcomplex(const ChainComplex& complex, const GradedMap& t);

/// Partial sum of Σ (−u)ⁿ together with the number of nonzero terms used.
struct NeumannSeries {
    GradedMap value;
    std::size_t terms;
};

/// Default iteration cap: 1 + total dimension.
std::size_t default_cap(const GradedModule& module);

/// Σ_{n≥0} (−u)ⁿ, stops at the first zero term. Throws NonNilpotentError after
/// `cap` nonzero terms.
NeumannSeries neumann_series(const GradedMap& u, std::optional<std::size_t> cap = std::nullopt);

/// (1 + u)⁻¹ by the terminating Neumann series; verified to be a two-sided inverse.
GradedMap neumann_inverse(const GradedMap& u, std::optional<std::size_t> cap = std::nullopt);

/// Contraction of `complex` onto its homology (zero differential). Basis choices
/// follow label order, so the result is deterministic.
Contraction homology_contraction(const ChainComplex& complex);

/// Per-degree Betti numbers of a complex.
std::map<int, std::size_t> betti_numbers(const ChainComplex& complex);

}  // namespace hptkit
