#pragma once

// Contractions of ℋ, 𝒫, 𝒜 onto the ground field on length-truncated
// realizations, and the perturbed contraction for the twisted differential.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hptkit/freealg.hpp"
#include "hptkit/perturbation.hpp"
#include "hptkit/report.hpp"
#include "hptkit/structures.hpp"

namespace hptkit {

enum class Algebra { H, P, A, Ax };
const char* algebra_name(Algebra a);
/// Accepts "H", "P", "A", "Ax". Throws ParseError otherwise.
Algebra parse_algebra(const std::string& name);

/// Quotient of the algebra by words longer than `bound`. Basis labels are the
/// text form of the words ("1" for the empty word). Because D never shortens a
/// word, the quotient differential squares to zero exactly. Words whose image lost
/// terms to the truncation are listed in `flagged`.
struct TruncatedRealization {
    Algebra algebra;
    std::size_t bound;
    ChainComplex complex;
    std::vector<Word> words;
    std::vector<Word> flagged;
};

TruncatedRealization realize(Algebra algebra, std::size_t bound);

/// Matrix of a linear operator on the realization's basis, truncated at its bound.
GradedMap realize_operator(const TruncatedRealization& r, int degree,
                           const std::function<FreeElement(const Word&)>& op);

/// Homotopies on single words.
FreeElement h_on_H(const Word& w);  // τ^a ↦ τ^{a−1}s, otherwise 0
FreeElement h_on_P(const Word& w);  // x^{2k+2} ↦ −x^{2k+1}, otherwise 0
FreeElement h_on_A(const Word& w);  // h of the first block, times the remaining blocks

struct TransferResult {
    Algebra algebra;
    std::size_t bound;
    TruncatedRealization realization;
    std::optional<Contraction> contraction;
    /// Longest length ℓ such that every axiom holds on all words of length ≤ ℓ.
    std::optional<std::size_t> valid_through;
    /// Length window the criterion is judged on.
    std::size_t window = 0;
    Report report;
    /// Set when a Neumann series of the perturbation step did not terminate.
    std::optional<std::string> nontermination;
    std::vector<std::string> diagnostics;

    /// True when every axiom holds on the window and no series failed to terminate.
    bool passed() const;
};

/// ℋ ⇄ R on words of length ≤ bound; judged on the full realization.
TransferResult contraction_H(std::size_t bound);
/// 𝒫 ⇄ R on x⁰ … x^bound; judged on length ≤ bound − 1.
TransferResult contraction_P(std::size_t bound);
/// 𝒜 ⇄ R on words of length ≤ L; judged on length ≤ L − 1.
TransferResult contraction_A(std::size_t L);
/// Perturbation of contraction_A(L) by ∂ = [x, −]. On nontermination the result
/// carries the iteration count and the kernel of 1 + h∂, if any.
TransferResult contraction_A_twisted(std::size_t L, std::optional<std::size_t> cap = std::nullopt);

TransferResult run_transfer(Algebra algebra, std::size_t bound, std::optional<std::size_t> cap = std::nullopt);

}  // namespace hptkit
