#pragma once

// Perturbation lemma machinery: α = (1+h∂)⁻¹, β = (1+∂h)⁻¹ and the perturbed
// operators, for pseudocontractions, weak contractions and contractions.

#include <cstddef>
#include <optional>

#include "hptkit/contraction.hpp"
#include "hptkit/graded.hpp"
#include "hptkit/report.hpp"
#include "hptkit/structures.hpp"

namespace hptkit {

/// A degree −1 operator ∂ on the complex N with (d + ∂)² = 0.
struct Perturbation {
    ChainComplex base;
    GradedMap del;
};

/// One "perturbation-square-zero" line: d∂ + ∂d + ∂² = 0.
Report check_perturbation(const Perturbation& p);

/// N with differential d + ∂. Throws ContractViolation if ∂ is not a perturbation.
ChainComplex perturbed_complex(const Perturbation& p);

/// Operators common to all three structure kinds. `t` is 1 − τ for a
/// pseudocontraction and ∇π otherwise; the M side is present only for (weak) contractions.
struct PerturbationInput {
    ChainComplex N;
    GradedMap t;
    GradedMap h;
    std::optional<ChainComplex> M;
    std::optional<GradedMap> pi;
    std::optional<GradedMap> nabla;
};

PerturbationInput perturbation_input(const Pseudocontraction& s);
PerturbationInput perturbation_input(const WeakContraction& s);
PerturbationInput perturbation_input(const Contraction& s);
PerturbationInput perturbation_input(const Structure& s);

struct PerturbedKit {
    GradedMap alpha;      // (1 + h∂)⁻¹
    GradedMap beta;       // (1 + ∂h)⁻¹
    GradedMap t_del;      // αtβ
    GradedMap h_del;      // αh
    std::optional<GradedMap> Dcal;       // π∂α∇
    std::optional<GradedMap> nabla_del;  // α∇
    std::optional<GradedMap> pi_del;     // πβ
    std::size_t alpha_terms = 0;
    std::size_t beta_terms = 0;
};

/// Validates the structure and the perturbation, inverts 1 + h∂ and 1 + ∂h by
/// terminating Neumann series and computes the perturbed operators. Asserts
/// αh = hβ and π∂α∇ = πβ∂∇ before returning.
///
/// Throws ContractViolation for invalid input, InvertibilityUnestablished when a
/// series does not terminate within `cap` (default 1 + dim N), and
/// InvariantViolation when a cross-identity fails.
PerturbedKit build_kit(const PerturbationInput& in, const Perturbation& p,
                       std::optional<std::size_t> cap = std::nullopt);
PerturbedKit build_kit(const Structure& s, const Perturbation& p, std::optional<std::size_t> cap = std::nullopt);

/// Operator identities on N with x ↦ ∂, s ↦ h, τ ↦ dh + hd:
/// "insp3" β + ∂αh = 1, "insp4" α + hβ∂ = 1, "dif1" dα − αd = −α(τ∂ + h∂²)α,
/// "dif2" dβ − βd = β(∂τ + ∂²h)β, "comm" ∂α = β∂, "comm2" αh = hβ and, with an M
/// side, "plainly" αtβ = ∇_∂π_∂.
Report verify_kit_identities(const PerturbedKit& kit, const PerturbationInput& in, const Perturbation& p);

/// Recomputes h_∂, t_∂ and, with an M side, ∇_∂, π_∂, 𝒟 by the explicit sums
/// Σ(−h∂)ⁿ, Σ(−∂h)ⁿ and compares them with the kit. Each line records the number
/// of terms. Throws NonNilpotentError past `cap`.
Report series_formulas_check(const PerturbedKit& kit, const PerturbationInput& in, const Perturbation& p,
                             std::optional<std::size_t> cap = std::nullopt);

/// Properties every kit satisfies: "h_del-square" h_∂² = 0, "t_del-chain"
/// (d+∂)t_∂ = t_∂(d+∂), "h_del-homotopy" (d+∂)h_∂ + h_∂(d+∂) = 1 − t_∂.
Report kit_properties(const PerturbedKit& kit, const Perturbation& p, const Window* window = nullptr);

struct PseudoResult {
    Pseudocontraction pseudo;
    PerturbedKit kit;
    Report report;
};

/// (N_∂, N − t_∂, h_∂). Throws InvariantViolation if the output is not a pseudocontraction.
PseudoResult perturb_pseudo(const Pseudocontraction& s, const Perturbation& p,
                            std::optional<std::size_t> cap = std::nullopt);

struct WeakResult {
    WeakContraction weak;
    GradedMap Dcal;
    PerturbedKit kit;
    Report report;
};

/// (M_𝒟 ⇄ N_∂, h_∂) with M carrying d + 𝒟. The report holds the weak-contraction
/// axioms, "MD-square-zero", "tech1" π_∂(d+∂) = (d+𝒟)π_∂, "tech2"
/// (d+∂)∇_∂ = ∇_∂(d+𝒟) and the "tech3" lines on ∇_∂: M_𝒟 → t_∂N.
/// Throws InvariantViolation if any of them fails.
WeakResult perturb_weak(const WeakContraction& w, const Perturbation& p,
                        std::optional<std::size_t> cap = std::nullopt);

struct ContractionResult {
    Contraction contraction;
    GradedMap Dcal;
    PerturbedKit kit;
    Report report;
};

/// The perturbed contraction. Additionally checks π_∂∇_∂ = M, π_∂h_∂ = 0, h_∂∇_∂ = 0.
ContractionResult perturb_contraction(const Contraction& c, const Perturbation& p,
                                      std::optional<std::size_t> cap = std::nullopt);

/// "tech3-image" im ∇_∂ ⊆ im t_∂ and "tech3-iso" ∇_∂ is bijective onto t_∂N in
/// every degree (rank tests).
Report content_isomorphism_check(const PerturbedKit& kit, const ChainComplex& M);

}  // namespace hptkit
