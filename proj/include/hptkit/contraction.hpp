#pragma once

// Validators and conversions for pseudocontractions, weak contractions,
// contractions and abstract Hodge decompositions.

#include "hptkit/excore.hpp"
#include "hptkit/report.hpp"
#include "hptkit/structures.hpp"

namespace hptkit {

/// Each validator checks every axiom of its kind exactly and reports one line per
/// axiom. A non-null window restricts the comparison to selected basis elements.
/// Shape mismatches throw StructuralError.
///
/// Labels: pseudocontraction "pc1" (dh+hd=τ), "pc2" (h²=0), "tau-chain" (dτ=τd);
/// weak contraction "pi-chain", "nabla-chain", "pi-surjective", "nabla-injective",
/// "co1" (Dh=N−∇π), "side1" (h²=0); contraction adds "co0" (π∇=M), "side-pi-h",
/// "side-h-nabla"; Hodge data "h2", "Dh", "Dt", "ah4", "ah5".
Report validate_structure(const Pseudocontraction& s, const Window* window = nullptr);
Report validate_structure(const WeakContraction& s, const Window* window = nullptr);
Report validate_structure(const Contraction& s, const Window* window = nullptr);
Report validate_structure(const HodgeData& s, const Window* window = nullptr);
Report validate_structure(const Structure& s, const Window* window = nullptr);

/// Dh = dh + hd for a degree 1 operator on N.
GradedMap homotopy_boundary(const ChainComplex& N, const GradedMap& h);

/// (N, N − ∇π, h). Throws ContractViolation for an invalid weak contraction.
Pseudocontraction weak_to_pseudo(const WeakContraction& w);

/// M = tN with t = 1 − τ, π = t corestricted, ∇ the inclusion.
WeakContraction pseudo_to_weak(const Pseudocontraction& p);

/// Evidence for the three equivalent characterisations of a pseudocontraction
/// that comes from an abstract Hodge decomposition.
struct ComparClassification {
    bool holds = false;
    Report hodge_axioms;      // (i): (h, t = 1 − τ) is an abstract Hodge decomposition
    Report idempotent_side;   // (ii): t² = t and th = ht = 0
    Report side_conditions;   // (iii): h² = 0, th = 0, hj = 0 with j: tN ⊆ N
};

/// Evaluates all three conditions. Throws InvariantViolation if they disagree.
ComparClassification compar_classify(const Pseudocontraction& p);

/// N_j = dN_{j+1} ⊕ 𝓗_j ⊕ h(dN_j) with 𝓗 = ker h ∩ ker d, checked by dimension and
/// rank in every degree ("deg j" lines). The small complex must have zero differential.
Report hodge_decomposition_check(const Contraction& c);

}  // namespace hptkit
