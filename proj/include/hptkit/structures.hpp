#pragma once

#include <variant>

#include "hptkit/graded.hpp"

namespace hptkit {

/// (N, τ, h) with dh + hd = τ and h² = 0; τ need not be idempotent.
struct Pseudocontraction {
    ChainComplex N;
    GradedMap tau;
    GradedMap h;
};

/// M ⇄ N with chain maps π (surjective), ∇ (injective) and homotopy h,
/// subject to Dh = N − ∇π and h² = 0.
struct WeakContraction {
    ChainComplex M;
    ChainComplex N;
    GradedMap pi;
    GradedMap nabla;
    GradedMap h;
};

/// A weak contraction that additionally satisfies π∇ = M, πh = 0 and h∇ = 0.
struct Contraction {
    ChainComplex M;
    ChainComplex N;
    GradedMap pi;
    GradedMap nabla;
    GradedMap h;

    WeakContraction as_weak() const { return {M, N, pi, nabla, h}; }
};

/// Operators t, h on X with h² = 0, Dh = 1 − t, Dt = 0, t² = t, th = ht = 0.
struct HodgeData {
    ChainComplex X;
    GradedMap t;
    GradedMap h;
};

using Structure = std::variant<Pseudocontraction, WeakContraction, Contraction>;

}  // namespace hptkit
