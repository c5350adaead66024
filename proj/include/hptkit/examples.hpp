#pragma once

// Small fixed structures used throughout the tests and the acceptance suite.

#include "hptkit/perturbation.hpp"
#include "hptkit/structures.hpp"

namespace hptkit {

/// N: b (degree 1), a, c (degree 0), d(b) = c; M = span{a}; π(a) = ∇(a) = a,
/// h(c) = b; ∂(b) = 2a.
struct StandardExample {
    Contraction contraction;
    Perturbation perturbation;
};
StandardExample standard_example();

/// Cone e1 → e0 with d(e1) = e0, h(e0) = e1, τ = 1, and ∂(e1) = λe0. The
/// contraction is onto the zero complex.
struct ConeExample {
    Pseudocontraction pseudo;
    Contraction contraction;
    Perturbation perturbation;
};
ConeExample cone_example(const Scalar& lambda);

/// d(e1) = 2e0, h(e0) = e1, τ = 2: a pseudocontraction that is not Hodge data.
Pseudocontraction scaled_cone_pseudo();

}  // namespace hptkit
