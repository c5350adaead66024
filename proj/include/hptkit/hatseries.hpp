#pragma once

// Word-length truncated model of the algebra with 1 + sx and 1 + xs inverted.
// An element of order L is exact on words of length ≤ L; longer words are unknown.

#include <cstddef>
#include <string>
#include <vector>

#include "hptkit/freealg.hpp"
#include "hptkit/report.hpp"

namespace hptkit {

class HatElement {
public:
    HatElement(FreeElement body, std::size_t order);

    const FreeElement& body() const noexcept { return body_; }
    std::size_t order() const noexcept { return order_; }

    /// Further truncation to `order` (must not exceed the current order).
    HatElement truncated(std::size_t order) const;

    /// Equality on every word of length ≤ min(orders).
    bool agrees_with(const HatElement& other) const;

private:
    FreeElement body_;
    std::size_t order_;
};

HatElement operator+(const HatElement& a, const HatElement& b);
HatElement operator-(const HatElement& a, const HatElement& b);
HatElement operator-(const HatElement& a);
HatElement operator*(const Scalar& c, const HatElement& a);
HatElement multiply(const HatElement& a, const HatElement& b, RewriteLog* log = nullptr);
HatElement operator*(const HatElement& a, const HatElement& b);

/// An exact element viewed at order L.
HatElement at_order(const FreeElement& a, std::size_t L);

/// D termwise; D never shortens words, so the order is kept.
HatElement differential(const HatElement& a, RewriteLog* log = nullptr);

/// α_L = Σ_{2n≤L} (−sx)ⁿ and β_L = Σ_{2n≤L} (−xs)ⁿ.
HatElement alpha_series(std::size_t L);
HatElement beta_series(std::size_t L);

/// Images of the generators: φ(x) = −x, φ(s) = αs, φ(τ) = 1 − αtβ, all at order L.
struct PhiImages {
    HatElement x, s, tau;
    /// Valuation loss of φ: max(0, 1 − smallest valuation of a generator image).
    std::size_t loss;
};
PhiImages phi_generators(std::size_t L);

/// Multiplicative, linear extension of φ. The output order is the input order
/// minus the valuation loss.
HatElement phi_map(const HatElement& a, RewriteLog* log = nullptr);

/// "insp1" β = 1 − xαs, "insp2" α = 1 − sβx, "insp3" β + xαs = 1,
/// "insp4" α + sβx = 1, plus "alpha-inverse" and "beta-inverse".
Report inspection_identities_check(std::size_t L);

/// "dif1" Dα = −α(τx + sx²)α, "dif2" Dβ = β(xτ + x²s)β, "comm" xα = βx, "comm2" αs = sβ.
Report dalpha_dbeta_check(std::size_t L);

/// "phi2-x", "phi2-s", "phi2-t", "phi-alpha" φ(α)α = 1, "phi-beta" φ(β)β = 1,
/// "phi-alpha-inverse" φ(α) = 1 + sx, "phi-s2" φ(s)² = 0, "phi-s-tau" φ(s)φ(τ) = φ(τ)φ(s).
Report involution_check(std::size_t L);

/// Reduction trace of the structural check, one block of lines per generator.
struct StructuralTrace {
    std::vector<std::string> lines;
};

/// "structural-x", "structural-s", "structural-t": φ(D(φ(g))) = Dg + [x, g] modulo
/// words longer than L − c. "structural-x-exact" records exact equality for g = x
/// (when x² fits in the window).
Report structural_check(std::size_t L, StructuralTrace* trace = nullptr);

}  // namespace hptkit
