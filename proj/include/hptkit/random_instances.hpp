#pragma once

// Seeded random complexes, pseudocontractions, contractions and perturbations.
// Every basis element carries an auxiliary weight; d and h preserve it and ∂
// strictly lowers it, so h∂ and ∂h are nilpotent.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "hptkit/perturbation.hpp"
#include "hptkit/structures.hpp"

namespace hptkit {

/// mt19937_64 with explicit reductions so that sequences are identical across
/// standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t below(std::uint64_t n) { return engine_() % n; }
    long range(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
    bool chance(unsigned num, unsigned den) { return below(den) < num; }
    /// Nonzero integer in [−2, 2].
    long small_nonzero() { return chance(1, 2) ? range(1, 2) : -range(1, 2); }

private:
    std::mt19937_64 engine_;
};

struct InstanceShape {
    std::size_t min_dim = 4;
    std::size_t max_dim = 12;
    int min_degree = 0;
    int max_degree = 5;
    int weights = 5;
};

struct WeightedComplex {
    ChainComplex complex;
    /// weight[j][k] of basis element k in degree j.
    std::map<int, std::vector<int>> weight;
};

/// Random d: weight preserving, d² = 0 by choosing im d_j inside ker d_{j−1}.
WeightedComplex random_weighted_complex(Rng& rng, const InstanceShape& shape = {});

/// Weight-preserving degree +1 map with h² = 0 (im h_j inside ker h_{j+1}, top down).
GradedMap random_homotopy(Rng& rng, const WeightedComplex& wc);

/// ∂ strictly lowering the weight with (d + ∂)² = 0, solved gap by gap. After
/// `retries` inconsistent attempts it falls back to g d g⁻¹ − d with g unipotent.
Perturbation random_perturbation(Rng& rng, const WeightedComplex& wc, int retries = 16);

struct PseudoInstance {
    Pseudocontraction pseudo;
    Perturbation perturbation;
};

/// Random pseudocontraction (τ = dh + hd) with a random admissible perturbation.
PseudoInstance random_pseudo_instance(std::uint64_t seed, const InstanceShape& shape = {});

struct ContractionInstance {
    Contraction contraction;
    Perturbation perturbation;
};

/// homology_contraction of a random weighted complex, with a random perturbation.
ContractionInstance random_contraction_instance(std::uint64_t seed, const InstanceShape& shape = {});

/// Random complex (no weights exposed).
ChainComplex random_complex(std::uint64_t seed, const InstanceShape& shape = {});

}  // namespace hptkit
