#include <doctest.h>

#include "hptkit/contraction.hpp"
#include "hptkit/json_io.hpp"
#include "hptkit/random_instances.hpp"

using namespace hptkit;

namespace {

// Every nonzero entry of f maps to a strictly smaller weight.
bool lowers_weight(const GradedMap& f, const WeightedComplex& wc) {
    bool ok = true;
    f.for_each([&](int deg, std::size_t row, std::size_t col, const Scalar&) {
        if (wc.weight.at(deg + f.degree())[row] >= wc.weight.at(deg)[col]) ok = false;
    });
    return ok;
}

}  // namespace

TEST_CASE("instances are determined by the seed") {
    for (std::uint64_t seed : {1u, 7u, 42u}) {
        const PseudoInstance a = random_pseudo_instance(seed);
        const PseudoInstance b = random_pseudo_instance(seed);
        CHECK(structure_to_json(a.pseudo) == structure_to_json(b.pseudo));
        CHECK(a.perturbation.del == b.perturbation.del);
    }
    CHECK(structure_to_json(random_pseudo_instance(1).pseudo) != structure_to_json(random_pseudo_instance(2).pseudo));
    Rng r(3);
    Rng s(3);
    for (int i = 0; i < 50; ++i) CHECK(r.range(-4, 9) == s.range(-4, 9));
}

TEST_CASE("weighted generators (property)") {
    std::size_t nonzero = 0;
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
        Rng rng(seed);
        const WeightedComplex wc = random_weighted_complex(rng);
        const auto& M = wc.complex.module();
        CHECK(M->total_dim() >= 4);
        CHECK(M->total_dim() <= 12);
        CHECK(compose(wc.complex.d(), wc.complex.d()).is_zero());
        const GradedMap h = random_homotopy(rng, wc);
        CHECK(compose(h, h).is_zero());
        CHECK(h.degree() == 1);
        const Perturbation p = random_perturbation(rng, wc);
        CHECK(lowers_weight(p.del, wc));
        const GradedMap D = wc.complex.d() + p.del;
        CHECK(compose(D, D).is_zero());
        if (!p.del.is_zero()) ++nonzero;
    }
    CHECK(nonzero >= 60);
}

TEST_CASE("instance builders produce valid structures (property)") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const PseudoInstance inst = random_pseudo_instance(seed);
        CHECK(validate_structure(inst.pseudo).passed());
        const ContractionInstance ci = random_contraction_instance(seed);
        CHECK(validate_structure(ci.contraction).passed());
        CHECK(validate_complex(random_complex(seed)).passed());
    }
}
