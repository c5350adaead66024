#include <doctest.h>

#include "hptkit/contraction.hpp"
#include "hptkit/errors.hpp"
#include "hptkit/examples.hpp"
#include "hptkit/random_instances.hpp"

using namespace hptkit;

TEST_CASE("cone is a pseudocontraction with all three compar conditions") {
    const Pseudocontraction cone = cone_example(1).pseudo;
    CHECK(validate_structure(cone).passed());
    const ComparClassification k = compar_classify(cone);
    CHECK(k.holds);
    CHECK(k.hodge_axioms.passed());
    CHECK(k.idempotent_side.passed());
    CHECK(k.side_conditions.passed());
}

TEST_CASE("tau = 2 example is a pseudocontraction but not Hodge data") {
    const Pseudocontraction p = scaled_cone_pseudo();
    CHECK(validate_structure(p).passed());
    const HodgeData hd{p.N, GradedMap::identity(p.N.module()) - p.tau, p.h};
    const Report r = validate_structure(hd);
    CHECK_FALSE(r.passed());
    const ComparClassification k = compar_classify(p);
    CHECK_FALSE(k.holds);
    CHECK_FALSE(k.hodge_axioms.passed());
    CHECK_FALSE(k.idempotent_side.passed());
    CHECK_FALSE(k.side_conditions.passed());

    const WeakContraction w = pseudo_to_weak(p);
    CHECK(validate_structure(w).passed());
    CHECK(w.M.module()->total_dim() == 2);
    const auto& e0 = w.M.module()->labels(0);
    REQUIRE(e0.size() == 1);
    CHECK(w.pi.coeff("e0", e0[0]) == -1);
}

TEST_CASE("standard example is a contraction") {
    const Contraction c = standard_example().contraction;
    const Report r = validate_structure(c);
    CHECK(r.passed());
    for (const char* label : {"co0", "co1", "side1", "side-pi-h", "side-h-nabla", "pi-chain", "nabla-chain"}) {
        REQUIRE(r.find(label));
        CHECK(r.find(label)->passed);
    }
}

TEST_CASE("weak_to_pseudo") {
    const Contraction c = standard_example().contraction;
    const Pseudocontraction p = weak_to_pseudo(c.as_weak());
    CHECK(p.tau.coeff("c", "c") == 1);
    CHECK(p.tau.coeff("a", "a") == 0);
    CHECK(p.tau.coeff("b", "b") == 1);
    CHECK(compar_classify(p).holds);

    const ChainComplex& N = c.N;
    const auto id = GradedMap::identity(N.module());
    const WeakContraction same{N, N, id, id, GradedMap::zero(N.module(), N.module(), 1)};
    CHECK(weak_to_pseudo(same).tau.is_zero());

    const ConeExample cone = cone_example(1);
    CHECK(weak_to_pseudo(cone.contraction.as_weak()).tau == GradedMap::identity(cone.pseudo.N.module()));
}

TEST_CASE("pseudo_to_weak") {
    const ConeExample cone = cone_example(1);
    CHECK(pseudo_to_weak(cone.pseudo).M.module()->total_dim() == 0);

    const ChainComplex& N = cone.pseudo.N;
    const Pseudocontraction zero{N, GradedMap::zero(N.module(), N.module(), 0),
                                 GradedMap::zero(N.module(), N.module(), 1)};
    const WeakContraction w = pseudo_to_weak(zero);
    CHECK(w.M.module()->total_dim() == 2);
    CHECK(validate_structure(w).passed());
}

TEST_CASE("invalid structures fail the right axiom") {
    Contraction c = standard_example().contraction;
    c.h.set("c", "b", 2);
    const Report r = validate_structure(c);
    CHECK_FALSE(r.find("co1")->passed);
    CHECK(r.find("co0")->passed);
    CHECK_THROWS_AS(weak_to_pseudo(c.as_weak()), ContractViolation);
}

TEST_CASE("shape mismatch throws") {
    Contraction c = standard_example().contraction;
    c.pi = GradedMap::identity(c.N.module());
    CHECK_THROWS_AS((void)validate_structure(c), StructuralError);
}

TEST_CASE("Hodge decomposition of fixed complexes") {
    const Contraction c = homology_contraction(standard_example().perturbation.base);
    const Report r = hodge_decomposition_check(c);
    CHECK(r.passed());
    REQUIRE(r.find("deg 0"));
    CHECK(r.find("deg 0")->detail.find("1 + 1 + 0") != std::string::npos);
    REQUIRE(r.find("deg 1"));
    CHECK(r.find("deg 1")->detail.find("0 + 0 + 1") != std::string::npos);

    const ConeExample cone = cone_example(1);
    const Report rc = hodge_decomposition_check(homology_contraction(cone.pseudo.N));
    CHECK(rc.passed());
    CHECK(rc.find("deg 0")->detail.find("1 + 0 + 0") != std::string::npos);
    CHECK(rc.find("deg 1")->detail.find("0 + 0 + 1") != std::string::npos);

    const ChainComplex Z(make_module({{0, {"a", "b"}}}));
    const Report rz = hodge_decomposition_check(homology_contraction(Z));
    CHECK(rz.find("deg 0")->detail.find("0 + 2 + 0") != std::string::npos);
}

TEST_CASE("every contraction yields Hodge data (property)") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const Contraction c = homology_contraction(random_complex(seed));
        CHECK(validate_structure(c).passed());
        CHECK(hodge_decomposition_check(c).passed());
        const ComparClassification k = compar_classify(weak_to_pseudo(c.as_weak()));
        CHECK(k.holds);
    }
}

TEST_CASE("pseudo and weak round trip (property)") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const PseudoInstance inst = random_pseudo_instance(seed);
        CHECK(validate_structure(inst.pseudo).passed());
        const WeakContraction w = pseudo_to_weak(inst.pseudo);
        CHECK(validate_structure(w).passed());
        const Pseudocontraction back = weak_to_pseudo(w);
        CHECK(back.h == inst.pseudo.h);
        CHECK(back.tau == inst.pseudo.tau);
        CHECK(validate_structure(back).passed());
    }
}
