#include <doctest.h>

#include "hptkit/errors.hpp"
#include "hptkit/examples.hpp"
#include "hptkit/perturbation.hpp"
#include "hptkit/random_instances.hpp"
#include "support.hpp"

using namespace hptkit;

namespace {

// Dense (1 + u)⁻¹ per degree from the Gauss-Jordan oracle.
void check_inverse_oracle(const GradedMap& computed, const GradedMap& u) {
    const auto& M = u.source();
    for (int deg : M->degrees()) {
        oracle::Dense one_plus = oracle::dense(u, deg);
        for (std::size_t i = 0; i < one_plus.size(); ++i) one_plus[i][i] += 1;
        const auto inv = oracle::inverse(one_plus);
        REQUIRE(inv);
        CHECK(oracle::dense(computed, deg) == *inv);
    }
}

}  // namespace

TEST_CASE("check_perturbation") {
    const StandardExample ex = standard_example();
    CHECK(check_perturbation(ex.perturbation).passed());
    const auto& N = ex.perturbation.base;
    CHECK(check_perturbation({N, GradedMap::zero(N.module(), N.module(), -1)}).passed());

    const auto M = make_module({{0, {"e0"}}, {1, {"e1"}}, {2, {"e2"}}});
    GradedMap del(M, M, -1);
    del.set("e2", "e1", 1);
    del.set("e1", "e0", 1);
    const Perturbation bad{ChainComplex(M), del};
    CHECK_FALSE(check_perturbation(bad).passed());
    CHECK_THROWS_AS(perturbed_complex(bad), ContractViolation);
}

TEST_CASE("standard example kit") {
    const StandardExample ex = standard_example();
    const Contraction& c = ex.contraction;
    const PerturbedKit kit = build_kit(Structure{c}, ex.perturbation);
    const auto& N = c.N.module();
    CHECK(kit.alpha == GradedMap::identity(N));
    CHECK(kit.beta.coeff("c", "c") == 1);
    CHECK(kit.beta.coeff("c", "a") == -2);
    CHECK(kit.pi_del->coeff("c", "a") == -2);
    CHECK(*kit.nabla_del == c.nabla);
    CHECK(kit.h_del == c.h);
    CHECK(kit.Dcal->is_zero());
    CHECK(kit.beta_terms == 2);
    check_inverse_oracle(kit.beta, compose(ex.perturbation.del, c.h));

    const PerturbationInput in = perturbation_input(c);
    const Report ids = verify_kit_identities(kit, in, ex.perturbation);
    CHECK(ids.passed());
    CHECK(ids.checks().size() == 7);
    const Report series = series_formulas_check(kit, in, ex.perturbation);
    CHECK(series.passed());

    const ContractionResult r = perturb_contraction(c, ex.perturbation);
    CHECK(r.report.passed());
    const GradedMap pn = compose(r.contraction.pi, r.contraction.nabla);
    CHECK(pn.coeff("a", "a") == 1);
    CHECK(compose(r.contraction.pi, r.contraction.h).coeff("c", "a") == 0);
    CHECK(compose(r.contraction.h, r.contraction.nabla).is_zero());

    const GradedMap dd = r.contraction.N.d();
    const GradedMap lhs = compose(dd, r.contraction.h) + compose(r.contraction.h, dd);
    CHECK(lhs.coeff("c", "c") == 1);
    CHECK(lhs.coeff("c", "a") == 2);
    const GradedMap rhs = GradedMap::identity(N) - compose(r.contraction.nabla, r.contraction.pi);
    CHECK(lhs == rhs);
}

TEST_CASE("standard example lifted to a pseudocontraction") {
    const StandardExample ex = standard_example();
    const Pseudocontraction p = weak_to_pseudo(ex.contraction.as_weak());
    const PseudoResult r = perturb_pseudo(p, ex.perturbation);
    CHECK(r.kit.t_del.coeff("c", "a") == -2);
    CHECK(r.kit.t_del.coeff("a", "a") == 1);
    CHECK(r.pseudo.tau.coeff("c", "c") == 1);
    CHECK(r.pseudo.tau.coeff("c", "a") == 2);
    CHECK(validate_structure(r.pseudo).passed());
}

TEST_CASE("zero perturbation leaves the data unchanged") {
    const StandardExample ex = standard_example();
    const Contraction& c = ex.contraction;
    const Perturbation zero{c.N, GradedMap::zero(c.N.module(), c.N.module(), -1)};
    const ContractionResult r = perturb_contraction(c, zero);
    CHECK(r.kit.alpha == GradedMap::identity(c.N.module()));
    CHECK(r.kit.beta == GradedMap::identity(c.N.module()));
    CHECK(r.contraction.pi == c.pi);
    CHECK(r.contraction.nabla == c.nabla);
    CHECK(r.contraction.h == c.h);
    CHECK(r.Dcal.is_zero());
    const Report series = series_formulas_check(r.kit, perturbation_input(c), zero);
    for (const auto& check : series.checks()) CHECK(check.detail.rfind("1 ", 0) == 0);
}

TEST_CASE("cone perturbations are rejected") {
    for (long lambda : {1L, 2L, -3L}) {
        const ConeExample cone = cone_example(lambda);
        try {
            (void)build_kit(Structure{cone.pseudo}, cone.perturbation);
            FAIL("kit returned");
        } catch (const InvertibilityUnestablished& e) {
            CHECK(e.iterations() > 0);
            CHECK(std::string(e.what()).find("not established") != std::string::npos);
        }
    }
    const ConeExample half = cone_example(Scalar(1, 2));
    CHECK_THROWS_AS(perturb_contraction(half.contraction, half.perturbation, 20), InvertibilityUnestablished);
    const ConeExample none = cone_example(0);
    CHECK(perturb_pseudo(none.pseudo, none.perturbation).report.passed());
}

TEST_CASE("random pseudocontractions: kit against the inverse oracle (property)") {
    for (std::uint64_t seed = 500; seed < 560; ++seed) {
        const PseudoInstance inst = random_pseudo_instance(seed);
        const Perturbation& p = inst.perturbation;
        const PerturbedKit kit = build_kit(Structure{inst.pseudo}, p);
        check_inverse_oracle(kit.alpha, compose(inst.pseudo.h, p.del));
        check_inverse_oracle(kit.beta, compose(p.del, inst.pseudo.h));
        CHECK(kit.alpha_terms <= p.base.module()->total_dim() + 1);
        CHECK(kit_properties(kit, p).passed());
        CHECK(verify_kit_identities(kit, perturbation_input(inst.pseudo), p).passed());
    }
}

TEST_CASE("scaled pseudocontractions with nilpotent perturbations (property)") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const PseudoInstance inst = random_pseudo_instance(seed);
        Pseudocontraction p = inst.pseudo;
        p.tau *= 2;
        p.h *= 2;
        REQUIRE(validate_structure(p).passed());
        const PseudoResult r = perturb_pseudo(p, inst.perturbation);
        CHECK(r.report.passed());
    }
}

TEST_CASE("random weak contractions and contractions (property)") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        const PseudoInstance inst = random_pseudo_instance(seed);
        const WeakResult w = perturb_weak(pseudo_to_weak(inst.pseudo), inst.perturbation);
        CHECK(w.report.passed());
        CHECK(w.report.find("tech1")->passed);
        CHECK(w.report.find("tech3-iso")->passed);

        const ContractionInstance ci = random_contraction_instance(seed);
        const ContractionResult c = perturb_contraction(ci.contraction, ci.perturbation);
        CHECK(c.report.passed());
        CHECK(hodge_decomposition_check(ci.contraction).passed());
        CHECK(series_formulas_check(c.kit, perturbation_input(ci.contraction), ci.perturbation).passed());
    }
}
