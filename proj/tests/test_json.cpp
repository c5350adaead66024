#include <doctest.h>

#include "hptkit/contraction.hpp"
#include "hptkit/errors.hpp"
#include "hptkit/examples.hpp"
#include "hptkit/json_io.hpp"
#include "hptkit/random_instances.hpp"

using namespace hptkit;

namespace {

std::string parse_error_location(const Json& j) {
    try {
        (void)structure_from_json(j);
    } catch (const ParseError& e) {
        return e.location();
    }
    return "<no error>";
}

}  // namespace

TEST_CASE("complex round trip") {
    const ChainComplex c = standard_example().perturbation.base;
    const Json j = complex_to_json(c);
    const ChainComplex back = complex_from_json(j);
    CHECK(back.d() == c.d());
    CHECK(complex_to_json(back) == j);
    CHECK(j["d"][0]["coeff"] == "1");
}

TEST_CASE("structure round trips") {
    const StandardExample ex = standard_example();
    const std::vector<ParsedStructure> all{
        ex.perturbation.base, cone_example(1).pseudo, ex.contraction.as_weak(), ex.contraction,
        HodgeData{ex.contraction.N, compose(ex.contraction.nabla, ex.contraction.pi), ex.contraction.h}};
    for (const auto& s : all) {
        const Json j = structure_to_json(s);
        const ParsedStructure back = structure_from_json(j);
        CHECK(std::string(structure_kind(back)) == structure_kind(s));
        CHECK(structure_to_json(back) == j);
    }
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const PseudoInstance inst = random_pseudo_instance(seed);
        const Json j = structure_to_json(inst.pseudo);
        const auto back = std::get<Pseudocontraction>(structure_from_json(parse_json_text(j.dump(), "text")));
        CHECK(back.tau == inst.pseudo.tau);
        CHECK(back.h == inst.pseudo.h);
        const Perturbation p = perturbation_from_json(perturbation_to_json(inst.perturbation), back.N);
        CHECK(p.del == inst.perturbation.del);
    }
}

TEST_CASE("coefficients") {
    Json j = complex_to_json(standard_example().perturbation.base);
    j["d"][0]["coeff"] = "-6/4";
    CHECK(std::get<ChainComplex>(structure_from_json(j)).d().coeff("b", "c") == Scalar(-3) / 2);
    j["d"][0]["coeff"] = 5;
    CHECK(std::get<ChainComplex>(structure_from_json(j)).d().coeff("b", "c") == 5);
    j["d"][0]["coeff"] = "1/0";
    CHECK_THROWS_AS((void)structure_from_json(j), ParseError);
    j["d"][0]["coeff"] = 0.5;
    CHECK_THROWS_AS((void)structure_from_json(j), ParseError);
}

TEST_CASE("errors carry locations") {
    Json j = structure_to_json(standard_example().contraction);
    j["N"]["d"][0]["to"] = "zz";
    CHECK(parse_error_location(j) == "N.d[0].to");
    j = structure_to_json(standard_example().contraction);
    j["pi"][0]["from"] = "nope";
    CHECK(parse_error_location(j) == "pi[0].from");
    j = structure_to_json(standard_example().contraction);
    j["kind"] = "sandwich";
    CHECK(parse_error_location(j) == "kind");
    j.erase("kind");
    CHECK(parse_error_location(j) == "");
    try {
        (void)parse_json_text("{\n  \"kind\": ,\n}", "in.json");
        FAIL("parsed");
    } catch (const ParseError& e) {
        CHECK(e.location() == "in.json:2:11");
    }
}

TEST_CASE("kit round trip") {
    const StandardExample ex = standard_example();
    const ContractionResult r = perturb_contraction(ex.contraction, ex.perturbation);
    const Json j = kit_to_json(r.kit, r.report, r.contraction);
    CHECK(j["report"]["passed"] == true);
    const ParsedKit back = kit_from_json(parse_json_text(j.dump(2), "kit"));
    CHECK(back.alpha == r.kit.alpha);
    CHECK(back.beta == r.kit.beta);
    REQUIRE(back.pi_del);
    CHECK(back.pi_del->coeff("c", "a") == -2);
    CHECK(validate_structure(std::get<Contraction>(back.perturbed)).passed());
}
