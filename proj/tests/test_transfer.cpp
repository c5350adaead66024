#include <doctest.h>

#include "hptkit/errors.hpp"
#include "hptkit/excore.hpp"
#include "hptkit/transfer.hpp"

using namespace hptkit;

namespace {

FreeElement E(const char* text) { return parse_element(text); }

// (Dh + hD)(w) computed directly in the algebra.
FreeElement homotopy_boundary_on(const Word& w, FreeElement (*h)(const Word&)) {
    const FreeElement hw = h(w);
    const FreeElement dw = apply_differential(FreeElement::word(w));
    FreeElement out;
    for (const auto& [v, c] : hw.terms()) out += c * apply_differential(FreeElement::word(v));
    for (const auto& [v, c] : dw.terms()) out += c * h(v);
    return out;
}

}  // namespace

TEST_CASE("homotopy on H") {
    CHECK(h_on_H("T") == E("s"));
    CHECK(h_on_H("TTT") == E("tau.tau.s"));
    CHECK(h_on_H("Ts").is_zero());
    CHECK(h_on_H("").is_zero());
    CHECK(apply_differential(h_on_H("T")) == E("tau"));
    for (std::size_t a = 0; a < 6; ++a) {
        const Word w = Word(a, 'T') + "s";
        CHECK(homotopy_boundary_on(w, h_on_H) == FreeElement::word(w));
    }
}

TEST_CASE("homotopy on P") {
    CHECK(apply_differential(E("x.x")).is_zero());
    CHECK(homotopy_boundary_on("xx", h_on_P) == E("x.x"));
    CHECK(homotopy_boundary_on("xxx", h_on_P) == E("x.x.x"));
    CHECK(h_on_P("").is_zero());
}

TEST_CASE("homotopy on A") {
    for (const Word w : {"xx", "xxx", "T", "TTs"}) {
        const bool pure_p = w.find('x') != Word::npos;
        CHECK(h_on_A(w) == (pure_p ? h_on_P(w) : h_on_H(w)));
    }
    CHECK(homotopy_boundary_on("xT", h_on_A) == FreeElement::word("xT"));
    CHECK(homotopy_boundary_on("", h_on_A).is_zero());
    for (const auto& w : normal_words(5)) {
        if (w.empty()) continue;
        CHECK(homotopy_boundary_on(w, h_on_A).truncated(5) == FreeElement::word(w));
    }
}

TEST_CASE("truncated realizations are complexes") {
    for (Algebra a : {Algebra::H, Algebra::P, Algebra::A, Algebra::Ax}) {
        const TruncatedRealization r = realize(a, 5);
        CHECK(validate_complex(r.complex).passed());
    }
    const TruncatedRealization p = realize(Algebra::P, 3);
    CHECK(p.words.size() == 4);
    CHECK(p.flagged == std::vector<Word>{"xxx"});
    CHECK(realize(Algebra::P, 4).flagged.empty());
}

TEST_CASE("transfer contractions onto the ground field") {
    const TransferResult h = contraction_H(10);
    CHECK(h.passed());
    CHECK(*h.valid_through == 10);
    const TransferResult p = contraction_P(11);
    CHECK(p.passed());
    CHECK(*p.valid_through >= 10);
    const TransferResult a = contraction_A(6);
    CHECK(a.passed());
    CHECK(*a.valid_through >= 5);
    CHECK(parse_algebra("Ax") == Algebra::Ax);
    CHECK_THROWS_AS(parse_algebra("B"), ParseError);
}

TEST_CASE("commutator perturbation of A obstructs the Neumann series") {
    const TransferResult t = contraction_A_twisted(6);
    REQUIRE(t.report.find("perturbation-square-zero"));
    CHECK(t.report.find("perturbation-square-zero")->passed);
    CHECK(t.report.find("twisted-differential")->passed);
    // h∂(x) = h(2x²) = −2x, so (−h∂)ⁿ(x) = 2ⁿx never vanishes.
    CHECK(t.nontermination.has_value());
    bool eigen = false;
    bool kernel = false;
    for (const auto& d : t.diagnostics) {
        eigen = eigen || d == "h∂(x) = -2*x";
        kernel = kernel || d.find("1 + h∂ annihilates") != std::string::npos;
    }
    CHECK(eigen);
    CHECK(kernel);
    CHECK_FALSE(t.passed());
}
