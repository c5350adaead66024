#include <doctest.h>

#include "hptkit/freealg.hpp"
#include "hptkit/hatseries.hpp"

using namespace hptkit;

namespace {

FreeElement E(const char* text) { return parse_element(text); }

}  // namespace

TEST_CASE("geometric series") {
    CHECK(alpha_series(1).body() == E("1"));
    CHECK(alpha_series(4).body() == E("1 - s.x + s.x.s.x"));
    CHECK(beta_series(4).body() == E("1 - x.s + x.s.x.s"));
    const HatElement one_plus = at_order(E("1 + s.x"), 6);
    CHECK((one_plus * alpha_series(6)).agrees_with(at_order(E("1"), 6)));
    CHECK((one_plus * alpha_series(6)).body() == E("1"));
}

TEST_CASE("truncation semantics") {
    const HatElement a = at_order(E("1 + x + x.x.x"), 2);
    CHECK(a.body() == E("1 + x"));
    CHECK(a.order() == 2);
    CHECK(a.agrees_with(at_order(E("1 + x + s.x.s"), 5)));
    CHECK((a * at_order(E("x"), 4)).order() == 2);
}

TEST_CASE("inspection identities") {
    for (std::size_t L : {0u, 4u, 8u}) {
        const Report r = inspection_identities_check(L);
        CHECK(r.passed());
    }
    const HatElement lhs = beta_series(4) + at_order(E("x"), 4) * alpha_series(4) * at_order(E("s"), 4);
    CHECK(lhs.agrees_with(at_order(E("1"), 4)));
}

TEST_CASE("derivatives of alpha and beta") {
    const HatElement da = differential(alpha_series(2));
    CHECK(da.agrees_with(at_order(-E("tau.x"), 2)));
    CHECK(dalpha_dbeta_check(2).passed());
    CHECK(dalpha_dbeta_check(8).passed());
    const HatElement comm = at_order(E("x"), 8) * alpha_series(8) - beta_series(8) * at_order(E("x"), 8);
    CHECK(comm.body().is_zero());
    const HatElement comm2 = alpha_series(8) * at_order(E("s"), 8) - at_order(E("s"), 8) * beta_series(8);
    CHECK(comm2.body().is_zero());
}

TEST_CASE("the involution") {
    const PhiImages g = phi_generators(8);
    CHECK(g.x.body() == -E("x"));
    CHECK(g.loss == 0);
    CHECK(phi_map(at_order(E("x"), 8)).body() == -E("x"));
    CHECK(phi_map(phi_map(at_order(E("x"), 8))).body() == E("x"));
    CHECK(phi_map(alpha_series(8)).agrees_with(at_order(E("1 + s.x"), 8)));
    CHECK(phi_map(phi_map(at_order(E("s"), 8))).agrees_with(at_order(E("s"), 8)));
    CHECK((g.s * g.s).body().is_zero());
    CHECK(involution_check(8).passed());
}

TEST_CASE("structural theorem") {
    for (std::size_t L : {2u, 4u, 6u, 8u}) {
        StructuralTrace trace;
        const Report r = structural_check(L, &trace);
        CHECK(r.passed());
        REQUIRE(r.find("structural-x-exact"));
        CHECK(r.find("structural-x-exact")->passed);
        CHECK_FALSE(trace.lines.empty());
    }
    CHECK(structural_check(8).find("structural-s")->detail.find("tau + x.s + s.x") != std::string::npos);
}
