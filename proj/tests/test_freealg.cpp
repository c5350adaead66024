#include <doctest.h>

#include <set>

#include "hptkit/errors.hpp"
#include "hptkit/freealg.hpp"
#include "hptkit/linalg.hpp"

using namespace hptkit;

namespace {

FreeElement E(const char* text) { return parse_element(text); }

}  // namespace

TEST_CASE("normal forms") {
    CHECK_FALSE(normal_form("ss"));
    CHECK(*normal_form("sT") == "Ts");
    CHECK(*normal_form("sTTxsT") == "TTsxTs");
    CHECK_FALSE(normal_form("sTs"));
    CHECK(*normal_form("sxs") == "sxs");
    CHECK((E("s") * E("s")).is_zero());
    CHECK(E("s") * E("tau") == E("tau.s"));
    CHECK((E("v") * E("tau") * E("u")).is_zero());
}

TEST_CASE("rewriting is confluent on every word up to length 6") {
    CHECK(check_confluence(6).passed());
    for (const auto& w : all_words(5)) {
        const auto results = all_reductions(w);
        REQUIRE(results.size() == 1);
        CHECK(results.front() == normal_form(w));
    }
    RewriteLog log;
    CHECK(reduce_traced("sTT", &log) == std::optional<Word>("TTs"));
    CHECK(log.commute == 2);
    CHECK(std::string(log.steps.front().rule) == "sτ→τs");
}

TEST_CASE("differential on generators") {
    CHECK(apply_differential(E("x")) == -E("x.x"));
    CHECK(apply_differential(E("s")) == E("tau"));
    CHECK(apply_differential(E("tau")).is_zero());
    CHECK(apply_differential(E("x.x")).is_zero());
    CHECK(apply_differential(E("s.s")).is_zero());
    CHECK(differential_of_raw_word("ss").is_zero());
    CHECK((E("tau.s") - E("s.tau")).is_zero());
}

TEST_CASE("twisted differential") {
    CHECK(twist_differential(E("x")) == E("x.x"));
    CHECK(twist_differential(E("s")) == E("tau + x.s + s.x"));
    CHECK(twist_differential(E("1")).is_zero());
    CHECK(commutator_with_x(E("x")) == 2 * E("x.x"));
    CHECK(commutator_with_x(E("tau")) == E("x.tau - tau.x"));
}

TEST_CASE("bounded algebra checks") {
    CHECK(check_d_squared(7).passed());
    CHECK(check_twisted_square(6).passed());
    CHECK(check_augmentation(7).passed());
    CHECK(check_associativity(6).passed());
    CHECK(check_differential_relations(6).passed());
    CHECK(check_decomposition(6).passed());
}

TEST_CASE("element text round trip") {
    for (const char* text : {"3/2*x.s.tau - tau^2", "1 + x", "-x.x", "0", "tau.s"}) {
        const FreeElement e = E(text);
        CHECK(E(to_string(e).c_str()) == e);
    }
    CHECK(to_string(E("t")) == "1 - tau");
    CHECK(E("u") == E("s.x"));
    CHECK(E("(x + s)^2") == E("x.x + x.s + s.x"));
    CHECK_THROWS_AS(parse_element("x +"), ParseError);
    CHECK_THROWS_AS(parse_element("y"), ParseError);
    CHECK_THROWS_AS(parse_element("1/0*x"), ParseError);
}

TEST_CASE("free product decomposition") {
    {
        const auto c = decompose_free_product(E("tau^3"));
        REQUIRE(c.parts.size() == 1);
        CHECK(c.parts.begin()->first == ComponentKey{true, 1});
    }
    {
        const auto c = decompose_free_product(FreeElement::word("xTs"));
        REQUIRE(c.parts.size() == 1);
        CHECK(c.parts.begin()->first == ComponentKey{false, 2});
        const auto blocks = split_blocks("xTs");
        REQUIRE(blocks.size() == 2);
        CHECK(blocks[1].letters == "Ts");
    }
    {
        const auto c = decompose_free_product(E("1 + x + s"));
        CHECK(c.scalar == 1);
        CHECK(c.parts.size() == 2);
        CHECK(c.parts.count(ComponentKey{false, 1}) == 1);
        CHECK(c.parts.count(ComponentKey{true, 1}) == 1);
        CHECK(c.sum() == E("1 + x + s"));
    }
}

TEST_CASE("degree-zero basis anchors") {
    const A0Basis b1 = enumerate_A0_basis(1);
    CHECK(b1.oracle_rank == 2);
    CHECK(b1.words.size() == 2);

    const A0Basis b3 = enumerate_A0_basis(3);
    CHECK(b3.oracle_rank == 10);
    std::set<Word> got;
    for (const auto& w : b3.words) got.insert(w.word);
    const std::set<Word> expected{"", "T", "TT", "sx", "xs", "TTT", "Tsx", "sxT", "Txs", "xTs"};
    CHECK(got == expected);
}

TEST_CASE("degree-zero basis against an independent count") {
    // Degree-0 normal words counted by brute force over all letter strings.
    for (std::size_t L = 0; L <= 6; ++L) {
        std::set<Word> normal;
        for (const auto& w : all_words(L)) {
            if (word_degree(w) != 0) continue;
            if (auto nf = normal_form(w)) normal.insert(*nf);
        }
        CHECK(enumerate_A0_basis(L).words.size() == normal.size());
    }
}

TEST_CASE("degree-zero products") {
    CHECK(E("tau") * E("u") == FreeElement::word("Tsx"));
    CHECK((E("v") * E("u")).is_zero());
    const FreeElement uv = E("u.v");
    CHECK(uv == FreeElement::word("sxxs"));
    CHECK((uv * uv).is_zero());
    const Report r = check_A0_products(6);
    CHECK(r.passed());
    for (const char* label : {"iv", "v"}) {
        REQUIRE(r.find(label));
        CHECK(r.find(label)->passed);
    }
}
