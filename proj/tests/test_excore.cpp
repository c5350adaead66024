#include <doctest.h>

#include "hptkit/errors.hpp"
#include "hptkit/examples.hpp"
#include "hptkit/excore.hpp"
#include "hptkit/linalg.hpp"
#include "hptkit/random_instances.hpp"
#include "support.hpp"

using namespace hptkit;

namespace {

ChainComplex standard_complex() { return standard_example().perturbation.base; }

}  // namespace

TEST_CASE("scalars parse and print in reduced form") {
    CHECK(to_string(parse_scalar("6/4")) == "3/2");
    CHECK(to_string(parse_scalar("-3")) == "-3");
    CHECK_THROWS_AS(parse_scalar("4/-2"), ParseError);
    CHECK(to_string(parse_scalar("0/5")) == "0");
    CHECK_THROWS_AS(parse_scalar("1/0"), ParseError);
    CHECK_THROWS_AS(parse_scalar("abc"), ParseError);
    CHECK_THROWS_AS(parse_scalar(""), ParseError);
}

TEST_CASE("graded modules reject repeated labels") {
    CHECK_THROWS_AS(make_module({{0, {"a", "a"}}}), StructuralError);
    const auto m = make_module({{0, {"a"}}, {3, {}}});
    CHECK(m->degrees() == std::vector<int>{0});
}

TEST_CASE("composition") {
    const ChainComplex N = standard_complex();
    const auto& M = N.module();
    const GradedMap& d = N.d();
    CHECK(compose(GradedMap::identity(M), d) == d);
    CHECK(compose(d, d).is_zero());
    const GradedMap h = standard_example().contraction.h;
    CHECK(compose(d, h).coeff("c", "c") == 1);

    const auto other = make_module({{0, {"z"}}});
    CHECK_THROWS_AS(compose(d, GradedMap::identity(other)), StructuralError);
}

TEST_CASE("first_difference names the entry") {
    const auto M = make_module({{0, {"a", "b"}}});
    GradedMap f(M, M, 0);
    f.set("a", "b", 1);
    const auto diff = first_difference(f, GradedMap::zero(M, M, 0));
    REQUIRE(diff);
    CHECK(diff->find("a") != std::string::npos);
    CHECK_FALSE(first_difference(f, f));
}

TEST_CASE("linear algebra agrees with the dense oracle") {
    Rng rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t r = 1 + rng.below(6);
        const std::size_t c = 1 + rng.below(6);
        linalg::Matrix m(r, c);
        oracle::Dense o(r, std::vector<Scalar>(c));
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < c; ++j) {
                if (rng.chance(1, 2)) continue;
                m(i, j) = Scalar(rng.range(-3, 3)) / Scalar(static_cast<long>(1 + rng.below(3)));
                o[i][j] = m(i, j);
            }
        }
        const std::size_t rk = linalg::rank(m);
        CHECK(rk == oracle::rank(o));
        const auto kernel = linalg::nullspace(m);
        CHECK(kernel.size() + rk == c);
        for (const auto& v : kernel) {
            for (const auto& entry : m * v) CHECK(is_zero(entry));
        }
        CHECK(linalg::column_space_basis(m).size() == rk);
        if (r == c) {
            const auto inv = linalg::inverse(m);
            CHECK(inv.has_value() == (rk == r));
            if (inv) {
                const auto p = *inv * m;
                for (std::size_t i = 0; i < r; ++i) {
                    for (std::size_t j = 0; j < r; ++j) CHECK(p(i, j) == (i == j ? 1 : 0));
                }
            }
        }
    }
}

TEST_CASE("validate_complex") {
    CHECK(validate_complex(ChainComplex(make_module({{0, {"a"}}, {1, {"b"}}}))).passed());
    CHECK(validate_complex(standard_complex()).passed());

    const auto M = make_module({{0, {"e0"}}, {1, {"e1"}}, {2, {"e2"}}});
    GradedMap d(M, M, -1);
    d.set("e2", "e1", 1);
    d.set("e1", "e0", 1);
    const Report r = validate_complex(ChainComplex(M, d));
    CHECK_FALSE(r.passed());
    CHECK(r.checks().front().detail.find("degree 2") != std::string::npos);
    CHECK_THROWS_AS(require_complex(ChainComplex(M, d), "test"), ContractViolation);
}

TEST_CASE("image_subcomplex") {
    const ChainComplex N = standard_complex();
    const auto& M = N.module();
    const ImageSubcomplex all = image_subcomplex(N, GradedMap::identity(M));
    CHECK(all.complex.module()->total_dim() == 3);
    CHECK(all.inclusion == GradedMap::identity(M));

    CHECK(image_subcomplex(N, GradedMap::zero(M, M, 0)).complex.module()->total_dim() == 0);

    const auto& c = standard_example().contraction;
    const ImageSubcomplex a = image_subcomplex(N, compose(c.nabla, c.pi));
    CHECK(a.complex.module()->total_dim() == 1);
    CHECK(a.complex.module()->dim(0) == 1);
    CHECK(a.inclusion.coeff(a.complex.module()->labels(0)[0], "a") == 1);
}

TEST_CASE("Neumann series") {
    const auto ex = standard_example();
    const auto& M = ex.perturbation.base.module();
    const NeumannSeries z = neumann_series(GradedMap::zero(M, M, 0));
    CHECK(z.value == GradedMap::identity(M));
    CHECK(z.terms == 1);

    const GradedMap u = compose(ex.perturbation.del, ex.contraction.h);
    CHECK(u.coeff("c", "a") == 2);
    const NeumannSeries s = neumann_series(u);
    CHECK(s.terms == 2);
    CHECK(s.value == GradedMap::identity(M) - u);

    const auto one = make_module({{0, {"e"}}});
    try {
        (void)neumann_series(GradedMap::identity(one), 50);
        FAIL("series terminated");
    } catch (const NonNilpotentError& e) {
        CHECK(e.iterations() == 50);
    }
}

TEST_CASE("homology_contraction on fixed complexes") {
    {
        const ChainComplex Z(make_module({{0, {"a", "b"}}, {2, {"c"}}}));
        const Contraction c = homology_contraction(Z);
        CHECK(c.pi == GradedMap::identity(Z.module()));
        CHECK(c.nabla == GradedMap::identity(Z.module()));
        CHECK(c.h.is_zero());
        const auto b = betti_numbers(Z);
        CHECK(b.at(0) == 2);
        CHECK(b.at(2) == 1);
    }
    {
        const ChainComplex sphere(make_module({{0, {"p"}}, {2, {"q"}}}));
        const auto b = betti_numbers(sphere);
        CHECK(b.at(0) == 1);
        CHECK(b.count(1) == 0);
        CHECK(b.at(2) == 1);
    }
    {
        const ChainComplex N = standard_complex();
        const Contraction c = homology_contraction(N);
        CHECK(c.M.module()->dim(0) == 1);
        CHECK(c.M.module()->dim(1) == 0);
        CHECK(c.h.coeff("c", "b") == 1);
        CHECK(c.h.coeff("a", "b") == 0);
        CHECK(c.h.coeff("b", "b") == 0);
        const auto b = betti_numbers(N);
        CHECK(b.at(0) == 1);
        CHECK(b.at(1) == 0);
    }
}

TEST_CASE("Betti numbers match the rank oracle on random complexes") {
    for (std::uint64_t seed = 100; seed < 160; ++seed) {
        const ChainComplex N = random_complex(seed);
        const auto betti = betti_numbers(N);
        for (int deg : N.module()->degrees()) {
            const std::size_t out = oracle::rank(oracle::dense(N.d(), deg));
            const std::size_t in = oracle::rank(oracle::dense(N.d(), deg + 1));
            const std::size_t expected = N.module()->dim(deg) - out - in;
            const auto it = betti.find(deg);
            CHECK((it == betti.end() ? 0 : it->second) == expected);
        }
    }
}
