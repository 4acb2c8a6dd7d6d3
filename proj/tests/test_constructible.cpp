#include "charcyc/constructible.hpp"
#include "charcyc/random_gen.hpp"

#include "support/fixtures.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace charcyc;

TEST_CASE("euler integral", "[constructible]") {
    SECTION("constant one on a compact interval") {
        ConstructibleFunction f = ConstructibleFunction::constant(fixtures::interval(), 1);
        CHECK(euler_integral(f) == 1);
        CHECK(euler_integral_level_sets(f) == 1);
    }
    SECTION("one on the open edge only") {
        ComplexPtr k = fixtures::interval();
        ConstructibleFunction f(k, {{{0, 1}, 1}});
        CHECK(euler_integral(f) == -1);
    }
    SECTION("five on a circle") {
        ConstructibleFunction f = ConstructibleFunction::constant(fixtures::triangle_boundary(), 5);
        CHECK(euler_integral(f) == 0);
    }
    SECTION("level-set and simplexwise routes agree on random input") {
        Rng rng(11);
        for (int trial = 0; trial < 50; ++trial) {
            ConstructibleFunction f = random_function(rng, random_complex(rng));
            CHECK(euler_integral(f) == euler_integral_level_sets(f));
        }
    }
    SECTION("linearity") {
        Rng rng(12);
        ComplexPtr k = fixtures::disk_fan();
        for (int trial = 0; trial < 20; ++trial) {
            ConstructibleFunction f = random_function(rng, k);
            ConstructibleFunction g = random_function(rng, k);
            Rational a = rng.nonzero_rational(), b = rng.nonzero_rational();
            CHECK(euler_integral(a * f + b * g) ==
                  a * euler_integral(f) + b * euler_integral(g));
        }
    }
    SECTION("additivity over disjoint supports") {
        ComplexPtr k = fixtures::path3();
        ConstructibleFunction f(k, {{{0}, 3}});
        ConstructibleFunction g(k, {{{1, 2}, Rational(1, 2)}});
        CHECK(euler_integral(f + g) == euler_integral(f) + euler_integral(g));
    }
}

TEST_CASE("extension by zero", "[constructible]") {
    ComplexPtr k = fixtures::path3();
    SECTION("point mass at an interior vertex extends") {
        OpenSet u = star_open(k, {1});
        ConstructibleFunction f(k, {{{1}, 1}});
        ConstructibleFunction extended = extend_by_zero(f, u);
        CHECK(euler_integral(extended) == euler_integral(f));
    }
    SECTION("an open edge alone is not relatively compact") {
        OpenSet u(k, {{0, 1}});
        ConstructibleFunction f(k, {{{0, 1}, 1}});
        CHECK_THROWS_AS(extend_by_zero(f, u), SupportNotRelativelyCompact);
    }
    SECTION("full star support leaks through the endpoints") {
        OpenSet u = star_open(k, {1});
        ConstructibleFunction f(k, {{{1}, 1}, {{0, 1}, 1}, {{1, 2}, 1}});
        CHECK_THROWS_MATCHES(extend_by_zero(f, u), SupportNotRelativelyCompact,
                             Catch::Matchers::MessageMatches(
                                 Catch::Matchers::ContainsSubstring("face {0}")));
    }
}

TEST_CASE("pointwise operations", "[constructible]") {
    ComplexPtr k = fixtures::triangle_boundary();
    Rng rng(13);
    SECTION("f plus minus-f vanishes; one times f is f") {
        ConstructibleFunction f = random_function(rng, k);
        CHECK((f + Rational(-1) * f).is_zero());
        CHECK(Rational(1) * f == f);
    }
    SECTION("product matches the value table") {
        for (int trial = 0; trial < 20; ++trial) {
            ConstructibleFunction f = random_function(rng, k);
            ConstructibleFunction g = random_function(rng, k);
            ConstructibleFunction p = f * g;
            for (const Simplex& s : k->simplices()) CHECK(p.value(s) == f.value(s) * g.value(s));
        }
    }
    SECTION("complex mismatch is rejected") {
        ConstructibleFunction f = random_function(rng, k);
        ConstructibleFunction g = random_function(rng, fixtures::path3());
        CHECK_THROWS_AS(f + g, ComplexMismatch);
    }
}

TEST_CASE("pullback along subdivision", "[constructible]") {
    SECTION("open edge value spreads to both halves and the barycenter") {
        ComplexPtr k = fixtures::interval();
        SubdivisionMap sd = barycentric_subdivision(k);
        ConstructibleFunction f(k, {{{0, 1}, 1}});
        ConstructibleFunction pulled = pullback_subdivision(f, sd);
        CHECK(pulled.values().size() == 3);  // two new edges and the new vertex
        for (const auto& [s, v] : pulled.values()) CHECK(v == 1);
        CHECK(euler_integral(pulled) == euler_integral(f));
    }
    SECTION("constants stay constant") {
        ComplexPtr k = fixtures::filled_triangle();
        SubdivisionMap sd = barycentric_subdivision(k);
        ConstructibleFunction pulled =
            pullback_subdivision(ConstructibleFunction::constant(k, Rational(7, 3)), sd);
        CHECK(pulled == ConstructibleFunction::constant(sd.target(), Rational(7, 3)));
    }
    SECTION("integral preserved on random input") {
        Rng rng(14);
        for (int trial = 0; trial < 50; ++trial) {
            ComplexPtr k = random_complex(rng, 6, 2);
            SubdivisionMap sd = barycentric_subdivision(k);
            ConstructibleFunction f = random_function(rng, k);
            CHECK(euler_integral(pullback_subdivision(f, sd)) == euler_integral(f));
        }
    }
}

TEST_CASE("integral is invariant under extension", "[constructible]") {
    // the integral is a pre-cosheaf morphism: extending by zero changes nothing
    ComplexPtr k = fixtures::disk_fan();
    OpenSet u = star_open(k, {0});
    Rng rng(15);
    for (int trial = 0; trial < 20; ++trial) {
        ConstructibleFunction f = random_compact_function(rng, u);
        CHECK(euler_integral(extend_by_zero(f, u)) == euler_integral(f));
    }
}
