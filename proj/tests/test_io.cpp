#include "charcyc/io.hpp"
#include "charcyc/random_gen.hpp"

#include "support/fixtures.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <string>

using namespace charcyc;

namespace {
const std::string kFixtureDir = CHARCYC_FIXTURE_DIR;

Workspace load_all_fixtures() {
    Workspace ws;
    for (const char* name :
         {"interval_complex", "path_complex", "triangle_boundary_complex",
          "filled_triangle_complex", "square_complex", "square_boundary_complex",
          "hexagon_complex", "disk_complex", "tetrahedron_complex", "octahedron_complex",
          "ones_interval", "triangle_chart", "square_chart", "disk_chart", "tetrahedron_chart",
          "octahedron_chart", "path_chart", "square_d4_chart", "hexagon_chart", "swap_action",
          "hexagon_action", "d4_action"})
        ws.load_file(kFixtureDir + "/" + name + ".json");
    return ws;
}
}  // namespace

TEST_CASE("rational literals", "[io]") {
    CHECK(rational_from_string("22/7") == Rational(22, 7));
    CHECK(rational_from_string("-3") == -3);
    CHECK(rational_from_string("4/6") == Rational(2, 3));  // canonicalized
    CHECK(to_string(Rational(-10, 4)) == "-5/2");
    CHECK(to_string(Rational(5)) == "5");
    CHECK_THROWS_AS(rational_from_string("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(rational_from_string("x"), std::invalid_argument);
    CHECK_THROWS_AS(rational_from_string("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(rational_from_string("1/-2"), std::invalid_argument);
    CHECK_THROWS_AS(rational_from_string(""), std::invalid_argument);
}

TEST_CASE("fixture files agree with the built-in fixtures", "[io]") {
    Workspace ws = load_all_fixtures();
    CHECK(*ws.complex("path_complex") == *fixtures::path3());
    CHECK(*ws.complex("octahedron_complex") == *fixtures::octahedron());
    CHECK(*ws.complex("disk_complex") == *fixtures::disk_fan(6));
    CHECK(ws.function("ones_interval") ==
          ConstructibleFunction::constant(ws.complex("interval_complex"), 1));
    CHECK(*ws.action("swap_action") == *fixtures::path_swap_action());
    CHECK(*ws.action("hexagon_action") == *fixtures::hexagon_free_action());
    CHECK(*ws.action("d4_action") == *fixtures::square_d4_action());
    CHECK(ws.chart("disk_chart").chart->coords() == fixtures::disk_chart()->coords());
    CHECK(ws.chart("triangle_chart").chart->coords() == fixtures::triangle_chart()->coords());
    // equivariant assembly from files works and validates
    CHECK_NOTHROW(ws.equivariant("path_chart", "swap_action"));
    CHECK_NOTHROW(ws.equivariant("square_d4_chart", "d4_action"));
    CHECK_NOTHROW(ws.equivariant("hexagon_chart", "hexagon_action"));
}

TEST_CASE("load errors carry the failing object", "[io]") {
    Workspace ws;
    SECTION("unknown complex reference") {
        CHECK_THROWS_AS(ws.load_file(kFixtureDir + "/ones_interval.json"), LoadError);
    }
    SECTION("undeclared vertex in a simplex") {
        Json j{{"vertices", {0, 1}}, {"simplices", {{0, 1, 2}}}};
        CHECK_THROWS_MATCHES(complex_from_json(j, "bad"), LoadError,
                             Catch::Matchers::MessageMatches(
                                 Catch::Matchers::ContainsSubstring("undeclared vertex 2")));
    }
    SECTION("duplicate vertices in a simplex") {
        Json j{{"vertices", {0, 1}}, {"simplices", {{0, 0}}}};
        CHECK_THROWS_AS(complex_from_json(j, "bad"), LoadError);
    }
    SECTION("function value outside the complex") {
        ComplexPtr k = fixtures::interval();
        Json j{{"values", {{{"simplex", {0, 2}}, {"value", "1"}}}}};
        CHECK_THROWS_MATCHES(function_from_json(j, k, "bad"), LoadError,
                             Catch::Matchers::MessageMatches(
                                 Catch::Matchers::ContainsSubstring("{0,2}")));
    }
    SECTION("non-simplicial generator names the simplex") {
        ComplexPtr k = fixtures::path3();
        Json j{{"generators", {{{"0", 1}, {"1", 0}}}}};
        CHECK_THROWS_MATCHES(action_from_json(j, k, "bad"), LoadError,
                             Catch::Matchers::MessageMatches(
                                 Catch::Matchers::ContainsSubstring("not simplicial")));
    }
    SECTION("degenerate chart coordinates are refused") {
        ComplexPtr k = fixtures::filled_triangle();
        Json j{{"dim", 2},
               {"coords",
                {{"0", {"0", "0"}}, {"1", {"1", "1"}}, {"2", {"2", "2"}}}}};
        CHECK_THROWS_AS(chart_from_json(j, k, "bad"), LoadError);
    }
}

TEST_CASE("complex serialization round trip", "[io]") {
    Rng rng(61);
    for (int trial = 0; trial < 20; ++trial) {
        ComplexPtr k = random_complex(rng);
        ComplexPtr back = complex_from_json(complex_to_json(*k), "roundtrip");
        CHECK(*back == *k);
    }
}

TEST_CASE("function serialization round trip", "[io]") {
    ComplexPtr k = fixtures::disk_fan();
    Rng rng(62);
    ConstructibleFunction f = random_function(rng, k);
    ConstructibleFunction back = function_from_json(function_to_json(f, "disk"), k, "roundtrip");
    CHECK(back == f);
}

TEST_CASE("table serialization round trip", "[io]") {
    ChartPtr chart = fixtures::disk_chart();
    Rng rng(63);
    ConstructibleFunction f = random_function(rng, chart->complex());
    LagrangianCycleTable table = cc(f, chart);
    LagrangianCycleTable back = table_from_json(table_to_json(table, "disk_chart"), chart, "rt");
    CHECK(back == table);
    CHECK(cc_inverse(back) == f);
}

TEST_CASE("action serialization round trip", "[io]") {
    ActionPtr action = fixtures::square_d4_action();
    ActionPtr back = action_from_json(action_to_json(*action, "square_boundary_complex"),
                                      fixtures::square_boundary(), "roundtrip");
    CHECK(*back == *action);
}

TEST_CASE("workspace name handling", "[io]") {
    CHECK(Workspace::stem("/a/b/c/disk_chart.json") == "disk_chart");
    CHECK(Workspace::stem("swap.action.json") == "swap");
    Workspace ws;
    CHECK_THROWS_AS(ws.complex("nope"), LoadError);
    CHECK_THROWS_AS(ws.load_file(kFixtureDir + "/does_not_exist.json"), LoadError);
}
