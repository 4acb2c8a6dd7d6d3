#include "charcyc/orbifold.hpp"
#include "charcyc/random_gen.hpp"
#include "charcyc/verify.hpp"

#include "support/fixtures.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace charcyc;

TEST_CASE("group closure and validation", "[orbifold]") {
    SECTION("swap generates Z/2") {
        ActionPtr swap = fixtures::path_swap_action();
        CHECK(swap->order() == 2);
        CHECK(swap->apply(1, Simplex{0, 1}) == Simplex{1, 2});
    }
    SECTION("the dihedral action on the square has order 8") {
        CHECK(fixtures::square_d4_action()->order() == 8);
    }
    SECTION("non-simplicial generators are rejected") {
        // swapping one endpoint with the middle sends {1,2} to {0,2}, not a simplex
        CHECK_THROWS_AS(make_action(fixtures::path3(), {Permutation{{0, 1}, {1, 0}}}),
                        InvalidAction);
    }
    SECTION("closure cap") {
        CHECK_THROWS_AS(make_action(fixtures::square_boundary(),
                                    {Permutation{{0, 1}, {1, 2}, {2, 3}, {3, 0}}}, 3),
                        InvalidAction);
    }
}

TEST_CASE("regularity checks", "[orbifold]") {
    SECTION("path with the endpoint swap is regular") {
        CHECK(check_regularity(*fixtures::path_swap_action()).pass());
    }
    SECTION("edge swap fixes the edge setwise but not pointwise") {
        RegularityReport rep = check_regularity(*fixtures::edge_swap_action());
        CHECK_FALSE(rep.pointwise_condition);
        REQUIRE_FALSE(rep.setwise_failures.empty());
        CHECK(rep.setwise_failures[0].second == Simplex{0, 1});
    }
    SECTION("triangle rotation puts one orbit twice into each edge") {
        RegularityReport rep = check_regularity(*fixtures::triangle_rotation_action());
        CHECK_FALSE(rep.orbit_condition);
    }
}

TEST_CASE("regularization", "[orbifold]") {
    SECTION("already regular actions come back unchanged") {
        Regularized reg = regularize(fixtures::path_swap_action());
        CHECK(reg.rounds == 0);
        CHECK(same_complex(reg.action->complex(), fixtures::path3()));
    }
    SECTION("edge swap becomes regular after one subdivision") {
        Regularized reg = regularize(fixtures::edge_swap_action());
        CHECK(reg.rounds == 1);
        CHECK(check_regularity(*reg.action).pass());
        CHECK(reg.action->order() == 2);
        CHECK(reg.action->complex()->size() == 5);  // path a-m-b
    }
    SECTION("triangle rotation: the checks pass after one round, the quotient needs two") {
        // One subdivision satisfies both regularity conditions, yet two edge
        // orbits still hit the same coarse edge; regularize goes one further.
        SubdivisionMap once = barycentric_subdivision(fixtures::triangle_boundary());
        ActionPtr after_one = transport_action(*fixtures::triangle_rotation_action(), once);
        CHECK(check_regularity(*after_one).pass());
        CHECK_FALSE(fibers_are_orbits(*after_one));

        Regularized reg = regularize(fixtures::triangle_rotation_action());
        CHECK(reg.rounds == 2);
        CHECK(check_regularity(*reg.action).pass());
        QuotientData qd(reg.action);  // now the quotient is simplicial
        CHECK(qd.coarse()->dim() == 1);
    }
    SECTION("the dihedral square action regularizes") {
        Regularized reg = regularize(fixtures::square_d4_action());
        CHECK(check_regularity(*reg.action).pass());
        CHECK(reg.action->order() == 8);
    }
}

TEST_CASE("quotients", "[orbifold]") {
    SECTION("path with swap folds to an interval") {
        QuotientData qd(fixtures::path_swap_action());
        CHECK(qd.coarse()->size() == 3);
        CHECK(qd.coarse_stabilizer_order({0}) == 1);
        CHECK(qd.coarse_stabilizer_order({1}) == 2);
        CHECK(qd.coarse_stabilizer_order({0, 1}) == 1);
        CHECK(qd.fiber({0}).size() == 2);
        CHECK(qd.project({1, 2}) == Simplex{0, 1});
    }
    SECTION("trivial group leaves the complex unchanged") {
        ComplexPtr k = fixtures::disk_fan();
        QuotientData qd(make_action(k, {}));
        CHECK(*qd.coarse() == *k);
        for (const Simplex& s : k->simplices()) CHECK(qd.stabilizer_order(s) == 1);
    }
    SECTION("free rotation folds the hexagon to the triangle boundary") {
        QuotientData qd(fixtures::hexagon_free_action());
        CHECK(*qd.coarse() == *fixtures::triangle_boundary());
        for (const Simplex& s : qd.coarse()->simplices()) {
            CHECK(qd.coarse_stabilizer_order(s) == 1);
            CHECK(qd.fiber(s).size() == 2);
        }
    }
    SECTION("irregular actions are refused") {
        CHECK_THROWS_AS(QuotientData(fixtures::edge_swap_action()), IrregularAction);
    }
    SECTION("orbit-stabilizer counting on every coarse simplex") {
        Regularized reg = regularize(fixtures::square_d4_action());
        QuotientData qd(reg.action);
        for (const Simplex& s : qd.coarse()->simplices())
            CHECK(qd.fiber(s).size() * qd.coarse_stabilizer_order(s) == qd.action()->order());
    }
}

TEST_CASE("iota", "[orbifold]") {
    SECTION("path with swap") {
        QuotientData qd(fixtures::path_swap_action());
        ConstructibleFunction weights = iota(qd);
        CHECK(weights.value({0}) == 1);
        CHECK(weights.value({1}) == Rational(1, 2));
        CHECK(weights.value({0, 1}) == 1);
    }
    SECTION("free actions weigh everything 1") {
        QuotientData qd(fixtures::hexagon_free_action());
        CHECK(iota(qd) == ConstructibleFunction::constant(qd.coarse(), 1));
    }
}

TEST_CASE("coinvariant classes and the orbifold integral", "[orbifold]") {
    ActionPtr swap = fixtures::path_swap_action();
    SECTION("constant one integrates to the interval value") {
        CoinvariantClass c = class_of(ConstructibleFunction::constant(swap->complex(), 1), swap);
        CHECK(orbifold_integral(c) == 1);
    }
    SECTION("point mass averages over the orbit") {
        ConstructibleFunction h(swap->complex(), {{{0}, 1}});
        CoinvariantClass c = class_of(h, swap);
        CHECK(c.avg().value({0}) == Rational(1, 2));
        CHECK(c.avg().value({2}) == Rational(1, 2));
        CHECK(orbifold_integral(c) == 1);
    }
    SECTION("g-differences do not move the class") {
        Rng rng(41);
        for (int trial = 0; trial < 20; ++trial) {
            ConstructibleFunction h = random_function(rng, swap->complex());
            ConstructibleFunction h1 = random_function(rng, swap->complex());
            ConstructibleFunction shifted = h + h1 - swap->act_on(1, h1);
            CHECK(class_of(shifted, swap) == class_of(h, swap));
            CHECK(orbifold_integral(class_of(shifted, swap)) == orbifold_integral(class_of(h, swap)));
        }
    }
}

TEST_CASE("pushforward to the coarse space", "[orbifold]") {
    ActionPtr swap = fixtures::path_swap_action();
    QuotientData qd(swap);
    SECTION("norm convention doubles the constant") {
        CoinvariantClass c = class_of(ConstructibleFunction::constant(swap->complex(), 1), swap);
        CHECK(pushforward_p(c, qd) == ConstructibleFunction::constant(qd.coarse(), 2));
        // the fiber-sum variant differs exactly at the fixed point
        ConstructibleFunction fiber_sum = pushforward_fiber_sum(c, qd);
        CHECK(fiber_sum.value({0}) == 2);
        CHECK(fiber_sum.value({1}) == 1);
        CHECK(fiber_sum.value({0, 1}) == 2);
    }
    SECTION("trivial group gives the identity") {
        ComplexPtr k = fixtures::triangle_boundary();
        ActionPtr trivial = make_action(k, {});
        QuotientData tqd(trivial);
        Rng rng(42);
        ConstructibleFunction h = random_function(rng, k);
        ConstructibleFunction pushed = pushforward_p(class_of(h, trivial), tqd);
        for (const Simplex& s : k->simplices()) CHECK(pushed.value(tqd.project(s)) == h.value(s));
    }
    SECTION("the pushforward pulls back to |G| times the average") {
        Rng rng(47);
        for (const ActionPtr& action :
             {fixtures::path_swap_action(), fixtures::hexagon_free_action()}) {
            QuotientData q(action);
            CoinvariantClass c = class_of(random_function(rng, action->complex()), action);
            ConstructibleFunction pulled = transfer(pushforward_p(c, q), q);
            CHECK(pulled == Rational(static_cast<long>(action->order())) * c.avg());
        }
    }
}

TEST_CASE("weighted coarse integral equals the orbifold integral", "[orbifold]") {
    std::vector<ActionPtr> actions{fixtures::path_swap_action(), fixtures::hexagon_free_action(),
                                   regularize(fixtures::square_d4_action()).action,
                                   regularize(fixtures::triangle_rotation_action()).action};
    Rng rng(43);
    for (const ActionPtr& action : actions) {
        QuotientData qd(action);
        for (int trial = 0; trial < 25; ++trial) {
            CoinvariantClass c = class_of(random_function(rng, action->complex()), action);
            CHECK(coarse_weighted_integral(c, qd) == orbifold_integral(c));
        }
    }
    // the hand-derived value: [1] on the interval mod Z/2 integrates to 1
    QuotientData qd(fixtures::path_swap_action());
    CoinvariantClass one =
        class_of(ConstructibleFunction::constant(qd.action()->complex(), 1), qd.action());
    CHECK(coarse_weighted_integral(one, qd) == 1);
}

TEST_CASE("the norm map is an isomorphism", "[orbifold]") {
    SECTION("path with swap: 3 by 3 and invertible") {
        PushforwardIsoReport rep = verify_p_iso(QuotientData(fixtures::path_swap_action()));
        CHECK(rep.coarse_basis.size() == 3);
        CHECK(rep.pass());
    }
    SECTION("trivial group gives the identity matrix") {
        PushforwardIsoReport rep =
            verify_p_iso(QuotientData(make_action(fixtures::interval(), {})));
        CHECK(rep.pass());
        for (std::size_t i = 0; i < rep.matrix.size(); ++i)
            for (std::size_t j = 0; j < rep.matrix.size(); ++j)
                CHECK(rep.matrix[i][j] == (i == j ? 1 : 0));
    }
    SECTION("hexagon mod free rotation: 6 orbits, invertible") {
        PushforwardIsoReport rep = verify_p_iso(QuotientData(fixtures::hexagon_free_action()));
        CHECK(rep.coarse_basis.size() == 6);
        CHECK(rep.pass());
    }
}

TEST_CASE("simple decomposition by isotropy class", "[orbifold]") {
    ActionPtr swap = fixtures::path_swap_action();
    SECTION("constant one splits into the free part and the fixed vertex") {
        ConstructibleFunction one = ConstructibleFunction::constant(swap->complex(), 1);
        std::vector<SimplePiece> pieces = simple_decomposition(one, swap);
        REQUIRE(pieces.size() == 2);
        // reconstruction and the isotropy grouping
        ConstructibleFunction sum = ConstructibleFunction::zero(swap->complex());
        for (const SimplePiece& p : pieces) sum = sum + p.coefficient * p.indicator;
        CHECK(sum == one);
        std::set<std::size_t> sizes;
        for (const SimplePiece& p : pieces) sizes.insert(p.indicator.values().size());
        CHECK(sizes == std::set<std::size_t>{1, 4});  // {b} and {a, c, ab, bc}
    }
    SECTION("zero decomposes into nothing") {
        CHECK(simple_decomposition(ConstructibleFunction::zero(swap->complex()), swap).empty());
    }
    SECTION("random functions reconstruct exactly with conjugate stabilizers per piece") {
        Rng rng(44);
        Regularized reg = regularize(fixtures::square_d4_action());
        for (int trial = 0; trial < 10; ++trial) {
            ConstructibleFunction h = random_function(rng, reg.action->complex());
            ConstructibleFunction sum = ConstructibleFunction::zero(reg.action->complex());
            for (const SimplePiece& p : simple_decomposition(h, reg.action)) {
                sum = sum + p.coefficient * p.indicator;
                std::set<std::size_t> orders;
                for (const auto& [s, v] : p.indicator.values())
                    orders.insert(reg.action->stabilizer(s).size());
                CHECK(orders.size() == 1);  // conjugate subgroups share their order
            }
            CHECK(sum == h);
        }
    }
}

TEST_CASE("transfer and the norm composite", "[orbifold]") {
    ActionPtr swap = fixtures::path_swap_action();
    QuotientData qd(swap);
    SECTION("transfer pulls back along the projection") {
        ConstructibleFunction unit(qd.coarse(), {{{1}, 1}});
        ConstructibleFunction lifted = transfer(unit, qd);
        CHECK(lifted.value({1}) == 1);
        CHECK(lifted.value({0}) == 0);
        ConstructibleFunction back = pushforward_p(class_of(lifted, swap), qd);
        CHECK(back.value({1}) == 2);
    }
    SECTION("zero transfers to zero") {
        CHECK(transfer(ConstructibleFunction::zero(qd.coarse()), qd).is_zero());
    }
    SECTION("composite is |G| times the identity") {
        for (const ActionPtr& action :
             {fixtures::path_swap_action(), fixtures::hexagon_free_action()}) {
            QuotientData q(action);
            TransferNormReport rep = verify_transfer_norm(q);
            CHECK(rep.pass());
            for (const Rational& d : rep.diagonal)
                CHECK(d == Rational(static_cast<long>(action->order())));
            Rng rng(45);
            ConstructibleFunction fbar = random_function(rng, q.coarse());
            ConstructibleFunction composite = pushforward_p(class_of(transfer(fbar, q), action), q);
            CHECK(composite == Rational(static_cast<long>(action->order())) * fbar);
        }
    }
}

TEST_CASE("equivariant chart validation", "[orbifold]") {
    ChartPtr chart = make_chart(fixtures::path3(), 1,
                                {{0, fixtures::q({-1})}, {1, fixtures::q({0})}, {2, fixtures::q({1})}});
    SECTION("non-orthogonal matrices are rejected") {
        CHECK_THROWS_AS(EquivariantChart(chart, fixtures::path_swap_action(), {Mat{{Rational(2)}}}),
                        NonOrthogonalMatrix);
    }
    SECTION("matrices must realize the action on coordinates") {
        CHECK_THROWS_AS(EquivariantChart(chart, fixtures::path_swap_action(), {Mat{{Rational(1)}}}),
                        IncompatibleAction);
    }
}

TEST_CASE("equivariant action on cycle tables", "[orbifold]") {
    EquivariantChart eq = fixtures::path_swap_equivariant();
    Rng rng(46);
    SECTION("cc commutes with the action") {
        for (int trial = 0; trial < 50; ++trial) {
            ConstructibleFunction h = random_function(rng, eq.chart()->complex());
            LagrangianCycleTable base = cc(h, eq.chart());
            for (std::size_t g = 0; g < eq.action()->order(); ++g)
                CHECK(cc(eq.action()->act_on(static_cast<int>(g), h), eq.chart()) ==
                      equivariant_table_action(static_cast<int>(g), base, eq));
        }
    }
    SECTION("the identity element acts as the identity") {
        ConstructibleFunction h = random_function(rng, eq.chart()->complex());
        LagrangianCycleTable base = cc(h, eq.chart());
        CHECK(equivariant_table_action(0, base, eq) == base);
    }
    SECTION("the index identity holds through the quotient") {
        for (int trial = 0; trial < 25; ++trial) {
            ConstructibleFunction h = random_function(rng, eq.chart()->complex());
            OrbifoldIndexReport rep = orbifold_index_check(h, eq);
            CHECK(rep.pass());
            CHECK(rep.zeta_value == euler_integral(h));
        }
    }
    SECTION("the dihedral square fixture passes as well") {
        EquivariantChart square = fixtures::square_d4_equivariant();
        for (int trial = 0; trial < 10; ++trial) {
            ConstructibleFunction h = random_function(rng, square.chart()->complex());
            CHECK(orbifold_index_check(h, square).pass());
        }
    }
}

TEST_CASE("all three integral routes agree per trial", "[orbifold]") {
    EquivariantChart eq = fixtures::path_swap_equivariant();
    QuotientData qd(eq.action());
    OrbifoldTripleSuiteResult res = run_orbifold_triple_suite(eq, qd, 50, 7);
    CHECK(res.pass());
    REQUIRE(res.triples.size() == 50);
    for (const auto& t : res.triples) {
        CHECK(t[0] == t[1]);
        CHECK(t[1] == t[2]);
    }
}
