/**
 * Seeded verification suites behind the `verify` subcommands and the
 * acceptance battery.  Every check is an exact rational identity; a suite
 * passes only when every trial does.
 */
#pragma once

#include "charcyc/charts.hpp"
#include "charcyc/cosheaf.hpp"
#include "charcyc/morse.hpp"
#include "charcyc/orbifold.hpp"
#include "charcyc/random_gen.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace charcyc {

/// integral = CC-then-intersect = Morse sum, over random functions and
/// random covectors/orders.
struct IndexSuiteResult {
    std::size_t trials = 0;
    std::size_t orders_per_trial = 0;
    std::size_t zeta_failures = 0;
    std::size_t morse_failures = 0;
    std::size_t covector_independence_failures = 0;

    bool pass() const {
        return zeta_failures == 0 && morse_failures == 0 && covector_independence_failures == 0;
    }
};

inline IndexSuiteResult run_index_suite(const ChartPtr& chart, std::size_t trials,
                                        std::size_t orders_per_trial, std::uint64_t seed) {
    IndexSuiteResult res;
    res.trials = trials;
    res.orders_per_trial = orders_per_trial;
    Rng rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        ConstructibleFunction f = random_function(rng, chart->complex());
        const Rational integral = euler_integral(f);
        LagrangianCycleTable table = cc(f, chart);
        Rational first_zeta;
        for (std::size_t k = 0; k < orders_per_trial; ++k) {
            Vec xi = random_generic_covector(rng, *chart);
            const Rational zeta = intersect_zero_section(table, xi);
            if (k == 0) first_zeta = zeta;
            else if (zeta != first_zeta) ++res.covector_independence_failures;
            if (zeta != integral) ++res.zeta_failures;
            if (morse_evaluate(f, chart->order_from_covector(xi)) != integral) ++res.morse_failures;
        }
    }
    return res;
}

/// cc_inverse . cc = identity and cc(f) = 0 implies f = 0.
struct CcIsoSuiteResult {
    std::size_t trials = 0;
    std::size_t roundtrip_failures = 0;
    std::size_t injectivity_failures = 0;

    bool pass() const { return roundtrip_failures == 0 && injectivity_failures == 0; }
};

inline CcIsoSuiteResult run_cc_iso_suite(const ChartPtr& chart, std::size_t trials,
                                         std::uint64_t seed) {
    CcIsoSuiteResult res;
    res.trials = trials;
    Rng rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        ConstructibleFunction f = random_function(rng, chart->complex());
        LagrangianCycleTable table = cc(f, chart);
        if (!(cc_inverse(table) == f)) ++res.roundtrip_failures;
        if (table.is_zero() && !f.is_zero()) ++res.injectivity_failures;
    }
    return res;
}

/// Chamber atlas sanity: witnesses are conormal and satisfy their strict
/// signs, sign vectors are unique and antipodally closed, and the chamber
/// of every sampled generic covector is present at every vertex.
struct ChamberSuiteResult {
    std::size_t simplices = 0;
    std::size_t chambers = 0;
    std::size_t witness_failures = 0;
    std::size_t conormality_failures = 0;
    std::size_t duplicate_failures = 0;
    std::size_t antipodal_failures = 0;
    std::size_t sample_misses = 0;

    bool pass() const {
        return witness_failures == 0 && conormality_failures == 0 && duplicate_failures == 0 &&
               antipodal_failures == 0 && sample_misses == 0;
    }
};

inline ChamberSuiteResult run_chamber_suite(const ChartPtr& chart, std::size_t samples,
                                            std::uint64_t seed) {
    ChamberSuiteResult res;
    Rng rng(seed);
    for (const Simplex& s : chart->complex()->simplices()) {
        ++res.simplices;
        const auto& chambers = chart->chambers(s);
        res.chambers += chambers.size();
        std::set<std::vector<signed char>> seen;
        for (const Chamber& c : chambers) {
            if (!seen.insert(c.signs).second) ++res.duplicate_failures;
            const Vec& base = chart->coord(s[0]);
            for (std::size_t i = 1; i < s.size(); ++i) {
                Rational along = 0;
                const Vec& p = chart->coord(s[i]);
                for (std::size_t j = 0; j < base.size(); ++j)
                    along += c.witness[j] * (p[j] - base[j]);
                if (along != 0) ++res.conormality_failures;
            }
            if (!c.signs.empty()) {
                auto got = chart->signs_of_covector(s, c.witness);
                if (!got || *got != c.signs) ++res.witness_failures;
                std::vector<signed char> flipped = c.signs;
                for (signed char& x : flipped) x = static_cast<signed char>(-x);
                if (chart->chamber_index(s, flipped) < 0) ++res.antipodal_failures;
            }
        }
    }
    for (std::size_t k = 0; k < samples; ++k) {
        Vec xi = random_generic_covector(rng, *chart);
        for (Vertex v : chart->complex()->vertices()) {
            auto signs = chart->signs_of_covector({v}, xi);
            if (!signs || chart->chamber_index({v}, *signs) < 0) ++res.sample_misses;
        }
    }
    return res;
}

/// Norm-map isomorphism and the transfer composite for one action.
struct NormSuiteResult {
    PushforwardIsoReport iso;
    TransferNormReport transfer_norm;
    bool free_action = false;
    bool transfer_is_order_times_identity = false;

    bool pass() const {
        if (!iso.pass() || !transfer_norm.pass()) return false;
        return !free_action || transfer_is_order_times_identity;
    }
};

inline NormSuiteResult run_norm_suite(const QuotientData& qd) {
    NormSuiteResult res;
    res.iso = verify_p_iso(qd);
    res.transfer_norm = verify_transfer_norm(qd);
    res.free_action = qd.action()->is_free();
    res.transfer_is_order_times_identity = true;
    const Rational order(static_cast<long>(qd.action()->order()));
    for (const Rational& d : res.transfer_norm.diagonal)
        if (d != order) res.transfer_is_order_times_identity = false;
    return res;
}

/// Weighted-coarse-integral identity over random classes.
struct OrbifoldIntegralSuiteResult {
    std::size_t trials = 0;
    std::size_t failures = 0;
    std::size_t class_welldef_failures = 0;

    bool pass() const { return failures == 0 && class_welldef_failures == 0; }
};

inline OrbifoldIntegralSuiteResult run_orbifold_integral_suite(const QuotientData& qd,
                                                               std::size_t trials,
                                                               std::uint64_t seed) {
    OrbifoldIntegralSuiteResult res;
    res.trials = trials;
    Rng rng(seed);
    const ActionPtr& action = qd.action();
    for (std::size_t t = 0; t < trials; ++t) {
        ConstructibleFunction h = random_function(rng, action->complex());
        CoinvariantClass c = class_of(h, action);
        if (coarse_weighted_integral(c, qd) != orbifold_integral(c)) ++res.failures;
        // Shifting the representative by a g-difference must not move the
        // class or its integral.
        ConstructibleFunction h1 = random_function(rng, action->complex());
        const int g = static_cast<int>(rng.below(action->order()));
        ConstructibleFunction shifted = h + h1 - action->act_on(g, h1);
        CoinvariantClass c2 = class_of(shifted, action);
        if (!(c2 == c) || orbifold_integral(c2) != orbifold_integral(c))
            ++res.class_welldef_failures;
    }
    return res;
}

/// Per-trial values of the three routes to the orbifold integral: the class
/// integral, the weighted coarse integral, and the zero-section
/// intersection of the characteristic cycle.
struct OrbifoldTripleSuiteResult {
    std::size_t trials = 0;
    std::size_t failures = 0;
    std::vector<std::array<Rational, 3>> triples;

    bool pass() const { return failures == 0; }
};

inline OrbifoldTripleSuiteResult run_orbifold_triple_suite(const EquivariantChart& eq,
                                                           const QuotientData& qd,
                                                           std::size_t trials,
                                                           std::uint64_t seed) {
    OrbifoldTripleSuiteResult res;
    res.trials = trials;
    Rng rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        ConstructibleFunction h = random_function(rng, eq.chart()->complex());
        CoinvariantClass c = class_of(h, eq.action());
        std::array<Rational, 3> triple{orbifold_integral(c), coarse_weighted_integral(c, qd),
                                       intersect_zero_section(cc(h, eq.chart()))};
        if (!(triple[0] == triple[1] && triple[1] == triple[2])) ++res.failures;
        res.triples.push_back(std::move(triple));
    }
    return res;
}

/// Orbifold index identities over random functions on an equivariant chart.
struct OrbifoldIndexSuiteResult {
    std::size_t trials = 0;
    std::size_t failures = 0;

    bool pass() const { return failures == 0; }
};

inline OrbifoldIndexSuiteResult run_orbifold_index_suite(const EquivariantChart& eq,
                                                         std::size_t trials, std::uint64_t seed) {
    OrbifoldIndexSuiteResult res;
    res.trials = trials;
    Rng rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        ConstructibleFunction h = random_function(rng, eq.chart()->complex());
        if (!orbifold_index_check(h, eq).pass()) ++res.failures;
    }
    return res;
}

}  // namespace charcyc
