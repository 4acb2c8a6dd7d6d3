/**
 * Seeded deterministic generators for the verification suites.  Everything
 * is driven by mt19937_64 with explicit rejection sampling, never through
 * std::uniform_int_distribution, so identical seeds produce identical
 * streams on every platform.
 */
#pragma once

#include "charcyc/charts.hpp"
#include "charcyc/constructible.hpp"
#include "charcyc/morse.hpp"
#include "charcyc/simplicial_complex.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace charcyc {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do { x = eng_(); } while (x >= limit);
        return x % n;
    }

    int int_in(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

    bool coin() { return (next() & 1) != 0; }

    /// Small nonzero rational with numerator in [-max_num, max_num].
    Rational nonzero_rational(int max_num = 6, int max_den = 4) {
        int num = 0;
        while (num == 0) num = int_in(-max_num, max_num);
        return Rational(num, int_in(1, max_den));
    }

    template <typename T>
    const T& pick(const std::vector<T>& items) {
        return items[static_cast<std::size_t>(below(items.size()))];
    }

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i)
            std::swap(items[i - 1], items[static_cast<std::size_t>(below(i))]);
    }

  private:
    std::mt19937_64 eng_;
};

/// Random function: each simplex independently carries a small nonzero
/// rational with probability num/den.
inline ConstructibleFunction random_function(Rng& rng, const ComplexPtr& complex,
                                             int keep_num = 1, int keep_den = 2) {
    std::map<Simplex, Rational> values;
    for (const Simplex& s : complex->simplices())
        if (rng.below(static_cast<std::uint64_t>(keep_den)) < static_cast<std::uint64_t>(keep_num))
            values.emplace(s, rng.nonzero_rational());
    return ConstructibleFunction(complex, std::move(values));
}

/// Random function whose support is relatively compact in the open set:
/// only simplices with all faces inside the set are eligible.
inline ConstructibleFunction random_compact_function(Rng& rng, const OpenSet& domain) {
    std::map<Simplex, Rational> values;
    for (const Simplex& s : domain.members()) {
        bool closed_inside = true;
        for (const Simplex& f : closed_faces(s))
            if (!domain.contains(f)) { closed_inside = false; break; }
        if (closed_inside && rng.coin()) values.emplace(s, rng.nonzero_rational());
    }
    return ConstructibleFunction(domain.complex(), std::move(values));
}

/// Random injective vertex weights (a shuffled integer ladder).
inline VertexOrder random_order(Rng& rng, const ComplexPtr& complex) {
    std::vector<Vertex> verts = complex->vertices();
    std::vector<int> ladder(verts.size());
    for (std::size_t i = 0; i < ladder.size(); ++i) ladder[i] = static_cast<int>(i);
    rng.shuffle(ladder);
    std::map<Vertex, Rational> weights;
    for (std::size_t i = 0; i < verts.size(); ++i) weights.emplace(verts[i], ladder[i]);
    return VertexOrder(std::move(weights));
}

/// Random generic covector; falls back to the deterministic moment-curve
/// covector if sampling keeps landing on walls.
inline Vec random_generic_covector(Rng& rng, const EmbeddedChart& chart) {
    for (int attempt = 0; attempt < 256; ++attempt) {
        Vec xi(static_cast<std::size_t>(chart.ambient_dim()));
        for (Rational& x : xi) x = Rational(rng.int_in(-12, 12), rng.int_in(1, 3));
        if (chart.is_generic(xi)) return xi;
    }
    return chart.generic_covector();
}

/// Random face-closed subcomplex spanned by a nonempty subset of maximal
/// simplices of the base complex.
inline ComplexPtr random_subcomplex(Rng& rng, const ComplexPtr& base) {
    std::vector<Simplex> maximal;
    for (const Simplex& s : base->simplices())
        if (base->cofaces(s).size() == 1) maximal.push_back(s);
    std::vector<Simplex> chosen;
    for (const Simplex& s : maximal)
        if (rng.coin()) chosen.push_back(s);
    if (chosen.empty()) chosen.push_back(rng.pick(maximal));
    return make_complex(chosen);
}

/// Random small abstract complex (for purely combinatorial suites).
inline ComplexPtr random_complex(Rng& rng, int max_vertices = 8, int max_dim = 3) {
    const int nv = rng.int_in(1, max_vertices);
    const int pieces = rng.int_in(1, 2 * nv);
    std::vector<Simplex> maximal;
    for (int i = 0; i < pieces; ++i) {
        const int size = rng.int_in(1, std::min(nv, max_dim + 1));
        std::vector<Vertex> pool(static_cast<std::size_t>(nv));
        for (int v = 0; v < nv; ++v) pool[static_cast<std::size_t>(v)] = v;
        rng.shuffle(pool);
        pool.resize(static_cast<std::size_t>(size));
        maximal.push_back(make_simplex(pool));
    }
    return make_complex(maximal);
}

/// Restriction of a chart to a subcomplex of its complex (coordinates are
/// inherited, so validity is automatic).
inline ChartPtr subchart(const ChartPtr& chart, const ComplexPtr& subcomplex) {
    std::map<Vertex, Vec> coords;
    for (Vertex v : subcomplex->vertices()) coords.emplace(v, chart->coord(v));
    return make_chart(subcomplex, chart->ambient_dim(), std::move(coords));
}

/// Random embedded chart carved out of a base chart's complex.
inline ChartPtr random_chart_from(Rng& rng, const ChartPtr& base) {
    return subchart(base, random_subcomplex(rng, base->complex()));
}

}  // namespace charcyc
