/**
 * Cosheaf structure on the finite site: open covers, Mayer-Vietoris
 * splitting of compactly supported functions, and localized verification of
 * the index formula.  Two-chart splitting is the primitive; larger covers
 * reduce to it by induction.  The constant cosheaf is represented by the
 * rational targets of the integral and the zero-section intersection; no
 * cosheafification machinery is needed on a finite site.
 */
#pragma once

#include "charcyc/charts.hpp"
#include "charcyc/constructible.hpp"
#include "charcyc/errors.hpp"
#include "charcyc/morse.hpp"
#include "charcyc/random_gen.hpp"
#include "charcyc/simplicial_complex.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace charcyc {

/// A finite list of open sets whose union is the whole complex.
class OpenCover {
  public:
    OpenCover(ComplexPtr complex, std::vector<OpenSet> charts)
        : complex_(std::move(complex)), charts_(std::move(charts)) {
        std::set<Simplex> covered;
        for (const OpenSet& u : charts_) {
            if (!same_complex(u.complex(), complex_))
                throw ComplexMismatch("cover chart lives on a different complex");
            covered.insert(u.members().begin(), u.members().end());
        }
        if (covered.size() != complex_->size())
            throw NotACover("cover misses " + std::to_string(complex_->size() - covered.size()) +
                            " simplices");
    }

    const ComplexPtr& complex() const { return complex_; }
    const std::vector<OpenSet>& charts() const { return charts_; }

  private:
    ComplexPtr complex_;
    std::vector<OpenSet> charts_;
};

struct MvSplit {
    ConstructibleFunction f_u;  // compactly supported in u
    ConstructibleFunction f_v;  // compactly supported in v
    SubdivisionMap refinement;  // original complex -> complex the pieces live on
    OpenSet u;
    OpenSet v;
    int rounds = 0;
};

/**
 * Splits f into pieces compactly supported in U and V, subdividing until
 * the closure of every support simplex lies wholly inside one chart.  Each
 * such simplex goes to U when possible, else to V (deterministic
 * tie-break).  The extensions of the pieces sum to the subdivided f.
 */
inline MvSplit mv_split(const ConstructibleFunction& f, const OpenSet& u_in, const OpenSet& v_in,
                        int cap = 8) {
    if (!same_complex(f.complex(), u_in.complex()) || !same_complex(f.complex(), v_in.complex()))
        throw ComplexMismatch("function and cover live on different complexes");
    if (u_in.set_union(v_in).members().size() != f.complex()->size())
        throw NotACover("the two open sets do not cover the complex");

    ConstructibleFunction current = f;
    OpenSet u = u_in;
    OpenSet v = v_in;
    SubdivisionMap total = SubdivisionMap::identity(f.complex());
    for (int round = 0;; ++round) {
        bool split_ready = true;
        for (const auto& [s, val] : current.values()) {
            bool in_u = true, in_v = true;
            for (const Simplex& face : closed_faces(s)) {
                if (!u.contains(face)) in_u = false;
                if (!v.contains(face)) in_v = false;
                if (!in_u && !in_v) break;
            }
            if (!in_u && !in_v) { split_ready = false; break; }
        }
        if (split_ready) {
            std::map<Simplex, Rational> to_u, to_v;
            for (const auto& [s, val] : current.values()) {
                bool in_u = true;
                for (const Simplex& face : closed_faces(s))
                    if (!u.contains(face)) { in_u = false; break; }
                if (in_u) to_u.emplace(s, val);
                else to_v.emplace(s, val);
            }
            return MvSplit{ConstructibleFunction(current.complex(), std::move(to_u)),
                           ConstructibleFunction(current.complex(), std::move(to_v)),
                           std::move(total), std::move(u), std::move(v), round};
        }
        if (round >= cap)
            throw SubdivisionCapExceeded("no admissible splitting after " + std::to_string(cap) +
                                         " subdivisions");
        SubdivisionMap step = barycentric_subdivision(current.complex());
        current = pullback_subdivision(current, step);
        u = step.transport_open(u);
        v = step.transport_open(v);
        total = total.then(step);
    }
}

/**
 * Cosheaf exactness on a two-chart cover: random functions split and
 * reassemble exactly, and a pair of compactly supported functions on U and
 * V with equal extensions always comes from the intersection.
 */
struct MvExactnessReport {
    std::size_t trials = 0;
    std::size_t reassembly_ok = 0;
    std::size_t integral_additivity_ok = 0;
    std::size_t middle_pairs = 0;
    std::size_t middle_witnessed = 0;
    std::size_t adversarial_pairs = 0;
    std::size_t adversarial_rejected = 0;

    bool pass() const {
        return reassembly_ok == trials && integral_additivity_ok == trials &&
               middle_witnessed == middle_pairs && adversarial_rejected == adversarial_pairs;
    }
};

inline MvExactnessReport verify_mv_exactness(const ComplexPtr& complex, const OpenSet& u,
                                             const OpenSet& v, std::size_t trials,
                                             std::uint64_t seed) {
    MvExactnessReport rep;
    rep.trials = trials;
    Rng rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        ConstructibleFunction f = random_function(rng, complex);
        MvSplit split = mv_split(f, u, v);
        ConstructibleFunction subdivided = pullback_subdivision(f, split.refinement);
        ConstructibleFunction glued =
            extend_by_zero(split.f_u, split.u) + extend_by_zero(split.f_v, split.v);
        if (glued == subdivided) ++rep.reassembly_ok;
        if (euler_integral(split.f_u) + euler_integral(split.f_v) == euler_integral(f))
            ++rep.integral_additivity_ok;
    }
    // Middle exactness: pairs (h, h) with h compactly supported in both
    // charts must be witnessed by compact support in the intersection.
    OpenSet meet = u.set_intersection(v);
    for (std::size_t t = 0; t < trials; ++t) {
        ConstructibleFunction h = random_compact_function(rng, meet);
        ++rep.middle_pairs;
        if (is_relatively_compact(h, u) && is_relatively_compact(h, v) &&
            is_relatively_compact(h, meet))
            ++rep.middle_witnessed;
    }
    // Adversarial pairs: supported inside the intersection but with closure
    // touching its boundary; these are not legitimate sections on U or V
    // simultaneously and must be rejected by the face-closure test.
    for (const Simplex& s : meet.members()) {
        bool closed_inside = true;
        for (const Simplex& face : closed_faces(s))
            if (!meet.contains(face)) { closed_inside = false; break; }
        if (closed_inside) continue;
        ++rep.adversarial_pairs;
        ConstructibleFunction h =
            ConstructibleFunction::indicator(complex, std::vector<Simplex>{s});
        if (!(is_relatively_compact(h, u) && is_relatively_compact(h, v)))
            ++rep.adversarial_rejected;
    }
    return rep;
}

/**
 * Localized index verification on an open chart: for random functions
 * compactly supported in U, the Euler integral, the Morse sum along random
 * orders, and the zero-section intersection of the characteristic cycle all
 * agree; and both the integral and the intersection are additive across a
 * Mayer-Vietoris split whenever a second chart is supplied.
 */
struct LocalizedIndexReport {
    std::size_t trials = 0;
    std::size_t index_ok = 0;
    std::size_t additivity_checked = 0;
    std::size_t additivity_ok = 0;

    bool pass() const { return index_ok == trials && additivity_ok == additivity_checked; }
};

inline LocalizedIndexReport localized_index_verify(const ChartPtr& chart, const OpenSet& u,
                                                   std::size_t trials, std::uint64_t seed,
                                                   const OpenSet* v = nullptr) {
    if (!same_complex(chart->complex(), u.complex()))
        throw ComplexMismatch("open set does not live on the chart's complex");
    LocalizedIndexReport rep;
    rep.trials = trials;
    Rng rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        ConstructibleFunction f = random_compact_function(rng, u);
        const Rational integral = euler_integral(f);
        const Rational morse = morse_evaluate(f, random_order(rng, chart->complex()));
        const Rational zeta =
            intersect_zero_section(cc(f, chart), random_generic_covector(rng, *chart));
        if (integral == morse && integral == zeta) ++rep.index_ok;
        if (v != nullptr) {
            ++rep.additivity_checked;
            MvSplit split = mv_split(f, u, *v);
            ChartPtr fine = (split.rounds == 0) ? chart : subdivide_chart(chart, split.refinement);
            const Rational zu = intersect_zero_section(cc(split.f_u, fine));
            const Rational zv = intersect_zero_section(cc(split.f_v, fine));
            const bool integrals_add =
                euler_integral(split.f_u) + euler_integral(split.f_v) == integral;
            if (integrals_add && zu + zv == zeta) ++rep.additivity_ok;
        }
    }
    return rep;
}

}  // namespace charcyc
