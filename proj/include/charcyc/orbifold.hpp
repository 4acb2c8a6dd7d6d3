/**
 * Global-quotient orbifolds: finite simplicial group actions, regularity and
 * regularization, the coarse complex with stabilizer orders, coinvariant
 * classes (canonicalized by averaging, which is legal over the rationals),
 * the pushforward to the coarse space in the norm convention, the weighted
 * coarse integral, transfer, and the equivariant action on cycle tables.
 *
 * Convention note.  The pushforward p_! uses the norm map (sum over group
 * elements), not the set-theoretic fiber sum: at simplices with nontrivial
 * stabilizer the two differ by the stabilizer order, and only the norm
 * convention makes  integral(f) = integral(p_!(f) * iota)  an exact
 * identity.  The fiber-sum variant is kept under its own name for
 * comparison; both are isomorphisms over the rationals.
 */
#pragma once

#include "charcyc/charts.hpp"
#include "charcyc/constructible.hpp"
#include "charcyc/errors.hpp"
#include "charcyc/linalg.hpp"
#include "charcyc/simplicial_complex.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace charcyc {

using Permutation = std::map<Vertex, Vertex>;

inline Vertex apply_perm(const Permutation& p, Vertex v) {
    auto it = p.find(v);
    if (it == p.end()) throw InvalidAction("permutation undefined at vertex " + std::to_string(v));
    return it->second;
}

inline Simplex apply_perm(const Permutation& p, const Simplex& s) {
    Simplex out;
    out.reserve(s.size());
    for (Vertex v : s) out.push_back(apply_perm(p, v));
    std::sort(out.begin(), out.end());
    return out;
}

/// (a then b): compose(b, a)(v) = b(a(v)).
inline Permutation compose_perm(const Permutation& outer, const Permutation& inner) {
    Permutation out;
    for (const auto& [v, w] : inner) out.emplace(v, apply_perm(outer, w));
    return out;
}

inline Permutation invert_perm(const Permutation& p) {
    Permutation out;
    for (const auto& [v, w] : p) out.emplace(w, v);
    return out;
}

/**
 * A finite group of simplicial vertex permutations, closed under
 * composition and inverse and containing the identity.  Elements are
 * indexed; index 0 is the identity.  Each element's derivation as
 * (previous element, generator) is kept so that representations (such as
 * chart matrices) extend multiplicatively from generators.
 */
class GroupAction {
  public:
    static constexpr std::size_t kDefaultClosureCap = 10080;

    static GroupAction from_generators(ComplexPtr complex, std::vector<Permutation> generators,
                                       std::size_t closure_cap = kDefaultClosureCap) {
        GroupAction action;
        action.complex_ = std::move(complex);
        const std::vector<Vertex> verts = action.complex_->vertices();
        for (std::size_t gi = 0; gi < generators.size(); ++gi) {
            Permutation& g = generators[gi];
            for (const auto& [v, w] : g)
                if (!std::binary_search(verts.begin(), verts.end(), v))
                    throw InvalidAction("generator " + std::to_string(gi) + " names vertex " +
                                        std::to_string(v) + " outside the complex");
            // Fill in fixed vertices and validate bijectivity on the vertex set.
            std::set<Vertex> image;
            for (Vertex v : verts) {
                if (!g.count(v)) g.emplace(v, v);
                Vertex w = g.at(v);
                if (!std::binary_search(verts.begin(), verts.end(), w))
                    throw InvalidAction("generator " + std::to_string(gi) + " maps vertex " +
                                        std::to_string(v) + " outside the complex");
                if (!image.insert(w).second)
                    throw InvalidAction("generator " + std::to_string(gi) + " is not injective at " +
                                        std::to_string(w));
            }
            for (const Simplex& s : action.complex_->simplices()) {
                if (!action.complex_->contains(apply_perm(g, s)))
                    throw InvalidAction("generator " + std::to_string(gi) +
                                        " is not simplicial: image of " + simplex_to_string(s) +
                                        " is not a simplex");
            }
        }
        action.generators_ = generators;

        Permutation id;
        for (Vertex v : verts) id.emplace(v, v);
        action.elements_.push_back(std::move(id));
        action.derivation_.emplace_back(-1, -1);
        action.index_by_perm_.emplace(action.image_key(action.elements_[0]), 0);
        for (std::size_t head = 0; head < action.elements_.size(); ++head) {
            for (std::size_t gi = 0; gi < generators.size(); ++gi) {
                Permutation next = compose_perm(generators[gi], action.elements_[head]);
                auto key = action.image_key(next);
                if (action.index_by_perm_.count(key)) continue;
                if (action.elements_.size() >= closure_cap)
                    throw InvalidAction("group closure exceeds cap of " +
                                        std::to_string(closure_cap) + " elements");
                action.index_by_perm_.emplace(std::move(key),
                                              static_cast<int>(action.elements_.size()));
                action.elements_.push_back(std::move(next));
                action.derivation_.emplace_back(static_cast<int>(head), static_cast<int>(gi));
            }
        }
        return action;
    }

    const ComplexPtr& complex() const { return complex_; }
    std::size_t order() const { return elements_.size(); }
    const std::vector<Permutation>& elements() const { return elements_; }
    const std::vector<Permutation>& generators() const { return generators_; }

    /// Element derivations: (previous element index, generator index), with
    /// (-1, -1) for the identity.  In discovery order, so a representation
    /// can be built by one forward pass.
    const std::vector<std::pair<int, int>>& derivations() const { return derivation_; }

    Vertex apply(int g, Vertex v) const { return apply_perm(elements_.at(g), v); }
    Simplex apply(int g, const Simplex& s) const { return apply_perm(elements_.at(g), s); }

    int index_of(const Permutation& p) const {
        auto it = index_by_perm_.find(image_key(p));
        if (it == index_by_perm_.end()) throw InvalidAction("permutation is not a group element");
        return it->second;
    }

    int compose(int a, int b) const {
        return index_of(compose_perm(elements_.at(a), elements_.at(b)));
    }

    int inverse(int g) const { return index_of(invert_perm(elements_.at(g))); }

    /// (g . h)(s) = h(g^{-1} s); pushes the support forward along g.
    ConstructibleFunction act_on(int g, const ConstructibleFunction& h) const {
        if (!same_complex(h.complex(), complex_))
            throw ComplexMismatch("function does not live on the action's complex");
        std::map<Simplex, Rational> values;
        for (const auto& [s, v] : h.values()) values.emplace(apply(g, s), v);
        return ConstructibleFunction(h.complex(), std::move(values));
    }

    /// Indices of elements fixing s setwise.
    std::vector<int> stabilizer(const Simplex& s) const {
        std::vector<int> out;
        for (std::size_t g = 0; g < elements_.size(); ++g)
            if (apply(static_cast<int>(g), s) == s) out.push_back(static_cast<int>(g));
        return out;
    }

    std::vector<Simplex> orbit(const Simplex& s) const {
        std::set<Simplex> seen;
        for (std::size_t g = 0; g < elements_.size(); ++g) seen.insert(apply(static_cast<int>(g), s));
        return std::vector<Simplex>(seen.begin(), seen.end());
    }

    std::map<Vertex, Vertex> vertex_orbit_reps() const {
        std::map<Vertex, Vertex> rep;
        for (Vertex v : complex_->vertices()) {
            Vertex best = v;
            for (const Permutation& g : elements_) best = std::min(best, apply_perm(g, v));
            rep.emplace(v, best);
        }
        return rep;
    }

    /// No non-identity element fixes any simplex setwise.
    bool is_free() const {
        for (std::size_t g = 1; g < elements_.size(); ++g)
            for (const Simplex& s : complex_->simplices())
                if (apply(static_cast<int>(g), s) == s) return false;
        return true;
    }

    bool operator==(const GroupAction& other) const {
        return same_complex(complex_, other.complex_) && elements_ == other.elements_;
    }

  private:
    std::vector<Vertex> image_key(const Permutation& p) const {
        std::vector<Vertex> key;
        key.reserve(p.size());
        for (const auto& [v, w] : p) key.push_back(w);  // domain order is the sorted vertex order
        return key;
    }

    ComplexPtr complex_;
    std::vector<Permutation> elements_;
    std::vector<Permutation> generators_;
    std::vector<std::pair<int, int>> derivation_;
    std::map<std::vector<Vertex>, int> index_by_perm_;
};

using ActionPtr = std::shared_ptr<const GroupAction>;

inline ActionPtr make_action(ComplexPtr complex, std::vector<Permutation> generators,
                             std::size_t closure_cap = GroupAction::kDefaultClosureCap) {
    return std::make_shared<const GroupAction>(
        GroupAction::from_generators(std::move(complex), std::move(generators), closure_cap));
}

/**
 * The two conditions making the quotient simplicial: setwise-fixed
 * simplices are pointwise fixed, and no simplex contains two vertices of
 * one orbit.
 */
struct RegularityReport {
    bool pointwise_condition = true;
    bool orbit_condition = true;
    std::vector<std::pair<int, Simplex>> setwise_failures;              // element, simplex
    std::vector<std::pair<Simplex, std::pair<Vertex, Vertex>>> orbit_failures;

    bool pass() const { return pointwise_condition && orbit_condition; }
};

inline RegularityReport check_regularity(const GroupAction& action) {
    RegularityReport rep;
    const SimplicialComplex& complex = *action.complex();
    for (std::size_t g = 1; g < action.order(); ++g) {
        for (const Simplex& s : complex.simplices()) {
            if (action.apply(static_cast<int>(g), s) != s) continue;
            for (Vertex v : s) {
                if (action.apply(static_cast<int>(g), v) != v) {
                    rep.pointwise_condition = false;
                    rep.setwise_failures.emplace_back(static_cast<int>(g), s);
                    break;
                }
            }
        }
    }
    std::map<Vertex, Vertex> rep_of = action.vertex_orbit_reps();
    for (const Simplex& s : complex.simplices()) {
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = i + 1; j < s.size(); ++j)
                if (rep_of.at(s[i]) == rep_of.at(s[j])) {
                    rep.orbit_condition = false;
                    rep.orbit_failures.emplace_back(s, std::make_pair(s[i], s[j]));
                }
    }
    return rep;
}

/// The deeper quotient-safety condition: distinct simplex orbits must stay
/// distinct after projecting vertices to their orbits.  The two
/// check_regularity conditions do not imply this (subdividing the circle
/// with a rotation once passes them while two edge orbits still collapse
/// onto one coarse edge); one more subdivision always repairs it.
inline bool fibers_are_orbits(const GroupAction& action) {
    std::map<Vertex, Vertex> rep_of = action.vertex_orbit_reps();
    std::map<Simplex, std::vector<Simplex>> fibers;
    for (const Simplex& s : action.complex()->simplices()) {
        Simplex image;
        image.reserve(s.size());
        for (Vertex v : s) image.push_back(rep_of.at(v));
        std::sort(image.begin(), image.end());
        if (std::adjacent_find(image.begin(), image.end()) != image.end()) return false;
        fibers[image].push_back(s);
    }
    for (const auto& [image, fiber] : fibers)
        if (action.orbit(fiber[0]) != fiber) return false;
    return true;
}

/// Induced action on a barycentric subdivision: the new vertices are the
/// source simplices, permuted by the action itself.
inline ActionPtr transport_action(const GroupAction& action, const SubdivisionMap& sd) {
    if (!same_complex(action.complex(), sd.source()))
        throw ComplexMismatch("action does not live on the refinement source");
    std::map<Simplex, Vertex> id_of;
    for (Vertex v : sd.target()->vertices()) id_of.emplace(sd.carrier({v}), v);
    std::vector<Permutation> generators;
    for (const Permutation& g : action.generators()) {
        Permutation induced;
        for (const auto& [s, v] : id_of) induced.emplace(v, id_of.at(apply_perm(g, s)));
        generators.push_back(std::move(induced));
    }
    const std::size_t cap = std::max(GroupAction::kDefaultClosureCap, action.order());
    return make_action(sd.target(), std::move(generators), cap);
}

struct Regularized {
    ActionPtr action;
    SubdivisionMap refinement;  // original complex -> regular complex
    int rounds = 0;
};

/// Subdivides (at most twice) until the action is regular and its quotient
/// is safe.  Classically the second barycentric subdivision always
/// suffices; the hard error is a tripwire for non-simplicial input.
inline Regularized regularize(const ActionPtr& action) {
    ActionPtr current = action;
    SubdivisionMap total = SubdivisionMap::identity(action->complex());
    for (int round = 0; round <= 2; ++round) {
        if (check_regularity(*current).pass() && fibers_are_orbits(*current))
            return Regularized{current, std::move(total), round};
        if (round == 2) break;
        SubdivisionMap step = barycentric_subdivision(current->complex());
        current = transport_action(*current, step);
        total = total.then(step);
    }
    throw StillIrregular("action is irregular after two barycentric subdivisions");
}

/**
 * The coarse complex of a regular action: vertices are vertex orbits (named
 * by their least member), simplices are images of simplices, and fibers of
 * the projection are single orbits with |fiber| * |stabilizer| = |G|.
 */
class QuotientData {
  public:
    explicit QuotientData(ActionPtr action) : action_(std::move(action)) {
        RegularityReport reg = check_regularity(*action_);
        if (!reg.pass()) {
            std::string msg = "action fails regularity: ";
            if (!reg.pointwise_condition)
                msg += "element " + std::to_string(reg.setwise_failures[0].first) +
                       " fixes " + simplex_to_string(reg.setwise_failures[0].second) +
                       " setwise but not pointwise";
            else
                msg += "simplex " + simplex_to_string(reg.orbit_failures[0].first) +
                       " meets one orbit twice";
            throw IrregularAction(msg);
        }
        const SimplicialComplex& complex = *action_->complex();
        std::map<Vertex, Vertex> rep_of = action_->vertex_orbit_reps();
        std::set<Simplex> coarse_simplices;
        for (const Simplex& s : complex.simplices()) {
            Simplex image;
            image.reserve(s.size());
            for (Vertex v : s) image.push_back(rep_of.at(v));
            std::sort(image.begin(), image.end());
            projection_.emplace(s, image);
            fibers_[image].push_back(s);
            coarse_simplices.insert(std::move(image));
        }
        coarse_ = std::make_shared<const SimplicialComplex>(
            SimplicialComplex(std::move(coarse_simplices)));
        for (const Simplex& s : complex.simplices())
            stabilizer_order_.emplace(s, action_->stabilizer(s).size());
        // Fibers must be single orbits; with the counting identity this is
        // exactly the orbit-stabilizer theorem per coarse simplex.
        for (const auto& [image, fiber] : fibers_) {
            std::vector<Simplex> orb = action_->orbit(fiber[0]);
            if (orb != fiber)
                throw IrregularAction("fiber of " + simplex_to_string(image) +
                                      " is not a single orbit");
            if (fiber.size() * stabilizer_order_.at(fiber[0]) != action_->order())
                throw IrregularAction("orbit-stabilizer mismatch at " + simplex_to_string(image));
        }
    }

    const ActionPtr& action() const { return action_; }
    const ComplexPtr& coarse() const { return coarse_; }

    const Simplex& project(const Simplex& s) const {
        auto it = projection_.find(s);
        if (it == projection_.end())
            throw SimplexNotFound("simplex " + simplex_to_string(s) + " not in the quotient source");
        return it->second;
    }

    const std::vector<Simplex>& fiber(const Simplex& coarse_simplex) const {
        auto it = fibers_.find(coarse_simplex);
        if (it == fibers_.end())
            throw SimplexNotFound("coarse simplex " + simplex_to_string(coarse_simplex) +
                                  " has no fiber");
        return it->second;
    }

    std::size_t stabilizer_order(const Simplex& source_simplex) const {
        return stabilizer_order_.at(source_simplex);
    }

    std::size_t coarse_stabilizer_order(const Simplex& coarse_simplex) const {
        return stabilizer_order_.at(fiber(coarse_simplex)[0]);
    }

  private:
    ActionPtr action_;
    ComplexPtr coarse_;
    std::map<Simplex, Simplex> projection_;
    std::map<Simplex, std::vector<Simplex>> fibers_;
    std::map<Simplex, std::size_t> stabilizer_order_;
};

inline QuotientData quotient(const ActionPtr& action) { return QuotientData(action); }

/// The stabilizer weighting on the coarse complex: 1/|G_x| per simplex.
inline ConstructibleFunction iota(const QuotientData& qd) {
    std::map<Simplex, Rational> values;
    for (const Simplex& s : qd.coarse()->simplices())
        values.emplace(s, Rational(1, static_cast<long>(qd.coarse_stabilizer_order(s))));
    return ConstructibleFunction(qd.coarse(), std::move(values));
}

/**
 * A class in the coinvariants of the G-module of constructible functions,
 * canonicalized by its G-average.  Over the rationals averaging splits
 * coinvariants against invariants, so classes are equal exactly when their
 * averages are.
 */
class CoinvariantClass {
  public:
    CoinvariantClass(ActionPtr action, ConstructibleFunction avg)
        : action_(std::move(action)), avg_(std::move(avg)) {}

    const ActionPtr& action() const { return action_; }
    const ConstructibleFunction& avg() const { return avg_; }

    bool operator==(const CoinvariantClass& other) const {
        return *action_ == *other.action_ && avg_ == other.avg_;
    }
    bool operator!=(const CoinvariantClass& other) const { return !(*this == other); }

  private:
    ActionPtr action_;
    ConstructibleFunction avg_;
};

inline CoinvariantClass class_of(const ConstructibleFunction& h, const ActionPtr& action) {
    if (!same_complex(h.complex(), action->complex()))
        throw ComplexMismatch("function does not live on the action's complex");
    ConstructibleFunction sum = ConstructibleFunction::zero(h.complex());
    for (std::size_t g = 0; g < action->order(); ++g)
        sum = sum + action->act_on(static_cast<int>(g), h);
    return CoinvariantClass(action, sum.scaled(Rational(1, static_cast<long>(action->order()))));
}

/// Integral of any representative; well-defined because every g-difference
/// integrates to zero.
inline Rational orbifold_integral(const CoinvariantClass& c) { return euler_integral(c.avg()); }

/// Norm-convention pushforward to the coarse space:
/// p_!(c)(s_bar) = sum over g of (g.h)(lift) = |G| * avg(lift).
inline ConstructibleFunction pushforward_p(const CoinvariantClass& c, const QuotientData& qd) {
    if (!(*c.action() == *qd.action())) throw ComplexMismatch("class and quotient actions differ");
    const Rational order(static_cast<long>(qd.action()->order()));
    std::map<Simplex, Rational> values;
    for (const Simplex& coarse : qd.coarse()->simplices()) {
        Rational v = order * c.avg().value(qd.fiber(coarse)[0]);
        if (v != 0) values.emplace(coarse, std::move(v));
    }
    return ConstructibleFunction(qd.coarse(), std::move(values));
}

/// Set-theoretic fiber sum, for comparison with the norm convention; the
/// two differ by the stabilizer order at non-free simplices.
inline ConstructibleFunction pushforward_fiber_sum(const CoinvariantClass& c,
                                                   const QuotientData& qd) {
    if (!(*c.action() == *qd.action())) throw ComplexMismatch("class and quotient actions differ");
    std::map<Simplex, Rational> values;
    for (const Simplex& coarse : qd.coarse()->simplices()) {
        Rational v = 0;
        for (const Simplex& t : qd.fiber(coarse)) v += c.avg().value(t);
        if (v != 0) values.emplace(coarse, std::move(v));
    }
    return ConstructibleFunction(qd.coarse(), std::move(values));
}

/// integral(p_!(c) * iota) over the coarse space; equals orbifold_integral.
inline Rational coarse_weighted_integral(const CoinvariantClass& c, const QuotientData& qd) {
    return euler_integral(pushforward_p(c, qd) * iota(qd));
}

/// Pullback along the projection; the result is G-invariant.
inline ConstructibleFunction transfer(const ConstructibleFunction& coarse_fn,
                                      const QuotientData& qd) {
    if (!same_complex(coarse_fn.complex(), qd.coarse()))
        throw ComplexMismatch("function does not live on the coarse complex");
    std::map<Simplex, Rational> values;
    for (const Simplex& s : qd.action()->complex()->simplices()) {
        Rational v = coarse_fn.value(qd.project(s));
        if (v != 0) values.emplace(s, std::move(v));
    }
    return ConstructibleFunction(qd.action()->complex(), std::move(values));
}

/**
 * Matrix of p_! from the orbit-indicator class basis to the coarse simplex
 * basis, with its exact rank.  Invertibility is the norm-map isomorphism.
 */
struct PushforwardIsoReport {
    std::vector<Simplex> coarse_basis;
    Mat matrix;  // rows: coarse simplices, columns: orbit classes
    bool square = false;
    bool invertible = false;

    bool pass() const { return square && invertible; }
};

inline PushforwardIsoReport verify_p_iso(const QuotientData& qd) {
    PushforwardIsoReport rep;
    for (const Simplex& s : qd.coarse()->simplices()) rep.coarse_basis.push_back(s);
    const std::size_t n = rep.coarse_basis.size();
    rep.matrix.assign(n, Vec(n, 0));
    for (std::size_t j = 0; j < n; ++j) {
        ConstructibleFunction orbit_indicator =
            ConstructibleFunction::indicator(qd.action()->complex(), qd.fiber(rep.coarse_basis[j]));
        ConstructibleFunction column = pushforward_p(class_of(orbit_indicator, qd.action()), qd);
        for (std::size_t i = 0; i < n; ++i) rep.matrix[i][j] = column.value(rep.coarse_basis[i]);
    }
    rep.square = true;
    rep.invertible = (rank(rep.matrix) == n);
    return rep;
}

/**
 * Writes h as a weighted sum of indicator functions, each supported on the
 * open simplices sharing one value of h and one isotropy conjugacy class.
 * Pieces are keyed deterministically by (class key, value).
 */
struct SimplePiece {
    Rational coefficient;
    ConstructibleFunction indicator;
    std::vector<int> stabilizer_class_key;  // lexicographically least conjugate stabilizer
};

inline std::vector<SimplePiece> simple_decomposition(const ConstructibleFunction& h,
                                                     const ActionPtr& action) {
    if (!same_complex(h.complex(), action->complex()))
        throw ComplexMismatch("function does not live on the action's complex");
    auto conj_class_key = [&](const std::vector<int>& stab) {
        std::vector<int> best;
        for (std::size_t g = 0; g < action->order(); ++g) {
            std::vector<int> conj;
            conj.reserve(stab.size());
            const int gi = static_cast<int>(g);
            const int gi_inv = action->inverse(gi);
            for (int s : stab) conj.push_back(action->compose(action->compose(gi, s), gi_inv));
            std::sort(conj.begin(), conj.end());
            if (best.empty() || conj < best) best = std::move(conj);
        }
        return best;
    };
    std::map<std::pair<std::vector<int>, Rational>, std::set<Simplex>> buckets;
    for (const auto& [s, v] : h.values())
        buckets[{conj_class_key(action->stabilizer(s)), v}].insert(s);
    std::vector<SimplePiece> pieces;
    for (const auto& [key, simplices] : buckets) {
        SimplePiece piece{key.second,
                          ConstructibleFunction::indicator(h.complex(), simplices), key.first};
        pieces.push_back(std::move(piece));
    }
    return pieces;
}

/**
 * The composite p_! after transfer on the coarse basis.  In the norm
 * convention the composite is |G| times the identity; the report certifies
 * the diagonal exactly.
 */
struct TransferNormReport {
    std::vector<Simplex> coarse_basis;
    Vec diagonal;
    bool is_diagonal = true;
    bool invertible = true;

    bool pass() const { return is_diagonal && invertible; }
};

inline TransferNormReport verify_transfer_norm(const QuotientData& qd) {
    TransferNormReport rep;
    for (const Simplex& s : qd.coarse()->simplices()) rep.coarse_basis.push_back(s);
    for (const Simplex& s : rep.coarse_basis) {
        ConstructibleFunction unit =
            ConstructibleFunction::indicator(qd.coarse(), std::vector<Simplex>{s});
        ConstructibleFunction back =
            pushforward_p(class_of(transfer(unit, qd), qd.action()), qd);
        rep.diagonal.push_back(back.value(s));
        if (back.value(s) == 0) rep.invertible = false;
        for (const Simplex& t : rep.coarse_basis)
            if (t != s && back.value(t) != 0) rep.is_diagonal = false;
    }
    return rep;
}

/**
 * An embedded chart on which the action is realized by exact-rational
 * orthogonal matrices.  Element matrices are built from the generator
 * matrices along the group's derivation order and validated against the
 * coordinates.
 */
class EquivariantChart {
  public:
    EquivariantChart(ChartPtr chart, ActionPtr action, std::vector<Mat> generator_matrices)
        : chart_(std::move(chart)), action_(std::move(action)) {
        if (!same_complex(chart_->complex(), action_->complex()))
            throw ComplexMismatch("chart and action live on different complexes");
        if (generator_matrices.size() != action_->generators().size())
            throw IncompatibleAction("need one matrix per generator");
        const std::size_t n = static_cast<std::size_t>(chart_->ambient_dim());
        const Mat id = identity_matrix(n);
        for (std::size_t gi = 0; gi < generator_matrices.size(); ++gi) {
            const Mat& m = generator_matrices[gi];
            if (m.size() != n)
                throw IncompatibleAction("generator matrix " + std::to_string(gi) +
                                         " has the wrong size");
            for (const Vec& row : m)
                if (row.size() != n)
                    throw IncompatibleAction("generator matrix " + std::to_string(gi) +
                                             " has the wrong size");
            if (mat_mul(transpose(m), m) != id)
                throw NonOrthogonalMatrix("generator matrix " + std::to_string(gi) +
                                          " is not orthogonal");
        }
        rho_.resize(action_->order());
        const auto& derivations = action_->derivations();
        rho_[0] = id;
        for (std::size_t e = 1; e < action_->order(); ++e) {
            const auto& [parent, gi] = derivations[e];
            rho_[e] = mat_mul(generator_matrices[static_cast<std::size_t>(gi)],
                              rho_[static_cast<std::size_t>(parent)]);
        }
        for (std::size_t e = 0; e < action_->order(); ++e) {
            for (Vertex v : chart_->complex()->vertices()) {
                if (mat_vec(rho_[e], chart_->coord(v)) !=
                    chart_->coord(action_->apply(static_cast<int>(e), v)))
                    throw IncompatibleAction("matrix of element " + std::to_string(e) +
                                             " does not move vertex " + std::to_string(v) +
                                             " with the action");
            }
        }
    }

    const ChartPtr& chart() const { return chart_; }
    const ActionPtr& action() const { return action_; }
    const Mat& matrix(int g) const { return rho_.at(static_cast<std::size_t>(g)); }

  private:
    ChartPtr chart_;
    ActionPtr action_;
    std::vector<Mat> rho_;
};

/**
 * Pushes a cycle table along g: the chamber (S, eps) with witness xi maps to
 * (gS, eps relabelled along g), the chamber of xi composed with the inverse
 * matrix.  A bijection on chambers, so tables map to tables.
 */
inline LagrangianCycleTable equivariant_table_action(int g, const LagrangianCycleTable& table,
                                                     const EquivariantChart& eq) {
    if (table.chart() != eq.chart()) throw ComplexMismatch("table does not live on the chart");
    const EmbeddedChart& chart = *eq.chart();
    const GroupAction& action = *eq.action();
    const int g_inv = action.inverse(g);
    std::map<Simplex, std::vector<Rational>> mult;
    for (const auto& [s, row] : table.rows()) {
        const Simplex image = action.apply(g, s);
        const auto& src_verts = chart.link_verts(s);
        const auto& dst_verts = chart.link_verts(image);
        std::vector<Rational> out(chart.chambers(image).size(), 0);
        for (std::size_t idx = 0; idx < row.size(); ++idx) {
            if (row[idx] == 0) continue;
            const std::vector<signed char>& signs = chart.chambers(s)[idx].signs;
            std::vector<signed char> image_signs(dst_verts.size());
            for (std::size_t i = 0; i < dst_verts.size(); ++i) {
                Vertex w = action.apply(g_inv, dst_verts[i]);
                std::size_t j = static_cast<std::size_t>(
                    std::lower_bound(src_verts.begin(), src_verts.end(), w) - src_verts.begin());
                image_signs[i] = signs[j];
            }
            int image_idx = chart.chamber_index(image, image_signs);
            if (image_idx < 0)
                throw IncompatibleAction("transported chamber vanished at " +
                                         simplex_to_string(image));
            out[static_cast<std::size_t>(image_idx)] += row[idx];
        }
        mult.emplace(image, std::move(out));
    }
    return LagrangianCycleTable(eq.chart(), std::move(mult));
}

/**
 * The orbifold index identities on one equivariant chart: CC commutes with
 * the action, the zero-section intersection is constant on orbits of
 * tables, and both routes to the orbifold integral of the class of h agree
 * with the manifold-level value.
 */
struct OrbifoldIndexReport {
    bool cc_equivariant = true;
    bool zeta_invariant = true;
    Rational manifold_integral;
    Rational orbifold_value;
    Rational zeta_value;
    bool index_identity = false;

    bool pass() const { return cc_equivariant && zeta_invariant && index_identity; }
};

inline OrbifoldIndexReport orbifold_index_check(const ConstructibleFunction& h,
                                                const EquivariantChart& eq) {
    OrbifoldIndexReport rep;
    const ActionPtr& action = eq.action();
    LagrangianCycleTable base = cc(h, eq.chart());
    rep.zeta_value = intersect_zero_section(base);
    for (std::size_t g = 0; g < action->order(); ++g) {
        LagrangianCycleTable moved = equivariant_table_action(static_cast<int>(g), base, eq);
        if (!(cc(action->act_on(static_cast<int>(g), h), eq.chart()) == moved))
            rep.cc_equivariant = false;
        if (intersect_zero_section(moved) != rep.zeta_value) rep.zeta_invariant = false;
    }
    rep.manifold_integral = euler_integral(h);
    rep.orbifold_value = orbifold_integral(class_of(h, action));
    rep.index_identity =
        (rep.zeta_value == rep.manifold_integral) && (rep.orbifold_value == rep.manifold_integral);
    return rep;
}

}  // namespace charcyc
