/**
 * Characteristic cycles on coordinate-embedded complexes.
 *
 * For a simplex S of an embedded complex, the conormal space is the set of
 * covectors annihilating the edge vectors of S.  The hyperplanes dual to the
 * link vertices of S cut it into chambers; a chamber is recorded as the sign
 * vector of its defining strict inequalities together with an exact rational
 * witness covector.  A Lagrangian cycle table assigns a rational
 * multiplicity to every realizable chamber.
 *
 * The CC map sends a constructible function to the table
 *
 *   m(S, eps) = f(S) - sum over tau in the eps-positive half link of
 *               (-1)^dim(tau) * f(S * tau)
 *
 * and is an isomorphism onto chamber-consistent tables; cc_inverse solves
 * the same relation top dimension down and cross-checks every chamber.
 * Intersection with the zero section reads vertex multiplicities along a
 * generic covector and reproduces both the Euler integral and the Morse sum.
 *
 * Chamber enumeration is exhaustive over sign vectors, each decided by exact
 * strict feasibility (Fourier-Motzkin with a margin variable).  Exponential
 * in link size; fine at the scales this library targets.  A hyperplane
 * arrangement walk would be the optimization if ever needed.
 */
#pragma once

#include "charcyc/constructible.hpp"
#include "charcyc/errors.hpp"
#include "charcyc/linalg.hpp"
#include "charcyc/morse.hpp"
#include "charcyc/simplicial_complex.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace charcyc {

/// One conormal chamber: strict signs over the (sorted) link vertices and a
/// rational covector witnessing them.
struct Chamber {
    std::vector<signed char> signs;  // +1 / -1 per link vertex
    Vec witness;                     // annihilates the simplex's edge vectors
};

inline std::string signs_to_string(const std::vector<signed char>& signs) {
    std::string out;
    for (signed char s : signs) out += (s > 0 ? '+' : '-');
    return out.empty() ? std::string("()") : out;
}

/**
 * A complex embedded in Q^n with affinely independent simplices and
 * pairwise distinct vertex coordinates.  All conormal chamber data is
 * enumerated once at construction and shared read-only afterwards.
 */
class EmbeddedChart {
  public:
    EmbeddedChart(ComplexPtr complex, int ambient_dim, std::map<Vertex, Vec> coords)
        : complex_(std::move(complex)), ambient_dim_(ambient_dim), coords_(std::move(coords)) {
        validate();
        build_atlas();
    }

    const ComplexPtr& complex() const { return complex_; }
    int ambient_dim() const { return ambient_dim_; }
    const std::map<Vertex, Vec>& coords() const { return coords_; }

    const Vec& coord(Vertex v) const {
        auto it = coords_.find(v);
        if (it == coords_.end())
            throw InvalidChart("vertex " + std::to_string(v) + " has no coordinates");
        return it->second;
    }

    Vec barycenter(const Simplex& s) const {
        Vec b(static_cast<std::size_t>(ambient_dim_), 0);
        for (Vertex v : s) {
            const Vec& p = coord(v);
            for (std::size_t j = 0; j < b.size(); ++j) b[j] += p[j];
        }
        for (Rational& x : b) x /= static_cast<int>(s.size());
        return b;
    }

    const std::vector<Vertex>& link_verts(const Simplex& s) const { return geometry(s).link_verts; }
    const std::vector<Chamber>& chambers(const Simplex& s) const { return geometry(s).chambers; }

    /// Index of the chamber with the given sign vector, or -1.
    int chamber_index(const Simplex& s, const std::vector<signed char>& signs) const {
        const SimplexGeometry& g = geometry(s);
        auto it = g.index_of_signs.find(signs);
        return it == g.index_of_signs.end() ? -1 : it->second;
    }

    /// Sign vector cut out by a covector at s; nullopt if some link vertex
    /// lands on a wall.
    std::optional<std::vector<signed char>> signs_of_covector(const Simplex& s,
                                                              const Vec& covector) const {
        const SimplexGeometry& g = geometry(s);
        Vec b = barycenter(s);
        std::vector<signed char> signs;
        signs.reserve(g.link_verts.size());
        for (Vertex w : g.link_verts) {
            const Vec& p = coord(w);
            Rational val = 0;
            for (std::size_t j = 0; j < b.size(); ++j) val += covector[j] * (p[j] - b[j]);
            if (val == 0) return std::nullopt;
            signs.push_back(val > 0 ? 1 : -1);
        }
        return signs;
    }

    /// Deterministic generic covector: walks the moment curve (1, t, t^2, ...)
    /// until all vertex heights are distinct.
    Vec generic_covector() const {
        for (int t = 1;; ++t) {
            Vec xi(static_cast<std::size_t>(ambient_dim_));
            Rational power = 1;
            for (std::size_t j = 0; j < xi.size(); ++j) {
                xi[j] = power;
                power *= t;
            }
            if (is_generic(xi)) return xi;
        }
    }

    bool is_generic(const Vec& covector) const {
        std::set<Rational> heights;
        for (const auto& [v, p] : coords_) {
            if (!heights.insert(dot(covector, p)).second) return false;
        }
        return true;
    }

    /// Vertex heights along a covector, as a Morse order.  Throws
    /// NonGenericCovector unless the heights are injective.
    VertexOrder order_from_covector(const Vec& covector) const {
        if (static_cast<int>(covector.size()) != ambient_dim_)
            throw NonGenericCovector("covector has wrong dimension");
        if (!is_generic(covector))
            throw NonGenericCovector("covector heights are not injective on vertices");
        std::map<Vertex, Rational> weights;
        for (const auto& [v, p] : coords_) weights.emplace(v, dot(covector, p));
        return VertexOrder(std::move(weights));
    }

    /// Per-simplex data for the multiplicity rule: each link simplex tau as
    /// a bitmask over the sorted link vertices, with its join and parity.
    struct LinkTerm {
        std::uint64_t mask;
        int parity;  // (-1)^dim(tau)
        Simplex join;
    };

    const std::vector<LinkTerm>& link_terms(const Simplex& s) const { return geometry(s).link_terms; }

  private:
    struct SimplexGeometry {
        std::vector<Vertex> link_verts;
        std::vector<Chamber> chambers;
        std::map<std::vector<signed char>, int> index_of_signs;
        std::vector<LinkTerm> link_terms;
    };

    void validate() const {
        const std::size_t n = static_cast<std::size_t>(ambient_dim_);
        for (Vertex v : complex_->vertices()) {
            auto it = coords_.find(v);
            if (it == coords_.end())
                throw InvalidChart("vertex " + std::to_string(v) + " has no coordinates");
            if (it->second.size() != n)
                throw InvalidChart("vertex " + std::to_string(v) + " has coordinates of wrong dimension");
        }
        std::map<Vec, Vertex> seen;
        for (const auto& [v, p] : coords_) {
            auto [it, fresh] = seen.emplace(p, v);
            if (!fresh)
                throw InvalidChart("vertices " + std::to_string(it->second) + " and " +
                                   std::to_string(v) + " share coordinates");
        }
        for (const Simplex& s : complex_->simplices()) {
            if (simplex_dim(s) > ambient_dim_)
                throw InvalidChart("simplex " + simplex_to_string(s) + " exceeds the ambient dimension");
            Mat edges = edge_matrix(s);
            if (rank(edges) != edges.size())
                throw InvalidChart("simplex " + simplex_to_string(s) + " is affinely degenerate");
        }
    }

    Mat edge_matrix(const Simplex& s) const {
        Mat edges;
        const Vec& base = coord(s[0]);
        for (std::size_t i = 1; i < s.size(); ++i) {
            Vec row = coord(s[i]);
            for (std::size_t j = 0; j < row.size(); ++j) row[j] -= base[j];
            edges.push_back(std::move(row));
        }
        return edges;
    }

    void build_atlas() {
        for (const Simplex& s : complex_->simplices()) {
            SimplexGeometry g;
            g.link_verts = link_vertices(*complex_, s);
            if (g.link_verts.size() >= 63)
                throw InvalidChart("link of " + simplex_to_string(s) + " is too large to enumerate");
            const SimplicialComplex link_complex = link(*complex_, s);
            for (const Simplex& tau : link_complex.simplices()) {
                LinkTerm term;
                term.mask = 0;
                for (Vertex w : tau) {
                    std::size_t idx = static_cast<std::size_t>(
                        std::lower_bound(g.link_verts.begin(), g.link_verts.end(), w) -
                        g.link_verts.begin());
                    term.mask |= std::uint64_t{1} << idx;
                }
                term.parity = (simplex_dim(tau) % 2 == 0) ? 1 : -1;
                term.join = simplex_join(s, tau);
                g.link_terms.push_back(std::move(term));
            }
            enumerate_chambers_into(s, g);
            atlas_.emplace(s, std::move(g));
        }
    }

    void enumerate_chambers_into(const Simplex& s, SimplexGeometry& g) const {
        const std::size_t n = static_cast<std::size_t>(ambient_dim_);
        std::vector<Vec> conormal_basis = nullspace_basis(edge_matrix(s), n);
        const std::size_t k = conormal_basis.size();
        if (g.link_verts.empty()) {
            Chamber c;
            c.witness = (k > 0) ? conormal_basis[0] : Vec(n, 0);
            g.index_of_signs.emplace(c.signs, 0);
            g.chambers.push_back(std::move(c));
            return;
        }
        // Reduced coordinates of the link walls: row w maps y to xi.(w - b)
        // where xi = sum_j y_j * basis_j.
        Vec b = barycenter(s);
        std::vector<Vec> wall(g.link_verts.size(), Vec(k, 0));
        for (std::size_t i = 0; i < g.link_verts.size(); ++i) {
            Vec diff = coord(g.link_verts[i]);
            for (std::size_t j = 0; j < n; ++j) diff[j] -= b[j];
            for (std::size_t j = 0; j < k; ++j) wall[i][j] = dot(conormal_basis[j], diff);
        }
        const std::uint64_t total = std::uint64_t{1} << g.link_verts.size();
        for (std::uint64_t mask = 0; mask < total; ++mask) {
            std::vector<Vec> rows = wall;
            std::vector<signed char> signs(g.link_verts.size());
            for (std::size_t i = 0; i < g.link_verts.size(); ++i) {
                const bool positive = (mask >> i) & 1;
                signs[i] = positive ? 1 : -1;
                if (!positive)
                    for (Rational& x : rows[i]) x = -x;
            }
            std::optional<Vec> y = solve_strict_positive(rows, k);
            if (!y) continue;
            Chamber c;
            c.signs = std::move(signs);
            c.witness.assign(n, 0);
            for (std::size_t j = 0; j < k; ++j)
                for (std::size_t d = 0; d < n; ++d) c.witness[d] += (*y)[j] * conormal_basis[j][d];
            g.index_of_signs.emplace(c.signs, static_cast<int>(g.chambers.size()));
            g.chambers.push_back(std::move(c));
        }
    }

    const SimplexGeometry& geometry(const Simplex& s) const {
        auto it = atlas_.find(s);
        if (it == atlas_.end())
            throw SimplexNotFound("simplex " + simplex_to_string(s) + " not in chart");
        return it->second;
    }

    ComplexPtr complex_;
    int ambient_dim_;
    std::map<Vertex, Vec> coords_;
    std::map<Simplex, SimplexGeometry> atlas_;
};

using ChartPtr = std::shared_ptr<const EmbeddedChart>;

inline ChartPtr make_chart(ComplexPtr complex, int ambient_dim, std::map<Vertex, Vec> coords) {
    return std::make_shared<const EmbeddedChart>(std::move(complex), ambient_dim, std::move(coords));
}

/// The chambers of one simplex, as (sign vector, witness) pairs.
inline const std::vector<Chamber>& enumerate_chambers(const EmbeddedChart& chart, const Simplex& s) {
    return chart.chambers(s);
}

/**
 * Rational multiplicities over all realizable chambers, with finite
 * horizontal support.  Rows are aligned with the chart's chamber order;
 * all-zero rows are never stored, so table equality is map equality.
 */
class LagrangianCycleTable {
  public:
    explicit LagrangianCycleTable(ChartPtr chart) : chart_(std::move(chart)) {}

    LagrangianCycleTable(ChartPtr chart, std::map<Simplex, std::vector<Rational>> mult)
        : chart_(std::move(chart)), mult_(std::move(mult)) {
        for (auto it = mult_.begin(); it != mult_.end();) {
            const std::size_t want = chart_->chambers(it->first).size();
            if (it->second.size() != want)
                throw InconsistentTable("row for " + simplex_to_string(it->first) +
                                        " has the wrong number of chambers");
            bool all_zero = true;
            for (const Rational& m : it->second)
                if (m != 0) { all_zero = false; break; }
            if (all_zero) it = mult_.erase(it);
            else ++it;
        }
    }

    const ChartPtr& chart() const { return chart_; }
    const std::map<Simplex, std::vector<Rational>>& rows() const { return mult_; }

    Rational mult(const Simplex& s, std::size_t chamber_idx) const {
        auto it = mult_.find(s);
        if (it == mult_.end()) return 0;
        return it->second.at(chamber_idx);
    }

    std::vector<Simplex> horizontal_support() const {
        std::vector<Simplex> out;
        out.reserve(mult_.size());
        for (const auto& [s, row] : mult_) out.push_back(s);
        return out;
    }

    bool is_zero() const { return mult_.empty(); }

    LagrangianCycleTable operator+(const LagrangianCycleTable& other) const {
        check_same(other);
        std::map<Simplex, std::vector<Rational>> mult = mult_;
        for (const auto& [s, row] : other.mult_) {
            auto [it, fresh] = mult.emplace(s, row);
            if (!fresh)
                for (std::size_t i = 0; i < row.size(); ++i) it->second[i] += row[i];
        }
        return LagrangianCycleTable(chart_, std::move(mult));
    }

    LagrangianCycleTable operator-(const LagrangianCycleTable& other) const {
        return *this + other.scaled(-1);
    }

    LagrangianCycleTable scaled(const Rational& c) const {
        std::map<Simplex, std::vector<Rational>> mult;
        if (c != 0) {
            mult = mult_;
            for (auto& [s, row] : mult)
                for (Rational& m : row) m *= c;
        }
        return LagrangianCycleTable(chart_, std::move(mult));
    }

    bool operator==(const LagrangianCycleTable& other) const {
        return chart_ == other.chart_ && mult_ == other.mult_;
    }
    bool operator!=(const LagrangianCycleTable& other) const { return !(*this == other); }

  private:
    void check_same(const LagrangianCycleTable& other) const {
        if (chart_ != other.chart_) throw ComplexMismatch("tables live on different charts");
    }

    ChartPtr chart_;
    std::map<Simplex, std::vector<Rational>> mult_;
};

/// The characteristic cycle of a constructible function.
inline LagrangianCycleTable cc(const ConstructibleFunction& f, const ChartPtr& chart) {
    if (!same_complex(f.complex(), chart->complex()))
        throw ComplexMismatch("function does not live on the chart's complex");
    std::map<Simplex, std::vector<Rational>> mult;
    for (const Simplex& s : chart->complex()->simplices()) {
        const auto& chambers = chart->chambers(s);
        const auto& terms = chart->link_terms(s);
        std::vector<Rational> row(chambers.size(), 0);
        bool any = false;
        for (std::size_t idx = 0; idx < chambers.size(); ++idx) {
            std::uint64_t positive = 0;
            for (std::size_t i = 0; i < chambers[idx].signs.size(); ++i)
                if (chambers[idx].signs[i] > 0) positive |= std::uint64_t{1} << i;
            Rational m = f.value(s);
            for (const EmbeddedChart::LinkTerm& term : terms) {
                if ((term.mask & ~positive) != 0) continue;  // tau not in the positive half link
                m -= term.parity * f.value(term.join);
            }
            if (m != 0) any = true;
            row[idx] = std::move(m);
        }
        if (any) mult.emplace(s, std::move(row));
    }
    return LagrangianCycleTable(chart, std::move(mult));
}

/**
 * Inverts CC.  Processes simplices by decreasing dimension, solving
 * f(S) = m(S, eps) + sum over the eps-positive half link, and insists that
 * every chamber of S yields the same value; otherwise the table is not a
 * Lagrangian cycle and InconsistentTable names the witnesses.
 */
inline ConstructibleFunction cc_inverse(const LagrangianCycleTable& table) {
    const ChartPtr& chart = table.chart();
    std::vector<Simplex> order(chart->complex()->simplices().begin(),
                               chart->complex()->simplices().end());
    std::sort(order.begin(), order.end(), [](const Simplex& a, const Simplex& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    });
    std::map<Simplex, Rational> values;
    for (const Simplex& s : order) {
        const auto& chambers = chart->chambers(s);
        const auto& terms = chart->link_terms(s);
        std::optional<Rational> solved;
        std::size_t solved_idx = 0;
        for (std::size_t idx = 0; idx < chambers.size(); ++idx) {
            std::uint64_t positive = 0;
            for (std::size_t i = 0; i < chambers[idx].signs.size(); ++i)
                if (chambers[idx].signs[i] > 0) positive |= std::uint64_t{1} << i;
            Rational candidate = table.mult(s, idx);
            for (const EmbeddedChart::LinkTerm& term : terms) {
                if ((term.mask & ~positive) != 0) continue;
                auto it = values.find(term.join);
                if (it != values.end()) candidate += term.parity * it->second;
            }
            if (!solved) {
                solved = candidate;
                solved_idx = idx;
            } else if (*solved != candidate) {
                throw InconsistentTable(
                    "chambers " + signs_to_string(chambers[solved_idx].signs) + " and " +
                    signs_to_string(chambers[idx].signs) + " of " + simplex_to_string(s) +
                    " disagree: " + to_string(*solved) + " vs " + to_string(candidate));
            }
        }
        if (solved && *solved != 0) values.emplace(s, *solved);
    }
    return ConstructibleFunction(chart->complex(), std::move(values));
}

/**
 * Intersection with the zero section: the sum over vertices of the
 * multiplicity at the chamber containing the covector.  Independent of the
 * generic covector chosen on valid tables; equals the Euler integral of
 * cc_inverse and the Morse sum along the covector's vertex heights.
 */
inline Rational intersect_zero_section(const LagrangianCycleTable& table,
                                       const std::optional<Vec>& user_covector = std::nullopt) {
    const EmbeddedChart& chart = *table.chart();
    Vec xi;
    if (user_covector) {
        if (static_cast<int>(user_covector->size()) != chart.ambient_dim())
            throw NonGenericCovector("covector has wrong dimension");
        if (!chart.is_generic(*user_covector))
            throw NonGenericCovector("covector heights are not injective on vertices");
        xi = *user_covector;
    } else {
        xi = chart.generic_covector();
    }
    Rational total = 0;
    for (Vertex v : chart.complex()->vertices()) {
        const Simplex vs{v};
        std::optional<std::vector<signed char>> signs = chart.signs_of_covector(vs, xi);
        // Generic heights separate every link vertex from v.
        int idx = chart.chamber_index(vs, *signs);
        if (idx < 0)
            throw InconsistentTable("covector chamber missing at vertex " + std::to_string(v));
        total += table.mult(vs, static_cast<std::size_t>(idx));
    }
    return total;
}

/// Refines an embedded chart along a barycentric subdivision: each new
/// vertex sits at the barycenter of the source simplex it names.
inline ChartPtr subdivide_chart(const ChartPtr& chart, const SubdivisionMap& sd) {
    if (!same_complex(chart->complex(), sd.source()))
        throw ComplexMismatch("chart does not live on the refinement source");
    std::map<Vertex, Vec> coords;
    for (Vertex v : sd.target()->vertices()) coords.emplace(v, chart->barycenter(sd.carrier({v})));
    return make_chart(sd.target(), chart->ambient_dim(), std::move(coords));
}

}  // namespace charcyc
