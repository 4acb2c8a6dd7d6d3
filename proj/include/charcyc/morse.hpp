/**
 * PL stratified Morse theory.  A generic linear function is injective
 * rational vertex weights; the local index of a constructible function at a
 * vertex reads the upper link, and the Morse sum over all vertices equals
 * the Euler integral for every choice of weights.  That identity is the
 * index formula in chart-free form: grouping the alternating simplex sum by
 * the u-minimal vertex of each simplex produces exactly the local indices.
 */
#pragma once

#include "charcyc/constructible.hpp"
#include "charcyc/errors.hpp"
#include "charcyc/simplicial_complex.hpp"

#include <map>
#include <utility>

namespace charcyc {

/// Injective rational weights on vertices, the generic PL stand-in for a
/// smooth function with transverse differential graph.
class VertexOrder {
  public:
    explicit VertexOrder(std::map<Vertex, Rational> weights) : weights_(std::move(weights)) {
        std::map<Rational, Vertex> seen;
        for (const auto& [v, w] : weights_) {
            auto [it, fresh] = seen.emplace(w, v);
            if (!fresh)
                throw NonInjectiveOrder("vertices " + std::to_string(it->second) + " and " +
                                        std::to_string(v) + " share weight " + to_string(w));
        }
    }

    const std::map<Vertex, Rational>& weights() const { return weights_; }

    const Rational& at(Vertex v) const {
        auto it = weights_.find(v);
        if (it == weights_.end())
            throw NonInjectiveOrder("vertex " + std::to_string(v) + " has no weight");
        return it->second;
    }

    bool covers(const SimplicialComplex& complex) const {
        for (Vertex v : complex.vertices())
            if (!weights_.count(v)) return false;
        return true;
    }

  private:
    std::map<Vertex, Rational> weights_;
};

/**
 * The local intersection index at a vertex:
 *
 *   i_v(f, u) = f({v}) - sum over tau in the upper link of (-1)^dim(tau) * f({v} * tau)
 *
 * where the upper link is the full subcomplex of link(v) on vertices w with
 * u(w) > u(v), and {v} * tau is the join simplex.
 */
inline Rational local_index(const ConstructibleFunction& f, Vertex v, const VertexOrder& u) {
    const SimplicialComplex& complex = *f.complex();
    const Simplex vs{v};
    complex.require(vs);
    const Rational& uv = u.at(v);
    Rational index = f.value(vs);
    const SimplicialComplex link_complex = link(complex, vs);
    for (const Simplex& tau : link_complex.simplices()) {
        bool upper = true;
        for (Vertex w : tau)
            if (!(u.at(w) > uv)) { upper = false; break; }
        if (!upper) continue;
        const Rational term = f.value(simplex_join(vs, tau));
        index += (simplex_dim(tau) % 2 == 0) ? -term : term;
    }
    return index;
}

/// Sum of local indices over all vertices.  Equals euler_integral(f) for
/// every injective u; independence of u is the module's defining identity.
inline Rational morse_evaluate(const ConstructibleFunction& f, const VertexOrder& u) {
    const SimplicialComplex& complex = *f.complex();
    if (!u.covers(complex)) throw NonInjectiveOrder("weights do not cover the complex");
    Rational total = 0;
    for (Vertex v : complex.vertices()) total += local_index(f, v, u);
    return total;
}

}  // namespace charcyc
