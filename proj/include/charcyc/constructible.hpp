/**
 * Simplexwise-constant rational functions with compact support, their
 * algebra, extension by zero, and Euler integration.  The Euler integral is
 * implemented twice (by level sets and as the alternating simplex sum);
 * the two routes agree exactly and cross-check each other in the test
 * suites.
 */
#pragma once

#include "charcyc/errors.hpp"
#include "charcyc/rational.hpp"
#include "charcyc/simplicial_complex.hpp"

#include <map>
#include <utility>
#include <vector>

namespace charcyc {

/**
 * A rational value per open simplex; simplices absent from the map carry
 * zero.  Zero values are never stored, so equality of maps is equality of
 * functions.
 */
class ConstructibleFunction {
  public:
    explicit ConstructibleFunction(ComplexPtr complex) : complex_(std::move(complex)) {}

    ConstructibleFunction(ComplexPtr complex, std::map<Simplex, Rational> values)
        : complex_(std::move(complex)), values_(std::move(values)) {
        for (auto it = values_.begin(); it != values_.end();) {
            complex_->require(it->first);
            if (it->second == 0) it = values_.erase(it);
            else ++it;
        }
    }

    static ConstructibleFunction zero(ComplexPtr complex) {
        return ConstructibleFunction(std::move(complex));
    }

    static ConstructibleFunction constant(ComplexPtr complex, const Rational& c) {
        std::map<Simplex, Rational> values;
        if (c != 0)
            for (const Simplex& s : complex->simplices()) values.emplace(s, c);
        return ConstructibleFunction(std::move(complex), std::move(values));
    }

    /// Indicator of a set of open simplices.
    template <typename SimplexRange>
    static ConstructibleFunction indicator(ComplexPtr complex, const SimplexRange& simplices) {
        std::map<Simplex, Rational> values;
        for (const Simplex& s : simplices) values.emplace(s, 1);
        return ConstructibleFunction(std::move(complex), std::move(values));
    }

    const ComplexPtr& complex() const { return complex_; }
    const std::map<Simplex, Rational>& values() const { return values_; }

    Rational value(const Simplex& s) const {
        auto it = values_.find(s);
        return it == values_.end() ? Rational(0) : it->second;
    }

    std::vector<Simplex> support() const {
        std::vector<Simplex> out;
        out.reserve(values_.size());
        for (const auto& [s, v] : values_) out.push_back(s);
        return out;
    }

    bool is_zero() const { return values_.empty(); }

    ConstructibleFunction operator+(const ConstructibleFunction& other) const {
        check_same(other);
        std::map<Simplex, Rational> values = values_;
        for (const auto& [s, v] : other.values_) values[s] += v;
        return ConstructibleFunction(complex_, std::move(values));
    }

    ConstructibleFunction operator-(const ConstructibleFunction& other) const {
        check_same(other);
        std::map<Simplex, Rational> values = values_;
        for (const auto& [s, v] : other.values_) values[s] -= v;
        return ConstructibleFunction(complex_, std::move(values));
    }

    /// Pointwise product, required by the weighted coarse integral.
    ConstructibleFunction operator*(const ConstructibleFunction& other) const {
        check_same(other);
        std::map<Simplex, Rational> values;
        for (const auto& [s, v] : values_) {
            Rational w = other.value(s);
            if (w != 0) values.emplace(s, v * w);
        }
        return ConstructibleFunction(complex_, std::move(values));
    }

    ConstructibleFunction scaled(const Rational& c) const {
        std::map<Simplex, Rational> values;
        if (c != 0)
            for (const auto& [s, v] : values_) values.emplace(s, c * v);
        return ConstructibleFunction(complex_, std::move(values));
    }

    bool operator==(const ConstructibleFunction& other) const {
        return same_complex(complex_, other.complex_) && values_ == other.values_;
    }
    bool operator!=(const ConstructibleFunction& other) const { return !(*this == other); }

    /// Raw value slice over a simplex set.  Test utility only: restriction is
    /// deliberately not a cosheaf operation, and this carries no contract.
    ConstructibleFunction slice_values(const std::set<Simplex>& keep) const {
        std::map<Simplex, Rational> values;
        for (const auto& [s, v] : values_)
            if (keep.count(s)) values.emplace(s, v);
        return ConstructibleFunction(complex_, std::move(values));
    }

  private:
    void check_same(const ConstructibleFunction& other) const {
        if (!same_complex(complex_, other.complex_))
            throw ComplexMismatch("functions live on different complexes");
    }

    ComplexPtr complex_;
    std::map<Simplex, Rational> values_;  // nonzero entries only
};

inline ConstructibleFunction operator*(const Rational& c, const ConstructibleFunction& f) {
    return f.scaled(c);
}

/// Euler integral as the alternating simplex sum over the support.
inline Rational euler_integral(const ConstructibleFunction& f) {
    Rational total = 0;
    for (const auto& [s, v] : f.values()) total += ((simplex_dim(s) % 2 == 0) ? v : -v);
    return total;
}

/// Euler integral by level sets: sum over values t of t * chi_c(f == t).
inline Rational euler_integral_level_sets(const ConstructibleFunction& f) {
    std::map<Rational, Rational> chi_of_level;  // t -> chi_c(f^{-1}(t)), t != 0
    for (const auto& [s, v] : f.values())
        chi_of_level[v] += (simplex_dim(s) % 2 == 0) ? 1 : -1;
    Rational total = 0;
    for (const auto& [t, chi] : chi_of_level) total += t * chi;
    return total;
}

/**
 * Extension by zero of a function compactly supported on an open set.  The
 * compactness precondition is the face-closure condition: every face of a
 * support simplex must lie in U.  Without it, 1 on an open edge would
 * illegally count as compactly supported on that edge.
 */
inline ConstructibleFunction extend_by_zero(const ConstructibleFunction& f, const OpenSet& domain) {
    if (!same_complex(f.complex(), domain.complex()))
        throw ComplexMismatch("function and open set live on different complexes");
    for (const auto& [s, v] : f.values()) {
        if (!domain.contains(s))
            throw SupportNotRelativelyCompact("support simplex " + simplex_to_string(s) +
                                              " is not in the open set");
        for (const Simplex& face : closed_faces(s)) {
            if (!domain.contains(face))
                throw SupportNotRelativelyCompact("face " + simplex_to_string(face) +
                                                  " of support simplex " + simplex_to_string(s) +
                                                  " escapes the open set");
        }
    }
    return f;  // representations coincide; the contract is the validation
}

/// True when f satisfies the compact-support condition on the open set.
inline bool is_relatively_compact(const ConstructibleFunction& f, const OpenSet& domain) {
    for (const auto& [s, v] : f.values()) {
        if (!domain.contains(s)) return false;
        for (const Simplex& face : closed_faces(s))
            if (!domain.contains(face)) return false;
    }
    return true;
}

/// Pullback along a refinement: each target simplex takes the value of its
/// carrier.  Euler integrals are preserved.
inline ConstructibleFunction pullback_subdivision(const ConstructibleFunction& f,
                                                  const SubdivisionMap& sd) {
    if (!same_complex(f.complex(), sd.source()))
        throw ComplexMismatch("function does not live on the refinement source");
    std::map<Simplex, Rational> values;
    for (const auto& [t, c] : sd.carrier_map()) {
        Rational v = f.value(c);
        if (v != 0) values.emplace(t, v);
    }
    return ConstructibleFunction(sd.target(), std::move(values));
}

}  // namespace charcyc
