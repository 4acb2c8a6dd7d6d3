/**
 * Exact rational scalar type used throughout the library, plus strict
 * "p/q" parsing and rendering helpers.  All arithmetic in the calculus is
 * exact; no floating point appears anywhere.
 */
#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <stdexcept>
#include <string>

namespace charcyc {

using Rational = boost::multiprecision::mpq_rational;

/// Renders a rational as "p" (q == 1) or "p/q" with q > 0 and gcd(p,q) = 1.
inline std::string to_string(const Rational& r) { return r.str(); }

/// Parses "p" or "p/q" with an optional leading minus sign.  Unreduced input
/// is accepted and canonicalized; a zero denominator is rejected.
inline Rational rational_from_string(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    std::size_t i = (text[0] == '-') ? 1 : 0;
    bool seen_digit = false, seen_slash = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            seen_digit = true;
        } else if (c == '/' && !seen_slash && seen_digit) {
            seen_slash = true;
            seen_digit = false;
        } else {
            throw std::invalid_argument("malformed rational literal: " + text);
        }
    }
    if (!seen_digit) throw std::invalid_argument("malformed rational literal: " + text);
    Rational r(text);
    if (denominator(r) == 0) throw std::invalid_argument("zero denominator: " + text);
    return r;
}

}  // namespace charcyc
