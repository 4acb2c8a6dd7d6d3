/**
 * Exception types thrown on precondition violations.  Each names the failing
 * object in its message so callers can surface errors verbatim.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace charcyc {

/// A simplex list that is not face-closed, a missing vertex, etc.
class InvalidComplex : public std::runtime_error {
  public:
    explicit InvalidComplex(const std::string& what) : std::runtime_error(what) {}
};
/// Operation addressed a simplex that is not in the complex.
class SimplexNotFound : public std::runtime_error {
  public:
    explicit SimplexNotFound(const std::string& what) : std::runtime_error(what) {}
};
/// Operands live on different complexes.
class ComplexMismatch : public std::runtime_error {
  public:
    explicit ComplexMismatch(const std::string& what) : std::runtime_error(what) {}
};
/// A set of simplices that is not coface-closed cannot be an open set.
class NotOpen : public std::runtime_error {
  public:
    explicit NotOpen(const std::string& what) : std::runtime_error(what) {}
};
/// Support closure escapes the open set, so extension by zero is illegal.
class SupportNotRelativelyCompact : public std::runtime_error {
  public:
    explicit SupportNotRelativelyCompact(const std::string& what) : std::runtime_error(what) {}
};
/// Vertex weights that are not injective cannot drive Morse evaluation.
class NonInjectiveOrder : public std::runtime_error {
  public:
    explicit NonInjectiveOrder(const std::string& what) : std::runtime_error(what) {}
};
/// Coordinates that fail to embed the complex (degenerate simplex, missing
/// vertex, duplicate point).
class InvalidChart : public std::runtime_error {
  public:
    explicit InvalidChart(const std::string& what) : std::runtime_error(what) {}
};
/// A multiplicity table whose chambers disagree is not a Lagrangian cycle.
class InconsistentTable : public std::runtime_error {
  public:
    explicit InconsistentTable(const std::string& what) : std::runtime_error(what) {}
};
/// A user-supplied covector failed the genericity test.
class NonGenericCovector : public std::runtime_error {
  public:
    explicit NonGenericCovector(const std::string& what) : std::runtime_error(what) {}
};
/// A set of vertex maps that is not a simplicial permutation group.
class InvalidAction : public std::runtime_error {
  public:
    explicit InvalidAction(const std::string& what) : std::runtime_error(what) {}
};
/// Quotient requested for an action that fails the regularity checks.
class IrregularAction : public std::runtime_error {
  public:
    explicit IrregularAction(const std::string& what) : std::runtime_error(what) {}
};
/// Regularization did not converge within two subdivisions.
class StillIrregular : public std::runtime_error {
  public:
    explicit StillIrregular(const std::string& what) : std::runtime_error(what) {}
};
/// The given open sets do not cover the complex.
class NotACover : public std::runtime_error {
  public:
    explicit NotACover(const std::string& what) : std::runtime_error(what) {}
};
/// Mayer-Vietoris splitting hit the subdivision cap; the cover is malformed.
class SubdivisionCapExceeded : public std::runtime_error {
  public:
    explicit SubdivisionCapExceeded(const std::string& what) : std::runtime_error(what) {}
};
/// An equivariant chart matrix is not orthogonal over the rationals.
class NonOrthogonalMatrix : public std::runtime_error {
  public:
    explicit NonOrthogonalMatrix(const std::string& what) : std::runtime_error(what) {}
};
/// Chart matrices do not realize the group action on coordinates.
class IncompatibleAction : public std::runtime_error {
  public:
    explicit IncompatibleAction(const std::string& what) : std::runtime_error(what) {}
};
/// Malformed input file (bad syntax, unknown reference, schema violation).
class LoadError : public std::runtime_error {
  public:
    explicit LoadError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace charcyc
