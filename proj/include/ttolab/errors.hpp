#pragma once

#include <stdexcept>
#include <string>

namespace ttolab {

// Bad input: malformed configuration, violated preconditions.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An iterative or refinement procedure did not reach its tolerance.
class NoConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class DomainKind {
  UndefinedBoundaryValue,
  AtomAtPoint,
  NoAngularDerivative,
  BoundaryPointNotNormalizable,
  UnsupportedVariant,
  BandwidthOverflow,
  DegenerateMu,
  InconsistentOracle,
  SymbolsDiffer,
  DivisibilityViolated,
  SupportOverflow,
  NotToeplitz,
};

const char* to_string(DomainKind kind);

// A mathematically undefined request (no kernel at a point, zero denominator, ...).
class DomainError : public std::domain_error {
 public:
  DomainError(DomainKind kind, const std::string& what)
      : std::domain_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  DomainKind kind() const noexcept { return kind_; }

 private:
  DomainKind kind_;
};

}  // namespace ttolab
