#include "ttolab/errors.hpp"

namespace ttolab {

const char* to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::UndefinedBoundaryValue: return "UndefinedBoundaryValue";
    case DomainKind::AtomAtPoint: return "AtomAtPoint";
    case DomainKind::NoAngularDerivative: return "NoAngularDerivative";
    case DomainKind::BoundaryPointNotNormalizable: return "BoundaryPointNotNormalizable";
    case DomainKind::UnsupportedVariant: return "UnsupportedVariant";
    case DomainKind::BandwidthOverflow: return "BandwidthOverflow";
    case DomainKind::DegenerateMu: return "DegenerateMu";
    case DomainKind::InconsistentOracle: return "InconsistentOracle";
    case DomainKind::SymbolsDiffer: return "SymbolsDiffer";
    case DomainKind::DivisibilityViolated: return "DivisibilityViolated";
    case DomainKind::SupportOverflow: return "SupportOverflow";
    case DomainKind::NotToeplitz: return "NotToeplitz";
  }
  return "DomainError";
}

}  // namespace ttolab
