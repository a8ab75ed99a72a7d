#include "carnot/error.hpp"

namespace carnot {

std::string_view kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Io: return "IoError";
    case ErrorKind::Antisymmetry: return "AntisymmetryViolation";
    case ErrorKind::Grading: return "GradingViolation";
    case ErrorKind::Jacobi: return "JacobiViolation";
    case ErrorKind::NotBracketGenerating: return "NotBracketGenerating";
    case ErrorKind::UnknownFamily: return "UnknownFamily";
    case ErrorKind::UnsupportedParams: return "UnsupportedParams";
    case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorKind::StepExceeded: return "StepExceeded";
    case ErrorKind::LayerOutOfRange: return "LayerOutOfRange";
    case ErrorKind::NonpositiveScale: return "NonpositiveScale";
    case ErrorKind::EmptyProduct: return "EmptyProduct";
    case ErrorKind::ArityTooSmall: return "ArityTooSmall";
    case ErrorKind::ArityOutOfRange: return "ArityOutOfRange";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::NonpositiveRadius: return "NonpositiveRadius";
    case ErrorKind::SingularBasis: return "SingularBasis";
    case ErrorKind::NotFiltrationAdapted: return "NotFiltrationAdapted";
    case ErrorKind::ExplosionGuard: return "ExplosionGuard";
    case ErrorKind::RecursionFailure: return "RecursionFailure";
    case ErrorKind::CertificateFailure: return "CertificateFailure";
    case ErrorKind::Usage: return "UsageError";
    case ErrorKind::Internal: return "InternalError";
  }
  return "Error";
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io: return 1;
    case ErrorKind::CapExceeded:
    case ErrorKind::ExplosionGuard: return 3;
    case ErrorKind::CertificateFailure:
    case ErrorKind::RecursionFailure:
    case ErrorKind::Internal: return 4;
    default: return 2;
  }
}

}  // namespace carnot
