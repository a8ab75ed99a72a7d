#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace carnot {

enum class ErrorKind {
  Parse,
  Io,
  Antisymmetry,
  Grading,
  Jacobi,
  NotBracketGenerating,
  UnknownFamily,
  UnsupportedParams,
  AlgebraMismatch,
  StepExceeded,
  LayerOutOfRange,
  NonpositiveScale,
  EmptyProduct,
  ArityTooSmall,
  ArityOutOfRange,
  CapExceeded,
  NonpositiveRadius,
  SingularBasis,
  NotFiltrationAdapted,
  ExplosionGuard,
  RecursionFailure,
  CertificateFailure,
  Usage,
  Internal,
};

std::string_view kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Exit-code contract of the command line tool.
int exit_code_for(ErrorKind kind);

}  // namespace carnot
