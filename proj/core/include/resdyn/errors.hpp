#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace resdyn {

// Every library error carries a stable machine-readable code; the CLI
// forwards it verbatim in its error object.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& message)
      : Error("invalid_argument", message) {}
};

// Res(phi) = 0: the forms share a nontrivial common zero.
class NotAMorphism : public Error {
 public:
  explicit NotAMorphism(const std::string& message)
      : Error("not_a_morphism", message) {}
};

class IndeterminatePoint : public Error {
 public:
  explicit IndeterminatePoint(const std::string& message)
      : Error("indeterminate_point", message) {}
};

class DegenerateInput : public Error {
 public:
  explicit DegenerateInput(const std::string& message)
      : Error("degenerate_input", message) {}
};

class UnfactoredResidue : public Error {
 public:
  UnfactoredResidue(std::string cofactor, const std::string& message)
      : Error("unfactored_residue", message), cofactor_(std::move(cofactor)) {}

  const std::string& cofactor() const noexcept { return cofactor_; }

 private:
  std::string cofactor_;
};

class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& message)
      : Error("schema_violation", message) {}
};

}  // namespace resdyn
