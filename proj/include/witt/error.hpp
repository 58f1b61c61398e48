#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace witt {

enum class ErrorKind {
  DivisionByZero,
  ZeroScalar,
  InfiniteSquareClassGroup,
  InvalidField,
  FieldMismatch,
  DimensionMismatch,
  DegenerateForm,
  PreconditionViolated,
  IsotropicReflectionVector,
  NotIsotropic,
  NotIsotropicVector,
  UnsupportedFieldForVectorSearch,
  SearchBudgetExceeded,
  InfiniteRing,
  NotInIdealPower,
  UnsupportedField,
  ParseError,
  ZeroEntry,
};

std::string_view error_name(ErrorKind kind);

// Every domain failure in the library is reported through this type; the CLI
// maps it to exit status 1 (2 for ParseError).
class WittError : public std::runtime_error {
 public:
  WittError(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(error_name(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

class ParseError : public WittError {
 public:
  ParseError(std::size_t position, const std::string& detail)
      : WittError(ErrorKind::ParseError, "at position " + std::to_string(position) + ": " + detail),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class SearchBudgetExceeded : public WittError {
 public:
  SearchBudgetExceeded(long bound, const std::string& detail)
      : WittError(ErrorKind::SearchBudgetExceeded,
                  "height bound " + std::to_string(bound) + " exhausted: " + detail),
        bound_(bound) {}

  long bound() const noexcept { return bound_; }

 private:
  long bound_;
};

}  // namespace witt
