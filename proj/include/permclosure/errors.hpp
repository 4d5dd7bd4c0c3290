#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace permclosure {

enum class ErrorKind {
  kInvalidDfa,
  kParse,
  kUnknownSymbol,
  kAlphabetMismatch,
  kNotPermutation,
  kPreconditionViolated,
  kOverflow,
  kBoxTooLarge,
  kOutOfBox,
  kBudgetExceeded,
  kChainOpen,
  kRegionMismatch,
  kNotStabilized,
  kStateBudgetExceeded,
  kLengthExceeded,
};

std::string_view to_string(ErrorKind kind);

// All library failures are reported through this type; `kind()` lets callers
// (the CLI in particular) map them onto exit codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace permclosure
