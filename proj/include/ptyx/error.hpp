#pragma once

#include <stdexcept>
#include <string>

namespace ptyx {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A precondition on arguments failed (domain mismatch, non-member element, ...).
struct DomainError : Error {
  using Error::Error;
};

// A bounded search ran out of budget before producing a certificate either
// way. Never converted into a silent "no".
struct BudgetExceeded : Error {
  using Error::Error;
};

// A range inclusion required by a factorization does not hold; carries a
// printable witness.
struct RangeError : Error {
  explicit RangeError(const std::string& msg, std::string witness_ = {})
      : Error(msg), witness(std::move(witness_)) {}
  std::string witness;
};

struct ParseError : Error {
  using Error::Error;
};

struct DecodeError : Error {
  using Error::Error;
};

}  // namespace ptyx
