#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fibring {

// Base class of all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown by the formula / rule / derivation parsers.
// `position` is a 0-based byte offset into the parsed text.
struct ParseError : Error {
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " (at offset " + std::to_string(position) + ")"),
        position(position) {}

  std::size_t position = 0;
};

// Thrown when an operation is invoked outside its stated preconditions,
// e.g. fibring matrices with overlapping signatures, or asking whether a
// merge is classical when one component is already functionally complete.
struct PreconditionError : Error {
  using Error::Error;
};

// Hard cap on the number of distinct (skeletal) variables a single
// consequence query may enumerate valuations over.
inline constexpr unsigned kMaxQueryAtoms = 24;

// Thrown when a query exceeds kMaxQueryAtoms.
struct BudgetError : Error {
  using Error::Error;
};

}  // namespace fibring
