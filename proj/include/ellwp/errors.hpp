#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ellwp {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed term text or malformed serialized input.  `position` is the byte
// offset of the offending token when known, std::string::npos otherwise.
struct ParseError : Error {
  std::size_t position;
  ParseError(const std::string& what, std::size_t pos = std::string::npos)
      : Error(what), position(pos) {}
};

// A configured search budget (diagram cap, sample budget, ...) was exhausted
// before a verdict was reached.  Deliberately distinct from any verdict.
struct ResourceExhausted : Error {
  using Error::Error;
};

// The orbit search inside a lazy conjugator exceeded its iteration budget.
struct IterationLimit : Error {
  using Error::Error;
};

// A homomorphism candidate does not kill every relator; it certifies nothing.
struct InvalidAssignment : Error {
  using Error::Error;
};

}  // namespace ellwp
