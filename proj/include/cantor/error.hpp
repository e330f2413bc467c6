#pragma once

#include <stdexcept>
#include <string>

namespace cantor {

// Raised when caller-supplied input violates an operation's contract
// (bad modulus, zero divisor, out-of-range index, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when an internally asserted identity fails. Seeing one of these
// means a bug, not bad input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw PreconditionError(what);
}

inline void ensure(bool cond, const std::string& what) {
  if (!cond) throw InvariantError(what);
}

}  // namespace cantor
