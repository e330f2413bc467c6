#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cantor/ratfun.hpp"

namespace cantor {

/// Absolute value of a truncated series. `upper_bound` means every known
/// digit is zero, so only |x| <= p^exponent is certain.
struct LaurentAbs {
  enum class Kind { exact, zero, upper_bound };
  Kind kind = Kind::zero;
  std::int64_t exponent = 0;

  bool operator==(const LaurentAbs&) const = default;
};

/// Truncated Laurent series sum_{n >= start} a_{-n} X^{-n} with the digits
/// a_{-start} ... a_{-D} known, D = start + size - 1. A negative start
/// carries a polynomial part. When `exact` is set every digit past D is
/// known to be zero (the series is a finite sum), which is how exact zero
/// is told apart from the unknown-zero state.
class LaurentTrunc {
 public:
  LaurentTrunc(std::uint32_t p, std::int64_t start, std::vector<std::uint32_t> digits,
               bool exact = false);

  static LaurentTrunc exact_zero(std::uint32_t p, std::int64_t depth);

  std::uint32_t modulus() const { return p_; }
  std::int64_t start() const { return start_; }
  std::int64_t known_depth() const { return start_ + static_cast<std::int64_t>(digits_.size()) - 1; }
  bool exact() const { return exact_; }
  std::span<const std::uint32_t> digits() const { return digits_; }

  /// Digit at index n (coefficient of X^-n); nullopt when not determined.
  std::optional<std::uint32_t> digit(std::int64_t n) const;

  /// Index of the first nonzero known digit.
  std::optional<std::int64_t> leading_index() const;

  /// The known part as an exact rational function.
  RatFun truncation() const;

  bool operator==(const LaurentTrunc&) const = default;

 private:
  std::uint32_t p_;
  std::int64_t start_;
  std::vector<std::uint32_t> digits_;
  bool exact_;
};

/// Lazy exact digit expansion of a rational function by long division.
/// Single owner; copying forks the division state.
class DigitStream {
 public:
  explicit DigitStream(const RatFun& source);

  const RatFun& source() const { return source_; }
  const Poly& polynomial_part() const { return poly_part_; }
  /// Index of the digit the next call to next() returns (starts at 1).
  std::int64_t next_index() const { return next_index_; }
  /// True once the remaining tail is exactly zero.
  bool terminated() const { return remainder_.is_zero(); }

  std::uint32_t next();
  std::vector<std::uint32_t> take(std::size_t k);

  /// (preperiod, period) of the fractional digit sequence, measured from
  /// index 1; a terminating expansion reports period 1 (repeating zero).
  std::pair<std::size_t, std::size_t> period() const;

 private:
  RatFun source_;
  Poly poly_part_;
  Poly remainder_;  // current tail = remainder_ / den
  std::int64_t next_index_ = 1;
};

/// Expansion of x with every coefficient of X^-n, n <= depth, exact.
LaurentTrunc laurent_expand(const RatFun& x, std::int64_t depth);

LaurentAbs laurent_abs(const LaurentTrunc& x);

enum class LaurentOp { add, sub, mul, inv };

/// Arithmetic with precision bookkeeping: add/sub keep min(D_a, D_b); mul
/// keeps min(D_a + v_b, D_b + v_a) with v the (lower bound on the) leading
/// index; inv keeps D_a - 2 v_a. Exact operands count as infinitely deep.
LaurentTrunc laurent_arith(const LaurentTrunc& a, const LaurentTrunc& b, LaurentOp op);
LaurentTrunc laurent_inverse(const LaurentTrunc& a);

struct MdsVerdict {
  enum class Kind { yes, no, unknown };
  Kind kind = Kind::unknown;
  std::int64_t bad_index = 0;  // meaningful for `no`

  bool operator==(const MdsVerdict&) const = default;
};

/// Throws unless `alphabet` is a set of residues mod p with 2 <= #A < p.
std::vector<std::uint32_t> check_alphabet(std::vector<std::uint32_t> alphabet, std::uint32_t p);

MdsVerdict in_mds(const LaurentTrunc& x, std::span<const std::uint32_t> alphabet, std::int64_t depth);
MdsVerdict in_mds(const DigitStream& x, std::span<const std::uint32_t> alphabet, std::int64_t depth);

/// A digit file: `p=<p> alphabet=<a,b,..> start=<n>` then one symbol per
/// digit (0-9, then a-z).
struct DigitFile {
  LaurentTrunc series;
  std::vector<std::uint32_t> alphabet;
};

void write_digit_file(std::ostream& out, const LaurentTrunc& series,
                      std::span<const std::uint32_t> alphabet);
std::string digit_file_string(const LaurentTrunc& series, std::span<const std::uint32_t> alphabet);
DigitFile read_digit_file(std::istream& in);

}  // namespace cantor
