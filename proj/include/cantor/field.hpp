#pragma once

#include <cstdint>
#include <string>

namespace cantor {

bool is_prime(std::uint32_t n);

/// Throws PreconditionError unless p is a prime that fits the digit
/// encodings used throughout (p < 256).
void check_modulus(std::uint32_t p);

/// An element of the prime field F_p. The modulus travels with the value;
/// mixing moduli is a PreconditionError.
class FieldElement {
 public:
  FieldElement(std::int64_t value, std::uint32_t p);

  std::uint32_t value() const { return value_; }
  std::uint32_t modulus() const { return p_; }
  bool is_zero() const { return value_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement inverse() const;

  bool operator==(const FieldElement& o) const = default;

 private:
  struct Raw {};
  FieldElement(Raw, std::uint32_t value, std::uint32_t p) : value_(value), p_(p) {}

  std::uint32_t value_;
  std::uint32_t p_;
};

enum class FieldOp { add, mul, neg, inv };

/// Dispatching form of the field operations; `b` is ignored for unary ops.
FieldElement ff_ops(const FieldElement& a, const FieldElement& b, FieldOp op);

// Raw residue helpers shared by the polynomial code; inputs must be reduced.
inline std::uint32_t mod_add(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  std::uint32_t s = a + b;
  return s >= p ? s - p : s;
}
inline std::uint32_t mod_sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return a >= b ? a - b : a + p - b;
}
inline std::uint32_t mod_mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p);
}
std::uint32_t mod_inv(std::uint32_t a, std::uint32_t p);

}  // namespace cantor
