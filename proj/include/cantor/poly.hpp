#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cantor/field.hpp"

namespace cantor {

/// An exact absolute value p^exponent, or zero. Never a float.
struct Magnitude {
  bool zero = true;
  std::int64_t exponent = 0;

  static Magnitude of_zero() { return {true, 0}; }
  static Magnitude power(std::int64_t e) { return {false, e}; }

  Magnitude operator*(const Magnitude& o) const;
  Magnitude inverse() const;  // PreconditionError on zero

  bool operator==(const Magnitude&) const = default;
  std::strong_ordering operator<=>(const Magnitude& o) const;

  std::string to_string(std::uint32_t p) const;  // "0" or "3^-2"
};

/// Polynomial over F_p, coefficients in ascending powers of X. The empty
/// coefficient vector is the zero polynomial; otherwise the leading
/// coefficient is nonzero.
class Poly {
 public:
  explicit Poly(std::uint32_t p = 3);
  Poly(std::vector<std::int64_t> coeffs, std::uint32_t p);

  static Poly constant(std::int64_t c, std::uint32_t p);
  /// c * X^k
  static Poly monomial(std::int64_t c, std::size_t k, std::uint32_t p);

  std::uint32_t modulus() const { return p_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// nullopt stands for deg 0 = -infinity.
  std::optional<std::int64_t> degree() const;
  /// Degree of a polynomial known to be nonzero (PreconditionError otherwise).
  std::int64_t deg() const;

  std::span<const std::uint32_t> coeffs() const { return coeffs_; }
  std::uint32_t coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }
  FieldElement coefficient(std::size_t i) const { return {coeff(i), p_}; }
  std::uint32_t leading() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly scaled(std::uint32_t c) const;
  Poly shifted(std::size_t k) const;  // times X^k

  Poly monic() const;
  bool is_monic() const { return !is_zero() && leading() == 1; }

  bool operator==(const Poly& o) const = default;

  /// Coefficient list such as "[1,0,1]" for X^2+1.
  std::string to_string() const;
  std::vector<std::int64_t> to_vector() const;

 private:
  void trim();

  std::vector<std::uint32_t> coeffs_;
  std::uint32_t p_;
};

/// Euclidean division: a = q*b + r with deg r < deg b.
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);

/// Monic gcd; gcd(0, 0) = 0.
Poly poly_gcd(Poly a, Poly b);

/// |P| = p^deg P, |0| = 0.
Magnitude poly_abs(const Poly& P);

}  // namespace cantor
