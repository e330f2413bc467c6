#pragma once

#include <string>

#include "cantor/poly.hpp"

namespace cantor {

/// Reduced rational function num/den over F_p: den is monic and
/// gcd(num, den) = 1, so equality is structural.
class RatFun {
 public:
  explicit RatFun(std::uint32_t p = 3);
  explicit RatFun(const Poly& poly);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  std::uint32_t modulus() const { return num_.modulus(); }
  bool is_zero() const { return num_.is_zero(); }

  /// |g/h| = p^(deg g - deg h), 0 for g = 0.
  Magnitude abs() const;

  RatFun operator+(const RatFun& o) const;
  RatFun operator-(const RatFun& o) const;
  RatFun operator*(const RatFun& o) const;
  RatFun operator/(const RatFun& o) const;
  RatFun operator-() const;
  RatFun reciprocal() const;

  bool operator==(const RatFun&) const = default;

  /// "[num]/[den]" in coefficient-list form.
  std::string to_string() const;

 private:
  friend RatFun ratfun_make(const Poly& num, const Poly& den);
  RatFun(Poly num, Poly den, int) : num_(std::move(num)), den_(std::move(den)) {}

  Poly num_;
  Poly den_;
};

/// Reduce num/den to canonical form. PreconditionError on den = 0.
RatFun ratfun_make(const Poly& num, const Poly& den);

/// Parse "[1,0,1]/[0,1]" or a bare polynomial "[2,1]".
RatFun parse_ratfun(const std::string& text, std::uint32_t p);
Poly parse_poly(const std::string& text, std::uint32_t p);

}  // namespace cantor
