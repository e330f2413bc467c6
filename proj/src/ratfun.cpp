#include "cantor/ratfun.hpp"

#include <cctype>

#include "cantor/error.hpp"

namespace cantor {

RatFun::RatFun(std::uint32_t p) : num_(p), den_(Poly::constant(1, p)) {}

RatFun::RatFun(const Poly& poly) : num_(poly), den_(Poly::constant(1, poly.modulus())) {}

RatFun ratfun_make(const Poly& num, const Poly& den) {
  require(num.modulus() == den.modulus(), "ratfun_make: modulus mismatch");
  require(!den.is_zero(), "ratfun_make: zero denominator");
  const std::uint32_t p = den.modulus();
  if (num.is_zero()) return RatFun(p);
  Poly g = poly_gcd(num, den);
  Poly n = poly_divmod(num, g).first;
  Poly d = poly_divmod(den, g).first;
  std::uint32_t unit = mod_inv(d.leading(), p);
  return RatFun(n.scaled(unit), d.scaled(unit), 0);
}

Magnitude RatFun::abs() const {
  if (num_.is_zero()) return Magnitude::of_zero();
  return Magnitude::power(num_.deg() - den_.deg());
}

RatFun RatFun::operator+(const RatFun& o) const {
  return ratfun_make(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFun RatFun::operator-(const RatFun& o) const {
  return ratfun_make(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFun RatFun::operator*(const RatFun& o) const {
  return ratfun_make(num_ * o.num_, den_ * o.den_);
}

RatFun RatFun::operator/(const RatFun& o) const {
  require(!o.is_zero(), "RatFun division by zero");
  return ratfun_make(num_ * o.den_, den_ * o.num_);
}

RatFun RatFun::operator-() const { return RatFun(-num_, den_, 0); }

RatFun RatFun::reciprocal() const {
  require(!is_zero(), "reciprocal of zero");
  return ratfun_make(den_, num_);
}

std::string RatFun::to_string() const { return num_.to_string() + "/" + den_.to_string(); }

Poly parse_poly(const std::string& text, std::uint32_t p) {
  std::vector<std::int64_t> coeffs;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  require(i < text.size() && text[i] == '[', "polynomial must look like [c0,c1,...]: " + text);
  ++i;
  skip();
  if (i < text.size() && text[i] == ']') {
    ++i;
  } else {
    while (true) {
      skip();
      std::size_t start = i;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      require(i > start, "bad coefficient in polynomial: " + text);
      coeffs.push_back(std::stoll(text.substr(start, i - start)));
      skip();
      require(i < text.size(), "unterminated polynomial: " + text);
      if (text[i] == ']') {
        ++i;
        break;
      }
      require(text[i] == ',', "expected ',' in polynomial: " + text);
      ++i;
    }
  }
  skip();
  require(i == text.size(), "trailing characters after polynomial: " + text);
  return Poly(std::move(coeffs), p);
}

RatFun parse_ratfun(const std::string& text, std::uint32_t p) {
  auto close = text.find(']');
  require(close != std::string::npos, "rational function must look like [..]/[..]: " + text);
  auto slash = text.find('/', close);
  if (slash == std::string::npos) return RatFun(parse_poly(text, p));
  return ratfun_make(parse_poly(text.substr(0, slash), p), parse_poly(text.substr(slash + 1), p));
}

}  // namespace cantor
