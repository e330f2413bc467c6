#include "cantor/rational.hpp"

#include <cctype>

#include "cantor/error.hpp"

namespace cantor {

Rational rational_pow(std::int64_t base, std::int64_t exp) {
  require(base != 0 || exp >= 0, "rational_pow: zero to a negative power");
  BigInt magnitude = boost::multiprecision::pow(BigInt(base),
                                                static_cast<unsigned>(exp < 0 ? -exp : exp));
  if (exp >= 0) return Rational(magnitude);
  return Rational(BigInt(1), magnitude);
}

std::string to_fraction_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

namespace {

BigInt parse_integer(const std::string& text) {
  require(!text.empty(), "parse_rational: empty integer");
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  require(i < text.size(), "parse_rational: sign without digits");
  for (std::size_t k = i; k < text.size(); ++k)
    require(std::isdigit(static_cast<unsigned char>(text[k])) != 0,
            "parse_rational: bad integer '" + text + "'");
  BigInt v(text.substr(i));
  return text[0] == '-' ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    BigInt den = parse_integer(text.substr(slash + 1));
    require(den != 0, "parse_rational: zero denominator");
    return Rational(parse_integer(text.substr(0, slash)), den);
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string whole = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
    BigInt int_part = parse_integer(whole);
    BigInt frac_part = frac.empty() ? BigInt(0) : parse_integer(frac);
    require(frac.empty() || (frac[0] != '-' && frac[0] != '+'), "parse_rational: bad decimal");
    BigInt abs_whole = int_part < 0 ? BigInt(-int_part) : int_part;
    Rational v(abs_whole * scale + frac_part, scale);
    return negative ? Rational(-v) : v;
  }
  return Rational(parse_integer(text));
}

BigInt floor_of(const Rational& r) {
  BigInt n = boost::multiprecision::numerator(r);
  BigInt d = boost::multiprecision::denominator(r);
  BigInt q = n / d;  // truncates toward zero
  if (n < 0 && q * d != n) q -= 1;
  return q;
}

BigInt ceil_of(const Rational& r) {
  return -floor_of(Rational(-r));
}

Decimal to_decimal(const Rational& r) {
  return Decimal(boost::multiprecision::numerator(r)) /
         Decimal(boost::multiprecision::denominator(r));
}

double to_double(const Rational& r) {
  return static_cast<double>(to_decimal(r));
}

}  // namespace cantor
