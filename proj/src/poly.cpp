#include "cantor/poly.hpp"

#include <algorithm>

#include "cantor/error.hpp"

namespace cantor {

Magnitude Magnitude::operator*(const Magnitude& o) const {
  if (zero || o.zero) return of_zero();
  return power(exponent + o.exponent);
}

Magnitude Magnitude::inverse() const {
  require(!zero, "inverse of the zero magnitude");
  return power(-exponent);
}

std::strong_ordering Magnitude::operator<=>(const Magnitude& o) const {
  if (zero || o.zero) return static_cast<int>(!zero) <=> static_cast<int>(!o.zero);
  return exponent <=> o.exponent;
}

std::string Magnitude::to_string(std::uint32_t p) const {
  if (zero) return "0";
  return std::to_string(p) + "^" + std::to_string(exponent);
}

Poly::Poly(std::uint32_t p) : p_(p) { check_modulus(p); }

Poly::Poly(std::vector<std::int64_t> coeffs, std::uint32_t p) : p_(p) {
  check_modulus(p);
  coeffs_.reserve(coeffs.size());
  for (auto c : coeffs) coeffs_.push_back(FieldElement(c, p).value());
  trim();
}

Poly Poly::constant(std::int64_t c, std::uint32_t p) { return Poly({c}, p); }

Poly Poly::monomial(std::int64_t c, std::size_t k, std::uint32_t p) {
  Poly r(p);
  std::uint32_t v = FieldElement(c, p).value();
  if (v == 0) return r;
  r.coeffs_.assign(k + 1, 0);
  r.coeffs_[k] = v;
  return r;
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::optional<std::int64_t> Poly::degree() const {
  if (coeffs_.empty()) return std::nullopt;
  return static_cast<std::int64_t>(coeffs_.size()) - 1;
}

std::int64_t Poly::deg() const {
  require(!coeffs_.empty(), "degree of the zero polynomial");
  return static_cast<std::int64_t>(coeffs_.size()) - 1;
}

std::uint32_t Poly::leading() const {
  require(!coeffs_.empty(), "leading coefficient of the zero polynomial");
  return coeffs_.back();
}

namespace {
void same_ring(const Poly& a, const Poly& b) {
  require(a.modulus() == b.modulus(), "polynomial modulus mismatch: " +
                                          std::to_string(a.modulus()) + " vs " +
                                          std::to_string(b.modulus()));
}
}  // namespace

Poly Poly::operator+(const Poly& o) const {
  same_ring(*this, o);
  Poly r(p_);
  r.coeffs_.resize(std::max(coeffs_.size(), o.coeffs_.size()), 0);
  for (std::size_t i = 0; i < r.coeffs_.size(); ++i)
    r.coeffs_[i] = mod_add(coeff(i), o.coeff(i), p_);
  r.trim();
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  same_ring(*this, o);
  Poly r(p_);
  r.coeffs_.resize(std::max(coeffs_.size(), o.coeffs_.size()), 0);
  for (std::size_t i = 0; i < r.coeffs_.size(); ++i)
    r.coeffs_[i] = mod_sub(coeff(i), o.coeff(i), p_);
  r.trim();
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  same_ring(*this, o);
  Poly r(p_);
  if (is_zero() || o.is_zero()) return r;
  // Accumulate in 64 bits and reduce once; p < 256 keeps this far from overflow.
  std::vector<std::uint64_t> acc(coeffs_.size() + o.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
      acc[i + j] += static_cast<std::uint64_t>(coeffs_[i]) * o.coeffs_[j];
  }
  r.coeffs_.resize(acc.size());
  for (std::size_t k = 0; k < acc.size(); ++k) r.coeffs_[k] = static_cast<std::uint32_t>(acc[k] % p_);
  r.trim();
  return r;
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& c : r.coeffs_) c = mod_sub(0, c, p_);
  return r;
}

Poly Poly::scaled(std::uint32_t c) const {
  Poly r(*this);
  c %= p_;
  for (auto& x : r.coeffs_) x = mod_mul(x, c, p_);
  r.trim();
  return r;
}

Poly Poly::shifted(std::size_t k) const {
  Poly r(*this);
  if (!r.is_zero()) r.coeffs_.insert(r.coeffs_.begin(), k, 0);
  return r;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(mod_inv(leading(), p_));
}

std::string Poly::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(coeffs_[i]);
  }
  return s + "]";
}

std::vector<std::int64_t> Poly::to_vector() const {
  return {coeffs_.begin(), coeffs_.end()};
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
  require(a.modulus() == b.modulus(), "poly_divmod: modulus mismatch");
  require(!b.is_zero(), "poly_divmod: division by the zero polynomial");
  const std::uint32_t p = a.modulus();
  Poly quotient(p);
  if (a.is_zero() || a.deg() < b.deg()) return {quotient, a};

  std::vector<std::uint32_t> rem(a.coeffs().begin(), a.coeffs().end());
  const auto bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  const std::uint32_t inv_lead = mod_inv(bc[db], p);
  std::vector<std::int64_t> q(rem.size() - db, 0);
  for (std::size_t k = rem.size(); k-- > db;) {
    std::uint32_t c = mod_mul(rem[k], inv_lead, p);
    if (c == 0) continue;
    q[k - db] = c;
    for (std::size_t j = 0; j <= db; ++j)
      rem[k - db + j] = mod_sub(rem[k - db + j], mod_mul(c, bc[j], p), p);
  }
  std::vector<std::int64_t> r(rem.begin(), rem.begin() + static_cast<std::ptrdiff_t>(db));
  return {Poly(std::move(q), p), Poly(std::move(r), p)};
}

Poly poly_gcd(Poly a, Poly b) {
  require(a.modulus() == b.modulus(), "poly_gcd: modulus mismatch");
  while (!b.is_zero()) {
    Poly r = poly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Magnitude poly_abs(const Poly& P) {
  if (P.is_zero()) return Magnitude::of_zero();
  return Magnitude::power(P.deg());
}

}  // namespace cantor
