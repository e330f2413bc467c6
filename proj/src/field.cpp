#include "cantor/field.hpp"

#include "cantor/error.hpp"

namespace cantor {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void check_modulus(std::uint32_t p) {
  require(is_prime(p), "modulus " + std::to_string(p) + " is not prime");
  require(p < 256, "modulus " + std::to_string(p) + " exceeds the supported range (< 256)");
}

FieldElement::FieldElement(std::int64_t value, std::uint32_t p) : p_(p) {
  check_modulus(p);
  std::int64_t r = value % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  value_ = static_cast<std::uint32_t>(r);
}

namespace {
void same_modulus(const FieldElement& a, const FieldElement& b) {
  require(a.modulus() == b.modulus(), "field modulus mismatch: " + std::to_string(a.modulus()) +
                                          " vs " + std::to_string(b.modulus()));
}
}  // namespace

FieldElement FieldElement::operator+(const FieldElement& o) const {
  same_modulus(*this, o);
  return {Raw{}, mod_add(value_, o.value_, p_), p_};
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  same_modulus(*this, o);
  return {Raw{}, mod_sub(value_, o.value_, p_), p_};
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  same_modulus(*this, o);
  return {Raw{}, mod_mul(value_, o.value_, p_), p_};
}

FieldElement FieldElement::operator-() const {
  return {Raw{}, mod_sub(0, value_, p_), p_};
}

FieldElement FieldElement::inverse() const {
  require(value_ != 0, "inverse of zero in F_" + std::to_string(p_));
  return {Raw{}, mod_inv(value_, p_), p_};
}

FieldElement ff_ops(const FieldElement& a, const FieldElement& b, FieldOp op) {
  switch (op) {
    case FieldOp::add: return a + b;
    case FieldOp::mul: return a * b;
    case FieldOp::neg: return -a;
    case FieldOp::inv: return a.inverse();
  }
  throw PreconditionError("ff_ops: unknown op");
}

std::uint32_t mod_inv(std::uint32_t a, std::uint32_t p) {
  require(a % p != 0, "inverse of zero in F_" + std::to_string(p));
  // Fermat: a^(p-2)
  std::uint32_t result = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) result = mod_mul(result, base, p);
    base = mod_mul(base, base, p);
    e >>= 1;
  }
  return result;
}

}  // namespace cantor
