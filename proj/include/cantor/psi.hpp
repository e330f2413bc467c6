#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cantor/rational.hpp"

namespace cantor {

/// e(n) = ceil(a*n + b), i.e. psi(p^n) = p^-e(n).
struct AffineCeil {
  Rational a, b;
  bool operator==(const AffineCeil&) const = default;
};

/// Explicit exponents e(1), e(2), ... (out-of-range lookups are errors).
struct Tabulated {
  std::vector<std::int64_t> exponents;
  bool operator==(const Tabulated&) const = default;
};

/// psi(x) = x^-tau.
struct PowerLaw {
  Rational tau;
  bool operator==(const PowerLaw&) const = default;
};

/// psi(x) = (x ln x)^-2.
struct LogCorrected {
  bool operator==(const LogCorrected&) const = default;
};

/// An approximation function. The step kinds (AffineCeil, Tabulated) take
/// values in {p^-r}; the real-valued kinds are only meaningful to the
/// irrationality-exponent code.
class PsiSpec {
 public:
  using Form = std::variant<AffineCeil, Tabulated, PowerLaw, LogCorrected>;

  PsiSpec(Form form, bool capped = false) : form_(std::move(form)), capped_(capped) {}

  const Form& form() const { return form_; }
  bool capped() const { return capped_; }
  bool is_step() const;

  /// e(n) with psi(p^n) = p^-e(n); with the cap applied this is max(n, e(n)).
  std::int64_t exponent(std::int64_t n) const;

  /// log_p psi(p^v) when it is an exact rational.
  std::optional<Rational> exact_log(std::int64_t v) const;
  /// log_p psi(p^v) in 50-digit decimal.
  Decimal approx_log(std::int64_t v, std::uint32_t p) const;

  /// Mini-language form, e.g. "ceil:a=1/1,b=0/1".
  std::string to_string() const;

  bool operator==(const PsiSpec&) const = default;

 private:
  Form form_;
  bool capped_;
};

/// "ceil:a=<rat>,b=<rat>" | "pow:tau=<rat>" | "logcorr" | "table:e1,e2,...".
PsiSpec parse_psi(const std::string& text);

/// f(r) = r^(k * gamma_A); exact on powers of p whenever e*k is an integer.
struct GammaPower {
  Rational k;
  bool operator==(const GammaPower&) const = default;
};
/// f(r) = r^s for a plain rational s.
struct PlainPower {
  Rational s;
  bool operator==(const PlainPower&) const = default;
};
/// f(r) = r^(k * gamma_A) * (1 + log_p(1/r))^beta.
struct LogPower {
  Rational k, beta;
  bool operator==(const LogPower&) const = default;
};

struct DimensionFunction {
  std::variant<GammaPower, PlainPower, LogPower> form;

  std::string to_string() const;
  bool operator==(const DimensionFunction&) const = default;
};

/// "gamma:k=<rat>" | "pow:s=<rat>" | "logcorr:k=<rat>,beta=<rat>".
DimensionFunction parse_dimension(const std::string& text);

/// Exponent r of the smallest power p^r >= value (value > 0), exact.
std::int64_t ceil_pow(const Rational& value, std::uint32_t p);

/// Same from a decimal log_p(value); throws PreconditionError when the log
/// lies within `guard` of an integer, since the rounding is then ambiguous.
std::int64_t ceil_pow_from_log(const Decimal& log_value, double guard = 1e-9);
std::int64_t ceil_pow_decimal(const Decimal& value, std::uint32_t p, double guard = 1e-9);

}  // namespace cantor
