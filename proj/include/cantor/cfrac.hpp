#pragma once

#include <cstdint>
#include <vector>

#include "cantor/laurent.hpp"
#include "cantor/ratfun.hpp"

namespace cantor {

/// [a0; a1, ..., an] with deg a_i >= 1 for i >= 1.
struct CFrac {
  Poly a0;
  std::vector<Poly> quotients;

  std::uint32_t modulus() const { return a0.modulus(); }
  std::size_t size() const { return quotients.size(); }
  /// a_i with a_0 the polynomial part.
  const Poly& term(std::size_t i) const { return i == 0 ? a0 : quotients.at(i - 1); }

  bool operator==(const CFrac&) const = default;
};

/// Throws PreconditionError if some partial quotient beyond a0 has degree < 1.
void check_canonical(const CFrac& cf);

struct ConvergentRow {
  std::size_t j;
  Poly P;
  Poly Q;  // monic
};

/// Rows j = 0..n. `raw_P`/`raw_Q` keep the unnormalised recurrence values,
/// which are what the Folding Lemma's h refers to.
struct ConvergentTable {
  std::vector<ConvergentRow> rows;
  std::vector<Poly> raw_P;
  std::vector<Poly> raw_Q;
};

CFrac cf_rational(const RatFun& x);
RatFun cf_eval(const CFrac& cf);

/// P_j = a_j P_{j-1} + P_{j-2}, Q_j = a_j Q_{j-1} + Q_{j-2}, seeded with
/// P_{-1} = 1, P_0 = a0, Q_{-1} = 0, Q_0 = 1.
ConvergentTable convergents(const CFrac& cf);

enum class CfStatus { complete, precision_exhausted, term_limit };

struct CfExpansion {
  CFrac cf;
  CfStatus status;
};

/// Partial quotients of x, emitting a_j only once every series agreeing
/// with the known digits shares it (2 deg Q_j <= known depth).
CfExpansion cf_laurent(const LaurentTrunc& x, std::size_t max_terms);
CfExpansion cf_laurent(const DigitStream& x, std::size_t max_terms);

/// |x - P_j/Q_j| from direct subtraction, checked against the identity
/// exponent -(deg a_{j+1} + 2 deg Q_j). `cf` must be the expansion of x.
Magnitude approx_error(const RatFun& x, const CFrac& cf, std::size_t j);

/// [a0; a1..an, t, -an, ..., -a1], worth g/h + (-1)^n / (t h^2) with h the
/// recurrence Q_n.
CFrac fold(const CFrac& cf, const Poly& t);

}  // namespace cantor
