#include "cantor/cfrac.hpp"

#include "cantor/error.hpp"

namespace cantor {

void check_canonical(const CFrac& cf) {
  for (std::size_t i = 0; i < cf.quotients.size(); ++i) {
    const Poly& a = cf.quotients[i];
    require(a.modulus() == cf.a0.modulus(), "continued fraction mixes moduli");
    require(!a.is_zero() && a.deg() >= 1,
            "partial quotient a_" + std::to_string(i + 1) + " has degree < 1");
  }
}

CFrac cf_rational(const RatFun& x) {
  Poly n = x.num(), d = x.den();
  auto [a0, r] = poly_divmod(n, d);
  CFrac cf{a0, {}};
  while (!r.is_zero()) {
    n = std::move(d);
    d = std::move(r);
    auto [q, rr] = poly_divmod(n, d);
    cf.quotients.push_back(std::move(q));
    r = std::move(rr);
  }
  return cf;
}

RatFun cf_eval(const CFrac& cf) {
  check_canonical(cf);
  if (cf.quotients.empty()) return RatFun(cf.a0);
  RatFun value(cf.quotients.back());
  for (std::size_t i = cf.quotients.size() - 1; i-- > 0;)
    value = RatFun(cf.quotients[i]) + value.reciprocal();
  return RatFun(cf.a0) + value.reciprocal();
}

ConvergentTable convergents(const CFrac& cf) {
  check_canonical(cf);
  const std::uint32_t p = cf.modulus();
  ConvergentTable table;
  Poly P_prev = Poly::constant(1, p), Q_prev(p);
  Poly P = cf.a0, Q = Poly::constant(1, p);
  auto push = [&](std::size_t j) {
    const std::uint32_t unit = mod_inv(Q.leading(), p);
    table.rows.push_back({j, P.scaled(unit), Q.scaled(unit)});
    table.raw_P.push_back(P);
    table.raw_Q.push_back(Q);
  };
  push(0);
  for (std::size_t j = 1; j <= cf.size(); ++j) {
    const Poly& a = cf.quotients[j - 1];
    Poly P_next = a * P + P_prev;
    Poly Q_next = a * Q + Q_prev;
    P_prev = std::move(P);
    Q_prev = std::move(Q);
    P = std::move(P_next);
    Q = std::move(Q_next);
    push(j);
  }
  return table;
}

namespace {

CfExpansion limited(CFrac cf, std::size_t max_terms) {
  if (cf.quotients.size() <= max_terms) return {std::move(cf), CfStatus::complete};
  cf.quotients.resize(max_terms, Poly(cf.modulus()));
  return {std::move(cf), CfStatus::term_limit};
}

}  // namespace

CfExpansion cf_laurent(const LaurentTrunc& x, std::size_t max_terms) {
  require(max_terms >= 1, "cf_laurent: max_terms must be >= 1");
  if (x.exact()) return limited(cf_rational(x.truncation()), max_terms);
  const std::int64_t depth = x.known_depth();
  if (depth < 0) return {CFrac{Poly(x.modulus()), {}}, CfStatus::precision_exhausted};

  CFrac full = cf_rational(x.truncation());
  ConvergentTable table = convergents(full);
  CFrac out{full.a0, {}};
  for (std::size_t j = 1; j <= full.size(); ++j) {
    if (2 * table.rows[j].Q.deg() > depth) break;
    if (out.quotients.size() == max_terms) return {std::move(out), CfStatus::term_limit};
    out.quotients.push_back(full.quotients[j - 1]);
  }
  return {std::move(out), CfStatus::precision_exhausted};
}

CfExpansion cf_laurent(const DigitStream& x, std::size_t max_terms) {
  require(max_terms >= 1, "cf_laurent: max_terms must be >= 1");
  return limited(cf_rational(x.source()), max_terms);
}

Magnitude approx_error(const RatFun& x, const CFrac& cf, std::size_t j) {
  require(j + 1 <= cf.size(), "approx_error: j = " + std::to_string(j) + " needs a_{j+1}, but only " +
                                  std::to_string(cf.size()) + " partial quotients exist");
  ConvergentTable table = convergents(cf);
  const ConvergentRow& row = table.rows[j];
  Magnitude direct = (x - ratfun_make(row.P, row.Q)).abs();
  const std::int64_t expected = -(cf.quotients[j].deg() + 2 * row.Q.deg());
  ensure(direct == Magnitude::power(expected),
         "approx_error: |x - P_j/Q_j| = " + direct.to_string(x.modulus()) +
             " disagrees with the identity exponent " + std::to_string(expected));
  return direct;
}

CFrac fold(const CFrac& cf, const Poly& t) {
  check_canonical(cf);
  require(t.modulus() == cf.modulus(), "fold: modulus mismatch");
  require(!t.is_zero() && t.deg() >= 1, "fold: t must have degree >= 1");
  CFrac out = cf;
  out.quotients.reserve(2 * cf.size() + 1);
  out.quotients.push_back(t);
  for (std::size_t i = cf.size(); i-- > 0;) out.quotients.push_back(-cf.quotients[i]);
  return out;
}

}  // namespace cantor
