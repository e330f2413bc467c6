#include "cantor/exponent.hpp"

#include <algorithm>

#include "cantor/error.hpp"

namespace cantor {

namespace mp = boost::multiprecision;

namespace {

constexpr double kGuard = 1e-9;

// log_p psi(p^v): exact when psi is a power of p there, else 50-digit decimal.
struct LogValue {
  std::optional<Rational> exact;
  Decimal approx;

  std::string str() const { return exact ? to_fraction_string(*exact) : "~" + approx.str(12); }
};

LogValue psi_log(const PsiSpec& spec, std::int64_t v, std::uint32_t p) {
  if (auto e = spec.exact_log(v)) return {e, to_decimal(*e)};
  return {std::nullopt, spec.approx_log(v, p)};
}

// Sign of (value) where value = k + log, decided exactly or through the
// guard band; zero only for an exact tie.
int compare_to_zero(const std::int64_t k, const LogValue& log) {
  if (log.exact) {
    const Rational s = *log.exact + k;
    return s < 0 ? -1 : (s > 0 ? 1 : 0);
  }
  const Decimal s = log.approx + Decimal(k);
  require(mp::abs(s) >= Decimal(kGuard), "comparison with psi falls inside the 1e-9 guard band");
  return s < 0 ? -1 : 1;
}

Poly monomial(std::int64_t c, std::int64_t k, std::uint32_t p) {
  return Poly::monomial(c, static_cast<std::size_t>(k), p);
}

}  // namespace

FoldingSchedule schedule(const PsiSpec& spec, std::size_t count, std::uint32_t p) {
  require(count >= 1, "schedule: count must be >= 1");
  check_modulus(p);
  FoldingSchedule s{{1}, {1}, spec, p};

  // L(v) = -2v - log_p psi(p^v) = -log_p (x^2 psi(x)) at x = p^v.
  auto level = [&](std::int64_t v) -> LogValue {
    LogValue l = psi_log(spec, v, p);
    if (l.exact) return {-2 * v - *l.exact, to_decimal(-2 * v - *l.exact)};
    return {std::nullopt, Decimal(-2 * v) - l.approx};
  };

  for (std::size_t i = 1; i < count; ++i) {
    const std::int64_t v = s.v.back();
    const LogValue L = level(v);
    std::int64_t u = 0;
    if (L.exact) {
      u = static_cast<std::int64_t>(floor_of(*L.exact)) + 1;
    } else {
      require(mp::abs(L.approx - mp::round(L.approx)) >= Decimal(kGuard),
              "schedule: L = " + L.approx.str(20) + " lies within the guard band of an integer");
      u = static_cast<std::int64_t>(mp::floor(L.approx)) + 1;
    }
    require(u >= 1, "schedule: x^2 psi(x) exceeds 1 at x = p^" + std::to_string(v));
    s.u.push_back(u);
    s.v.push_back(u + 2 * v);
  }

  // Hypothesis: x^2 psi(x) non-increasing and tending to 0, sampled at every
  // p^v up to one past the last v used.
  const std::int64_t last = std::max<std::int64_t>(s.v.back() + 1, 2);
  LogValue prev = level(1);
  const LogValue first = prev;
  for (std::int64_t v = 2; v <= last; ++v) {
    LogValue cur = level(v);
    const bool decreasing = cur.exact && prev.exact ? *cur.exact < *prev.exact
                                                    : cur.approx < prev.approx - Decimal(kGuard);
    require(!decreasing, "schedule: x^2 psi(x) increases between p^" + std::to_string(v - 1) + " and p^" +
                             std::to_string(v));
    prev = cur;
  }
  const bool grows = prev.exact && first.exact ? *prev.exact > *first.exact : prev.approx > first.approx;
  require(grows, "schedule: x^2 psi(x) does not decrease over the sampled range, so it cannot tend to 0");

  for (std::size_t i = 1; i < s.u.size(); ++i)
    ensure(s.u[i] >= s.u[i - 1], "schedule: u is not non-decreasing");
  return s;
}

LaurentTrunc ConstructionState::digits() const {
  return laurent_expand(final_value(), sched.v.at(stages() - 1));
}

ConstructionState construct(const FoldingSchedule& sched, std::size_t stages) {
  require(stages >= 1, "construct: need at least one stage");
  require(stages <= sched.u.size(), "construct: schedule has only " + std::to_string(sched.u.size()) + " entries");
  const std::uint32_t p = sched.p;
  require(p >= 3, "construct: digits {0, p-1} form a missing-digit set only for p >= 3");

  ConstructionState st{sched, {}, {}};
  st.stage_cf.push_back(CFrac{Poly(p), {monomial(-1, sched.u[0], p)}});
  for (std::size_t i = 1; i < stages; ++i) {
    CFrac next = fold(st.stage_cf.back(), monomial(1, sched.u[i], p));
    const auto& prev = st.stage_cf.back().quotients;
    ensure(std::equal(prev.begin(), prev.end(), next.quotients.begin()),
           "construct: stage " + std::to_string(i) + " is not a prefix of stage " + std::to_string(i + 1));
    st.stage_cf.push_back(std::move(next));
  }

  // Stage values are convergents of the final stage (prefix property).
  const ConvergentTable table = convergents(st.final_cf());
  Poly target(p);
  for (std::size_t k = 0; k < stages; ++k) {
    const std::size_t idx = (std::size_t{1} << (k + 1)) - 1;
    const ConvergentRow& row = table.rows.at(idx);
    const std::int64_t v = sched.v[k];
    const std::string tag = "construct: stage " + std::to_string(k + 1);
    ensure(row.Q == monomial(1, v, p), tag + ": denominator is not X^" + std::to_string(v));
    // -sum_{m <= k} X^(-v_m) over X^(v_k)
    target = k == 0 ? monomial(-1, 0, p) : target.shifted(static_cast<std::size_t>(v - sched.v[k - 1])) - monomial(1, 0, p);
    ensure(row.P == target, tag + ": value differs from -sum X^-v");
    RatFun value = ratfun_make(row.P, row.Q);
    ensure(cf_rational(value) == st.stage_cf[k], tag + ": continued fraction does not evaluate back");

    LaurentTrunc digits = laurent_expand(value, v);
    ensure(digits.exact(), tag + ": expansion does not terminate at v");
    for (std::int64_t n = 1; n <= v; ++n) {
      const std::uint32_t d = *digits.digit(n);
      ensure(d == 0 || d == p - 1, tag + ": digit " + std::to_string(d) + " at index " + std::to_string(n));
    }
    st.stage_value.push_back(std::move(value));
  }
  return st;
}

WindowReport verify_window(const ConstructionState& state, const PsiSpec& spec, const Rational& c) {
  const std::uint32_t p = state.sched.p;
  require(c > 0 && c < Rational(1, p), "verify_window: c must lie in (0, 1/p), got " + to_fraction_string(c));
  require(state.stages() >= 2, "verify_window: need at least two stages");
  const auto& v = state.sched.v;
  const auto& u = state.sched.u;
  const RatFun& xi = state.final_value();

  WindowReport rep{c, {}, {}, {}, true};

  // (a) |xi - xi_n| = p^-v_{n+1} < psi(p^v_n)
  for (std::size_t n = 1; n < state.stages(); ++n) {
    const Magnitude err = (xi - state.stage_value[n - 1]).abs();
    ensure(!err.zero && err.exponent == -v[n],
           "verify_window: stage " + std::to_string(n) + " error is not p^-v_" + std::to_string(n + 1));
    const LogValue lg = psi_log(spec, v[n - 1], p);
    StageCheck sc{n, err.exponent, lg.str(), compare_to_zero(v[n], lg) > 0};
    rep.pass = rep.pass && sc.pass;
    rep.stages.push_back(std::move(sc));
  }

  // (b) every convergent of the final stage stays outside K(c psi).
  const CFrac& cf = state.final_cf();
  const ConvergentTable table = convergents(cf);
  for (std::size_t j = 1; j < cf.size(); ++j) {
    const ConvergentRow& row = table.rows[j];
    const std::int64_t dQ = row.Q.deg();
    const std::int64_t da = cf.term(j + 1).deg();
    const Magnitude err = (xi - ratfun_make(row.P, row.Q)).abs();
    ensure(!err.zero && err.exponent == -(da + 2 * dQ),
           "verify_window: error identity fails at j = " + std::to_string(j));
    const LogValue lg = psi_log(spec, dQ, p);
    ConvergentCheck cc{j, da, dQ, "", false};
    if (lg.exact) {
      const Rational excess = da + 2 * dQ + *lg.exact;
      cc.excess = to_fraction_string(excess);
      cc.pass = excess <= 1;
    } else {
      cc.excess = "~" + (lg.approx + Decimal(da + 2 * dQ)).str(12);
      cc.pass = compare_to_zero(da + 2 * dQ - 1, lg) <= 0;
    }
    rep.pass = rep.pass && cc.pass;
    rep.convergents.push_back(std::move(cc));
  }

  // Block bound |a_{j+1}| <= p^u_{i+1} for 2^(i-1) <= j < 2^i.
  for (std::size_t i = 1; i < u.size() && (std::size_t{1} << (i - 1)) < cf.size(); ++i) {
    const std::size_t lo = std::size_t{1} << (i - 1);
    const std::size_t hi = std::min(std::size_t{1} << i, cf.size());
    std::int64_t max_deg = 0;
    for (std::size_t j = lo; j < hi; ++j) max_deg = std::max(max_deg, cf.term(j + 1).deg());
    BlockCheck bc{i, max_deg, u[i], max_deg == u[i], max_deg <= u[i]};
    rep.pass = rep.pass && bc.pass;
    rep.blocks.push_back(bc);
  }
  return rep;
}

TauEstimate estimate_tau(const CFrac& cf) {
  require(cf.size() >= 2, "estimate_tau: need at least two partial quotients");
  const std::size_t J = cf.size() - 1;
  TauEstimate out;
  out.window_start = std::max<std::size_t>(1, J / 2);
  std::int64_t dQ = 0;
  for (std::size_t j = 1; j <= J; ++j) {
    dQ += cf.term(j).deg();
    const std::int64_t da = cf.term(j + 1).deg();
    out.per_j.push_back(Rational(da + 2 * dQ, dQ));
  }
  out.estimate = *std::max_element(out.per_j.begin() + static_cast<std::ptrdiff_t>(out.window_start - 1),
                                   out.per_j.end());
  out.dirichlet_shortfall = out.estimate < 2 ? 2 - out.estimate : Rational(0);
  return out;
}

LaurentTrunc liouville_element(std::int64_t depth, std::uint32_t p) {
  require(depth >= 1, "liouville_element: depth must be >= 1");
  check_modulus(p);
  std::vector<std::uint32_t> digits(static_cast<std::size_t>(depth), 0);
  for (std::int64_t n = 1, f = 1; (f *= n) <= depth; ++n) digits[static_cast<std::size_t>(f - 1)] = p - 1;
  return LaurentTrunc(p, 1, std::move(digits), false);
}

FoldingSchedule perturb(const FoldingSchedule& sched, const std::vector<int>& bits) {
  for (int b : bits) require(b == 1 || b == 2, "perturb: bits must be 1 or 2");
  const std::size_t L = bits.size();
  require(sched.u.size() >= L + 1, "perturb: schedule too short for " + std::to_string(L) + " bits");
  FoldingSchedule out{{1}, {1}, sched.source, sched.p};
  for (std::size_t n = 1; n <= L + 1; ++n) {
    out.u.push_back(sched.u[n - 1]);
    if (n <= L) out.u.push_back(bits[n - 1]);
  }
  for (std::size_t i = 1; i < out.u.size(); ++i) out.v.push_back(out.u[i] + 2 * out.v.back());
  return out;
}

}  // namespace cantor
