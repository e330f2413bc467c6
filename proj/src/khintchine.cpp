#include "cantor/khintchine.hpp"

#include <algorithm>
#include <cmath>

#include "cantor/error.hpp"
#include "cantor/laurent.hpp"
#include "cantor/ratfun.hpp"

namespace cantor {

namespace mp = boost::multiprecision;

namespace {

std::int64_t checked_exponent(std::int64_t n, const PsiSpec& spec) {
  require(spec.is_step(), "psi '" + spec.to_string() + "' is not a power-of-p step function");
  const std::int64_t e = spec.exponent(n);
  require(e >= n, "psi(p^" + std::to_string(n) + ") = p^-" + std::to_string(e) +
                      " exceeds p^-n; disjointness of the balls is not available (apply psi_cap)");
  return e;
}

void check_cfg(const MDSConfig& cfg) {
  require(cfg.admits(0), "the approximation-set identities need 0 in the alphabet");
}

Rational measure_formula(std::int64_t n, std::int64_t e, const MDSConfig& cfg) {
  return rational_pow(cfg.alphabet_size(), n - 1 - e);
}

Cylinder cylinder_around(const RatFun& center, std::int64_t depth) {
  LaurentTrunc t = laurent_expand(center, std::max<std::int64_t>(depth, 1));
  Cylinder c;
  c.prefix.reserve(static_cast<std::size_t>(depth));
  for (std::int64_t k = 1; k <= depth; ++k) c.prefix.push_back(static_cast<std::uint8_t>(*t.digit(k)));
  return c;
}

ApproxSetRecord make_record(std::int64_t n, const PsiSpec& spec, const MDSConfig& cfg, bool starred) {
  check_cfg(cfg);
  const std::int64_t e = checked_exponent(n, spec);
  std::vector<Cylinder> balls = approximation_balls(n, spec, cfg, starred);

  // Distinct centres g/X^n differ by at least p^-n >= psi(p^n), so the balls
  // must carry pairwise different depth-e prefixes.
  std::vector<Cylinder> sorted = balls;
  std::sort(sorted.begin(), sorted.end());
  ensure(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
         "A_" + std::to_string(n) + ": two balls coincide");

  ApproxSetRecord rec{n, e, CylinderSet::reduce(cfg, std::move(balls)), 0, 0, false};
  rec.measure = cyl_measure(rec.cylinders);
  const std::int64_t free = starred ? n - 1 : n;
  rec.formula = rational_pow(cfg.alphabet_size(), free - e);
  rec.match = rec.measure == rec.formula;
  return rec;
}

}  // namespace

PsiSpec psi_cap(const PsiSpec& spec) {
  require(spec.is_step(), "psi_cap: psi '" + spec.to_string() + "' is not a power-of-p step function");
  return PsiSpec(spec.form(), true);
}

std::vector<Cylinder> approximation_balls(std::int64_t n, const PsiSpec& spec, const MDSConfig& cfg,
                                          bool starred) {
  require(n >= 1, "approximation set index must be >= 1");
  const std::int64_t e = spec.exponent(n);
  const std::int64_t free = starred ? n - 1 : n;
  const double bits = static_cast<double>(free) * std::log2(static_cast<double>(cfg.alphabet_size()));
  require(bits <= static_cast<double>(enumeration_limit()),
          "A_" + std::to_string(n) + " needs (#A)^" + std::to_string(free) +
              " balls, beyond the enumeration guard (LD_MAX_DEPTH)");
  PolySet centers = enum_F(n, cfg, starred);
  const RatFun denominator(Poly::monomial(1, static_cast<std::size_t>(n), cfg.p()));
  std::vector<Cylinder> balls;
  balls.reserve(centers.items.size());
  for (const Poly& g : centers.items) balls.push_back(cylinder_around(RatFun(g) / denominator, e));
  return balls;
}

ApproxSetRecord build_Astar(std::int64_t n, const PsiSpec& spec, const MDSConfig& cfg) {
  return make_record(n, spec, cfg, true);
}

ApproxSetRecord build_A(std::int64_t n, const PsiSpec& spec, const MDSConfig& cfg) {
  return make_record(n, spec, cfg, false);
}

BigInt ball_count_in(const Cylinder& B, std::int64_t n, const PsiSpec& spec, const MDSConfig& cfg) {
  check_cfg(cfg);
  const auto ell = static_cast<std::int64_t>(B.depth());
  require(n > ell, "ball_count_in: need n > depth(B)");
  for (auto d : B.prefix) require(cfg.admits(d), "ball_count_in: B does not meet the missing-digit set");
  checked_exponent(n, spec);
  BigInt count = 0;
  for (const Cylinder& ball : approximation_balls(n, spec, cfg, true))
    if (B.contains(ball)) count += 1;
  const BigInt closed = mp::pow(BigInt(cfg.alphabet_size()), static_cast<unsigned>(n - ell - 1));
  ensure(count == closed, "ball_count_in: enumerated " + count.str() + " balls, closed form gives " + closed.str());
  return count;
}

Rational local_measure_closed_form(const Cylinder& B, std::int64_t n, const PsiSpec& spec,
                                   const MDSConfig& cfg) {
  for (auto d : B.prefix)
    if (!cfg.admits(d)) return 0;
  const auto ell = static_cast<std::int64_t>(B.depth());
  const std::int64_t e = checked_exponent(n, spec);
  // r(B)^gamma = (#A)^-l, (psi(p^n) p^n)^gamma p^-gamma = (#A)^(n - e - 1)
  return rational_pow(cfg.alphabet_size(), -ell) * rational_pow(cfg.alphabet_size(), n - e - 1);
}

Rational local_measure(const Cylinder& B, std::int64_t n, const PsiSpec& spec, const MDSConfig& cfg) {
  check_cfg(cfg);
  require(n > static_cast<std::int64_t>(B.depth()), "local_measure: need n > depth(B)");
  const Rational closed = local_measure_closed_form(B, n, spec, cfg);
  ApproxSetRecord astar = build_Astar(n, spec, cfg);
  CylinderSet ball = CylinderSet::reduce(cfg, {B});
  const Rational direct = cyl_measure(cyl_intersect(ball, astar.cylinders));
  ensure(direct == closed, "local_measure: intersection gives " + to_fraction_string(direct) +
                               ", closed form gives " + to_fraction_string(closed));
  return direct;
}

PairwiseResult pairwise_measure(std::int64_t m, std::int64_t n, const PsiSpec& spec, const MDSConfig& cfg) {
  require(m < n, "pairwise_measure: need m < n");
  ApproxSetRecord am = build_Astar(m, spec, cfg);
  ApproxSetRecord an = build_Astar(n, spec, cfg);
  const Rational direct = cyl_measure(cyl_intersect(am.cylinders, an.cylinders));
  const PairRegime regime = n <= am.psi_exponent ? PairRegime::empty : PairRegime::product;
  const Rational predicted = regime == PairRegime::empty ? Rational(0) : am.measure * an.measure;
  ensure(direct == predicted, "pairwise_measure(" + std::to_string(m) + "," + std::to_string(n) +
                                  "): intersection gives " + to_fraction_string(direct) + ", expected " +
                                  to_fraction_string(predicted));
  return {direct, regime};
}

Rational bc_ratio(std::int64_t N, const PsiSpec& spec, const MDSConfig& cfg) {
  require(N >= 1, "bc_ratio: N must be >= 1");
  std::vector<ApproxSetRecord> sets;
  sets.reserve(static_cast<std::size_t>(N));
  for (std::int64_t k = 1; k <= N; ++k) sets.push_back(build_Astar(k, spec, cfg));
  Rational sum = 0, pair_sum = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    sum += sets[i].measure;
    pair_sum += sets[i].measure;
    for (std::size_t j = i + 1; j < sets.size(); ++j)
      pair_sum += 2 * cyl_measure(cyl_intersect(sets[i].cylinders, sets[j].cylinders));
  }
  require(pair_sum != 0, "bc_ratio: every A_k* has measure zero");
  return sum * sum / pair_sum;
}

std::vector<Rational> bc_ratio_closed_form_all(std::int64_t N, const PsiSpec& spec, const MDSConfig& cfg) {
  require(N >= 1, "bc_ratio: N must be >= 1");
  check_cfg(cfg);
  // Growing N by one adds mu_N to the sum, and mu_N (diagonal) plus
  // 2 mu_N * sum{mu_m : m < N, e(m) < N} to the pair sum, since A_m* meets
  // A_N* only when N > e(m), and then as a product.
  std::vector<Rational> pending(static_cast<std::size_t>(N) + 2, 0);  // mu_m keyed by the first N it meets
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(N));
  Rational sum = 0, pair_sum = 0, active = 0;
  for (std::int64_t k = 1; k <= N; ++k) {
    active += pending[static_cast<std::size_t>(k)];
    const std::int64_t e = checked_exponent(k, spec);
    const Rational mu = measure_formula(k, e, cfg);
    sum += mu;
    pair_sum += mu * (1 + 2 * active);
    const std::int64_t first = std::max(k, e) + 1;
    if (first <= N) pending[static_cast<std::size_t>(first)] += mu;
    require(pair_sum != 0, "bc_ratio: every A_k* has measure zero");
    out.push_back(sum * sum / pair_sum);
  }
  return out;
}

Rational bc_ratio_closed_form(std::int64_t N, const PsiSpec& spec, const MDSConfig& cfg) {
  return bc_ratio_closed_form_all(N, spec, cfg).back();
}

namespace {

// log of f(p^-e) in natural units together with an exact value when there is one.
struct DimValue {
  std::optional<Rational> exact;  // f(p^-e) * (#A)^n
  Decimal approx;
};

DimValue series_term(const DimensionFunction& f, std::int64_t n, std::int64_t e, const MDSConfig& cfg) {
  const Decimal ln_a = mp::log(Decimal(cfg.alphabet_size()));
  const Decimal ln_p = mp::log(Decimal(cfg.p()));
  if (const auto* g = std::get_if<GammaPower>(&f.form)) {
    const Rational x = n - g->k * e;  // exponent of #A
    if (mp::denominator(x) == 1)
      return {rational_pow(cfg.alphabet_size(), static_cast<std::int64_t>(mp::numerator(x))),
              to_decimal(rational_pow(cfg.alphabet_size(), static_cast<std::int64_t>(mp::numerator(x))))};
    return {std::nullopt, mp::exp(to_decimal(x) * ln_a)};
  }
  if (const auto* s = std::get_if<PlainPower>(&f.form))
    return {std::nullopt, mp::exp(Decimal(n) * ln_a - to_decimal(s->s) * Decimal(e) * ln_p)};
  const auto& l = std::get<LogPower>(f.form);
  Decimal v = mp::exp(to_decimal(n - l.k * e) * ln_a) * mp::pow(Decimal(1 + e), to_decimal(l.beta));
  return {std::nullopt, v};
}

}  // namespace

SeriesResult series_partial(const DimensionFunction& f, const PsiSpec& spec, std::int64_t N,
                            const MDSConfig& cfg) {
  require(N >= 1, "series_partial: N must be >= 1");
  require(spec.is_step(), "series_partial: psi must be a power-of-p step function");
  SeriesResult out;
  Rational exact_sum = 0;
  bool all_exact = true;
  out.approx_sum = 0;
  for (std::int64_t n = 1; n <= N; ++n) {
    DimValue t = series_term(f, n, spec.exponent(n), cfg);
    out.exact_terms.push_back(t.exact);
    out.approx_terms.push_back(t.approx);
    out.approx_sum += t.approx;
    if (t.exact) exact_sum += *t.exact;
    else all_exact = false;
  }
  if (all_exact) out.exact_sum = exact_sum;
  const auto mid = static_cast<std::size_t>((N + 1) / 2 - 1);
  out.verdict = out.approx_terms.back() >= out.approx_terms[mid] ? "terms_not_decaying" : "terms_decaying";
  return out;
}

PsiSpec theta(const DimensionFunction& f, const PsiSpec& spec, const MDSConfig& cfg, std::int64_t n_max) {
  require(n_max >= 1, "theta: n_max must be >= 1");
  require(spec.is_step(), "theta: psi must be a power-of-p step function");
  const Decimal ln_a = mp::log(Decimal(cfg.alphabet_size()));
  const Decimal ln_p = mp::log(Decimal(cfg.p()));
  Tabulated out;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const std::int64_t e = spec.exponent(n);
    std::int64_t r = 0;  // theta(p^n) = p^r
    if (const auto* g = std::get_if<GammaPower>(&f.form)) {
      // f(p^-e)^(1/gamma) = p^(-e k) exactly
      r = static_cast<std::int64_t>(ceil_of(Rational(-g->k * e)));
    } else if (const auto* s = std::get_if<PlainPower>(&f.form)) {
      // log_p f(p^-e)^(1/gamma) = -e s ln p / ln #A
      r = ceil_pow_from_log(-to_decimal(s->s) * Decimal(e) * ln_p / ln_a);
    } else {
      const auto& l = std::get<LogPower>(f.form);
      r = ceil_pow_from_log(-to_decimal(l.k) * Decimal(e) + to_decimal(l.beta) * mp::log(Decimal(1 + e)) / ln_a);
    }
    out.exponents.push_back(-r);
  }
  return PsiSpec(out);
}

}  // namespace cantor
