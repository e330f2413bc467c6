#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cantor/error.hpp"
#include "cantor/khintchine.hpp"
#include "../oracles.hpp"

using namespace cantor;

namespace {

const MDSConfig kC = MDSConfig::cantor();
const PsiSpec kLinear = parse_psi("ceil:a=1,b=0");     // e(n) = n
const PsiSpec kShift = parse_psi("ceil:a=1,b=1");      // e(n) = n + 1
const PsiSpec kDouble = parse_psi("ceil:a=2,b=0");     // e(n) = 2n
const PsiSpec kHalf = parse_psi("ceil:a=1/2,b=0");     // e(n) = ceil(n/2)

Cylinder cyl(std::vector<std::uint8_t> d) { return Cylinder{std::move(d)}; }

}  // namespace

TEST_CASE("psi parsing and exponents") {
  CHECK(kLinear.exponent(7) == 7);
  CHECK(kHalf.exponent(3) == 2);
  CHECK(parse_psi("table:1,3,5").exponent(2) == 3);
  CHECK_THROWS_AS(parse_psi("table:1,3").exponent(3), PreconditionError);
  CHECK_THROWS_AS(parse_psi("ceil:b=1"), PreconditionError);
  CHECK_THROWS_AS(parse_psi("ceil:a=1,z=2"), PreconditionError);
  CHECK_THROWS_AS(parse_psi("nonsense"), PreconditionError);
  CHECK_THROWS_AS(parse_psi("pow:tau=3").exponent(1), PreconditionError);
  CHECK(parse_psi("ceil:a=1,b=0").to_string() == "ceil:a=1/1,b=0/1");
}

TEST_CASE("psi_cap") {
  for (std::int64_t n = 1; n <= 20; ++n) {
    CHECK(psi_cap(kHalf).exponent(n) == n);
    CHECK(psi_cap(kDouble).exponent(n) == 2 * n);
    CHECK(psi_cap(kLinear).exponent(n) == n);
  }
  CHECK_THROWS_AS(psi_cap(parse_psi("logcorr")), PreconditionError);
}

TEST_CASE("build_Astar examples") {
  ApproxSetRecord r3 = build_Astar(3, kLinear, kC);
  CHECK(r3.cylinders.size() == 4);
  CHECK(r3.measure == Rational(1, 2));
  CHECK(r3.match);
  ApproxSetRecord r3b = build_Astar(3, kShift, kC);
  CHECK(r3b.cylinders.size() == 4);
  CHECK(r3b.measure == Rational(1, 4));
  ApproxSetRecord r1 = build_Astar(1, kLinear, kC);
  REQUIRE(r1.cylinders.size() == 1);
  CHECK(r1.cylinders.cylinders()[0] == cyl({2}));
  CHECK(r1.measure == Rational(1, 2));
  CHECK_THROWS_AS(build_Astar(4, kHalf, kC), PreconditionError);
  CHECK_THROWS_AS(build_Astar(2, kLinear, MDSConfig(5, {1, 3})), PreconditionError);
}

TEST_CASE("A_n* matches the brute-force ball union") {
  for (const PsiSpec& psi : {kLinear, kShift, kDouble}) {
    for (std::int64_t n = 1; n <= 6; ++n) {
      ApproxSetRecord r = build_Astar(n, psi, kC);
      const std::int64_t e = psi.exponent(n);
      auto prefixes = oracle::astar_prefixes(n, e, {0, 2}, 2);
      std::vector<Cylinder> expect;
      for (const auto& p : prefixes) expect.push_back(cyl({p.begin(), p.end()}));
      CHECK(r.cylinders == CylinderSet::reduce(kC, expect));
      CHECK(r.measure == oracle::brute_measure(prefixes, {0, 2}, static_cast<std::size_t>(e)));
      CHECK(r.formula == rational_pow(2, n - 1 - e));
    }
  }
}

TEST_CASE("A_n* over a larger alphabet") {
  const MDSConfig five(5, {0, 1, 3});
  for (std::int64_t n = 1; n <= 4; ++n) {
    ApproxSetRecord r = build_Astar(n, kShift, five);
    CHECK(r.match);
    CHECK(r.measure == rational_pow(3, n - 1 - (n + 1)));
    auto prefixes = oracle::astar_prefixes(n, n + 1, {0, 1, 3}, 3);
    CHECK(r.measure == oracle::brute_measure(prefixes, {0, 1, 3}, static_cast<std::size_t>(n + 1)));
  }
}

TEST_CASE("W* is contained in W") {
  for (std::int64_t n = 1; n <= 10; ++n) {
    ApproxSetRecord s = build_Astar(n, kShift, kC);
    ApproxSetRecord a = build_A(n, kShift, kC);
    CHECK(cyl_intersect(s.cylinders, a.cylinders) == s.cylinders);
    CHECK(a.match);
  }
}

TEST_CASE("ball_count_in") {
  CHECK(ball_count_in(cyl({2, 0}), 5, kLinear, kC) == 4);
  CHECK(ball_count_in(cyl({2}), 2, kLinear, kC) == 1);
  for (std::size_t ell = 0; ell <= 3; ++ell)
    CHECK(ball_count_in(cyl(std::vector<std::uint8_t>(ell, 0)), static_cast<std::int64_t>(ell) + 1, kShift, kC) == 1);
  CHECK_THROWS_AS(ball_count_in(cyl({2, 2}), 2, kLinear, kC), PreconditionError);
  CHECK_THROWS_AS(ball_count_in(cyl({1}), 3, kLinear, kC), PreconditionError);
}

TEST_CASE("local_measure") {
  CHECK(local_measure(cyl({}), 4, kShift, kC) == build_Astar(4, kShift, kC).measure);
  CHECK(local_measure(cyl({2}), 3, kLinear, kC) == Rational(1, 4));
  CHECK(local_measure(cyl({1}), 3, kLinear, kC) == 0);
  CHECK(local_measure_closed_form(cyl({1}), 5, kDouble, kC) == 0);
  // against brute force
  for (std::int64_t n = 3; n <= 7; ++n) {
    const std::int64_t e = kShift.exponent(n);
    auto prefixes = oracle::astar_prefixes(n, e, {0, 2}, 2);
    std::vector<std::vector<std::int64_t>> inside;
    for (const auto& p : prefixes)
      if (oracle::has_prefix(p, {0, 2})) inside.push_back(p);
    CHECK(local_measure(cyl({0, 2}), n, kShift, kC) ==
          oracle::brute_measure(inside, {0, 2}, static_cast<std::size_t>(e)));
  }
}

TEST_CASE("pairwise_measure") {
  PairwiseResult a = pairwise_measure(2, 3, kLinear, kC);
  CHECK(a.measure == Rational(1, 4));
  CHECK(a.regime == PairRegime::product);
  PairwiseResult b = pairwise_measure(2, 3, kDouble, kC);
  CHECK(b.measure == 0);
  CHECK(b.regime == PairRegime::empty);
  CHECK(pairwise_measure(1, 2, kLinear, kC).measure == Rational(1, 4));
  CHECK_THROWS_AS(pairwise_measure(3, 3, kLinear, kC), PreconditionError);
  // brute force on a small grid
  for (std::int64_t m = 1; m <= 4; ++m)
    for (std::int64_t n = m + 1; n <= 5; ++n) {
      auto pm = oracle::astar_prefixes(m, kShift.exponent(m), {0, 2}, 2);
      auto pn = oracle::astar_prefixes(n, kShift.exponent(n), {0, 2}, 2);
      const std::size_t depth = static_cast<std::size_t>(kShift.exponent(n));
      oracle::Frac both = 0;
      std::size_t total = 0, hits = 0;
      oracle::for_each_word({0, 2}, depth, [&](const std::vector<std::int64_t>& w) {
        ++total;
        bool in_m = false, in_n = false;
        for (const auto& p : pm) in_m = in_m || oracle::has_prefix(w, p);
        for (const auto& p : pn) in_n = in_n || oracle::has_prefix(w, p);
        if (in_m && in_n) ++hits;
      });
      both = oracle::Frac(hits, total);
      CHECK(pairwise_measure(m, n, kShift, kC).measure == both);
    }
}

TEST_CASE("bc_ratio") {
  for (std::int64_t N = 1; N <= 6; ++N) CHECK(bc_ratio(N, kLinear, kC) == Rational(N, N + 1));
  CHECK(bc_ratio(1, kLinear, kC) == Rational(1, 2));
  for (std::int64_t N = 1; N <= 6; ++N) {
    CHECK(bc_ratio(N, kDouble, kC) == bc_ratio_closed_form(N, kDouble, kC));
    CHECK(bc_ratio(N, kShift, kC) == bc_ratio_closed_form(N, kShift, kC));
    CHECK(bc_ratio(N, kDouble, kC) < 1);
  }
  CHECK(bc_ratio_closed_form(1000, kLinear, kC) == Rational(1000, 1001));
  for (const PsiSpec& psi : {kDouble, kShift, psi_cap(kHalf)}) {
    auto all = bc_ratio_closed_form_all(7, psi, kC);
    REQUIRE(all.size() == 7);
    for (std::int64_t N = 1; N <= 7; ++N) CHECK(all[N - 1] == bc_ratio(N, psi, kC));
  }
}

TEST_CASE("series_partial") {
  const DimensionFunction g1{GammaPower{1}}, g2{GammaPower{2}};
  SeriesResult a = series_partial(g1, kLinear, 10, kC);
  REQUIRE(a.exact_sum.has_value());
  CHECK(*a.exact_sum == 10);
  CHECK(a.verdict == "terms_not_decaying");
  SeriesResult b = series_partial(g1, kDouble, 10, kC);
  CHECK(*b.exact_sum == 1 - rational_pow(2, -10));
  CHECK(b.verdict == "terms_decaying");
  SeriesResult c = series_partial(g2, kLinear, 5, kC);
  for (std::int64_t n = 1; n <= 5; ++n) CHECK(*c.exact_terms[n - 1] == rational_pow(2, -n));
  SeriesResult d = series_partial(DimensionFunction{PlainPower{Rational(1, 2)}}, kLinear, 5, kC);
  CHECK_FALSE(d.exact_sum.has_value());
  CHECK(d.approx_sum > 0);
}

TEST_CASE("theta") {
  const DimensionFunction g1{GammaPower{1}}, g2{GammaPower{2}};
  PsiSpec t1 = theta(g1, kShift, kC, 12);
  for (std::int64_t n = 1; n <= 12; ++n) CHECK(t1.exponent(n) == kShift.exponent(n));
  PsiSpec t2 = theta(g2, kLinear, kC, 12);
  for (std::int64_t n = 1; n <= 12; ++n) CHECK(t2.exponent(n) == 2 * n);
  // k = 1/2: p^(-n/2) rounds up to p^(-floor(n/2))
  PsiSpec th = theta(DimensionFunction{GammaPower{Rational(1, 2)}}, kLinear, kC, 6);
  for (std::int64_t n = 1; n <= 6; ++n) CHECK(th.exponent(n) == n / 2);
  // theta(p^n) >= f(psi)^(1/gamma) > theta(p^n)/p for f = r^s
  const DimensionFunction s{PlainPower{Rational(1, 3)}};
  PsiSpec ts = theta(s, kLinear, kC, 8);
  for (std::int64_t n = 1; n <= 8; ++n) {
    const double logv = -static_cast<double>(n) / 3.0 * std::log(3.0) / std::log(2.0);
    CHECK(-ts.exponent(n) >= logv);
    CHECK(-ts.exponent(n) - 1 < logv);
  }
}

TEST_CASE("ceil_pow") {
  CHECK(ceil_pow(Rational(1, 5), 3) == -1);
  CHECK(ceil_pow(Rational(1, 9), 3) == -2);
  CHECK(ceil_pow(Rational(10), 3) == 3);
  CHECK(ceil_pow(rational_pow(3, -400), 3) == -400);
  CHECK(ceil_pow(rational_pow(3, -400) * 2, 3) == -399);
  CHECK(ceil_pow_decimal(Decimal("0.2"), 3) == -1);
  CHECK_THROWS_AS(ceil_pow_from_log(Decimal(-2) + Decimal("1e-12")), PreconditionError);
  CHECK_THROWS_AS(ceil_pow_decimal(Decimal(9), 3), PreconditionError);
  CHECK_THROWS_AS(ceil_pow(Rational(0), 3), PreconditionError);
}
