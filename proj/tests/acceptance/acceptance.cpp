// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance                 run every criterion
//   acceptance --criterion N   run only criterion N (exit 1 on failure)
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "cantor/cfrac.hpp"
#include "cantor/error.hpp"
#include "cantor/exponent.hpp"
#include "cantor/khintchine.hpp"
#include "oracles.hpp"

using namespace cantor;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few mismatches so a failing line says why.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_ << (failures_ > 1 ? "; " : "") << what;
  }
  void note(const std::string& s) { extra_ = s; }
  Outcome outcome() const {
    std::ostringstream os;
    os << checks_ << " checks";
    if (!extra_.empty()) os << ", " << extra_;
    if (failures_) os << ", " << failures_ << " failed: " << notes_.str();
    return {failures_ == 0, os.str()};
  }

 private:
  std::size_t checks_ = 0, failures_ = 0;
  std::ostringstream notes_;
  std::string extra_;
};

const MDSConfig kC = MDSConfig::cantor();
const std::vector<std::int64_t> kA{0, 2};

std::string frac(const Rational& r) { return to_fraction_string(r); }
Rational pow2(std::int64_t k) { return rational_pow(2, k); }

Cylinder cyl_of(const std::vector<std::int64_t>& w) { return Cylinder{{w.begin(), w.end()}}; }

std::string word(const std::vector<std::int64_t>& w) {
  std::string s = "[";
  for (auto d : w) s += static_cast<char>('0' + d);
  return s + "]";
}

// 1. #F(N) = 2^N, #F*(N) = 2^(N-1)
Outcome counting() {
  Tally t;
  for (std::int64_t N = 1; N <= 16; ++N) {
    for (bool starred : {false, true}) {
      PolySet s = enum_F(N, kC, starred);
      const std::size_t expect = std::size_t{1} << (starred ? N - 1 : N);
      std::set<std::vector<std::int64_t>> distinct;
      bool digits_ok = true;
      for (const Poly& g : s.items) {
        std::vector<std::int64_t> c = g.to_vector();
        if (!g.is_zero() && g.deg() >= N) digits_ok = false;
        for (auto x : c) digits_ok = digits_ok && (x == 0 || x == 2);
        if (starred) digits_ok = digits_ok && !c.empty() && c[0] == 2;
        distinct.insert(std::move(c));
      }
      t.check(s.items.size() == expect && distinct.size() == expect && s.closed_form_count == expect,
              (starred ? "#F*(" : "#F(") + std::to_string(N) + ") = " + std::to_string(s.items.size()));
      t.check(digits_ok, "F(" + std::to_string(N) + ") has a polynomial outside the digit family");
    }
  }
  return t.outcome();
}

// 2. cylinder measure (#A)^-l and cover refinement
Outcome prop1() {
  Tally t;
  for (std::size_t ell = 0; ell <= 12; ++ell)
    oracle::for_each_word(kA, ell, [&](const std::vector<std::int64_t>& w) {
      const Rational m = cyl_measure(CylinderSet::reduce(kC, {cyl_of(w)}));
      t.check(m == pow2(-static_cast<std::int64_t>(ell)), "depth " + std::to_string(ell) + " measure " + frac(m));
    });
  for (std::size_t l0 = 0; l0 <= 4; ++l0)
    oracle::for_each_word(kA, l0, [&](const std::vector<std::int64_t>& w) {
      const Cylinder B = cyl_of(w);
      for (std::size_t k = l0; k <= 12; ++k) {
        const BigInt survivors = prop1_refine(B, k, kC);
        t.check(survivors == BigInt(1) << (k - l0), "refine count at l0=" + std::to_string(l0) + ", k=" + std::to_string(k));
        std::vector<Cylinder> cover = prop1_cover(B, k, kC);
        bool inside = cover.size() == survivors;
        for (const auto& c : cover) inside = inside && c.depth() == k && B.contains(c);
        t.check(inside, "cover shape at l0=" + std::to_string(l0) + ", k=" + std::to_string(k));
        // summed measure of the survivors is the measure of B
        t.check(Rational(survivors) * pow2(-static_cast<std::int64_t>(k)) == pow2(-static_cast<std::int64_t>(l0)) &&
                    cyl_measure(CylinderSet::reduce(kC, cover)) == pow2(-static_cast<std::int64_t>(l0)),
                "measure not conserved at l0=" + std::to_string(l0) + ", k=" + std::to_string(k));
      }
    });
  return t.outcome();
}

const std::vector<std::pair<std::string, std::function<std::int64_t(std::int64_t)>>> kExponents{
    {"ceil:a=1,b=0", [](std::int64_t n) { return n; }},
    {"ceil:a=1,b=1", [](std::int64_t n) { return n + 1; }},
    {"ceil:a=2,b=0", [](std::int64_t n) { return 2 * n; }},
};

// 3. mu(A_n*) = 2^(n - 1 - e(n))
Outcome global_measure() {
  Tally t;
  for (const auto& [text, e] : kExponents) {
    const PsiSpec psi = parse_psi(text);
    for (std::int64_t n = 1; n <= 14; ++n) {
      ApproxSetRecord r = build_Astar(n, psi, kC);
      const Rational expect = pow2(n - 1 - e(n));
      t.check(r.psi_exponent == e(n) && r.measure == expect,
              text + " n=" + std::to_string(n) + ": " + frac(r.measure) + " vs " + frac(expect));
      // brute-force membership count over all admissible words of depth e(n)
      if (e(n) <= 14) {
        const auto pre = oracle::astar_prefixes(n, e(n), kA, 2);
        t.check(oracle::brute_measure(pre, kA, static_cast<std::size_t>(e(n))) == expect,
                text + " n=" + std::to_string(n) + ": brute-force measure differs");
      }
    }
  }
  return t.outcome();
}

// 4. local counts (#A)^(n-l-1) and local measures r(B)^gamma (#A)^(n-e-1)
Outcome local() {
  Tally t;
  for (const auto& [text, e] : kExponents) {
    const PsiSpec psi = parse_psi(text);
    for (std::int64_t n = 1; n <= 12; ++n) {
      const auto centers = oracle::astar_prefixes(n, e(n), kA, 2);
      for (std::size_t ell = 0; ell <= 3 && static_cast<std::int64_t>(ell) < n; ++ell)
        oracle::for_each_word({0, 1, 2}, ell, [&](const std::vector<std::int64_t>& w) {
          const Cylinder B = cyl_of(w);
          const bool admissible = std::all_of(w.begin(), w.end(), [](std::int64_t d) { return d != 1; });
          const std::string where = text + " n=" + std::to_string(n) + " B=" + word(w);
          std::int64_t inside = 0;
          for (const auto& c : centers) inside += oracle::has_prefix(c, w) ? 1 : 0;
          if (admissible) {
            const BigInt count = ball_count_in(B, n, psi, kC);
            t.check(count == inside && count == BigInt(1) << (n - static_cast<std::int64_t>(ell) - 1),
                    where + " count " + count.str());
          } else {
            t.check(inside == 0, where + " balls inside a non-admissible cylinder");
          }
          const Rational m = local_measure(B, n, psi, kC);
          const Rational expect = admissible ? pow2(-static_cast<std::int64_t>(ell)) * pow2(n - e(n) - 1) : Rational(0);
          t.check(m == expect, where + " measure " + frac(m) + " vs " + frac(expect));
        });
    }
  }
  return t.outcome();
}

// 5. mu(A_m* ∩ A_n*): empty for n <= e(m), product otherwise
Outcome quasi_independence() {
  Tally t;
  std::size_t empty = 0, product = 0;
  for (const auto& [text, e] : kExponents) {
    const PsiSpec psi = parse_psi(text);
    for (std::int64_t n = 2; n <= 12; ++n)
      for (std::int64_t m = 1; m < n; ++m) {
        PairwiseResult r = pairwise_measure(m, n, psi, kC);
        const bool disjoint = n <= e(m);
        const Rational expect = disjoint ? Rational(0) : pow2(m - 1 - e(m)) * pow2(n - 1 - e(n));
        const std::string where = text + " (" + std::to_string(m) + "," + std::to_string(n) + ")";
        t.check(r.measure == expect, where + " " + frac(r.measure) + " vs " + frac(expect));
        t.check(r.regime == (disjoint ? PairRegime::empty : PairRegime::product), where + " regime");
        (disjoint ? empty : product) += 1;
      }
  }
  t.check(empty > 0 && product > 0, "both regimes must occur");
  t.note(std::to_string(empty) + " empty and " + std::to_string(product) + " product pairs");
  return t.outcome();
}

// 6. Borel-Cantelli ratio N/(N+1) for e(k) = k
Outcome borel_cantelli() {
  Tally t;
  const PsiSpec psi = parse_psi("ceil:a=1,b=0");
  for (std::int64_t N = 1; N <= 10; ++N) {
    const Rational a = bc_ratio(N, psi, kC), b = bc_ratio_closed_form(N, psi, kC);
    t.check(a == Rational(N, N + 1) && a == b, "N=" + std::to_string(N) + ": " + frac(a) + " / " + frac(b));
  }
  const std::vector<Rational> all = bc_ratio_closed_form_all(10000, psi, kC);
  for (std::int64_t N = 1; N <= 10000; ++N) {
    const Rational& b = all[static_cast<std::size_t>(N - 1)];
    t.check(b == Rational(N, N + 1), "closed form N=" + std::to_string(N) + ": " + frac(b));
  }
  t.check(bc_ratio_closed_form(10000, psi, kC) == Rational(10000, 10001), "single closed-form call at N=10^4");
  return t.outcome();
}

RatFun random_ratfun(std::mt19937_64& rng, std::size_t max_deg) {
  const auto den = oracle::random_poly(rng, 3, max_deg);
  const auto num = oracle::random_poly(rng, 3, max_deg, false);
  return ratfun_make(Poly(num, 3), Poly(den, 3));
}

// 7. continued-fraction identities
Outcome cf_identities() {
  Tally t;
  std::mt19937_64 rng(20240607);
  for (int it = 0; it < 1000; ++it) {
    const RatFun x = random_ratfun(rng, 20);
    t.check(cf_eval(cf_rational(x)) == x, "round trip of " + x.to_string());
  }
  for (int it = 0; it < 1000; ++it) {
    // random canonical cf: a_i of degree >= 1
    CFrac cf{Poly(oracle::random_poly(rng, 3, 2, false), 3), {}};
    const std::size_t n = static_cast<std::size_t>(it % 8);
    for (std::size_t i = 0; i < n; ++i) {
      auto a = oracle::random_poly(rng, 3, 3);
      if (a.size() < 2) a = {1, 1};
      cf.quotients.emplace_back(a, 3);
    }
    auto tc = oracle::random_poly(rng, 3, 3);
    if (tc.size() < 2) tc = {0, 2};
    // h = Q_n from the recurrence, on plain coefficient vectors
    oracle::Coeffs q0{1}, q1{1};
    if (n > 0) q1 = cf.quotients[0].to_vector();
    for (std::size_t i = 1; i < n; ++i) {
      oracle::Coeffs next = oracle::add(oracle::mul(cf.quotients[i].to_vector(), q1, 3), q0, 3);
      q0 = q1;
      q1 = next;
    }
    const Poly h(q1, 3), tp(tc, 3);
    const RatFun lhs = cf_eval(fold(cf, tp));
    const RatFun rhs = cf_eval(cf) + RatFun(Poly::constant(n % 2 ? -1 : 1, 3)) / RatFun(tp * h * h);
    t.check(lhs == rhs, "folding identity, n=" + std::to_string(n));
  }
  std::size_t rows = 0;
  for (int it = 0; it < 100; ++it) {
    const RatFun x = random_ratfun(rng, 20);
    const CFrac cf = cf_rational(x);
    const ConvergentTable tab = convergents(cf);
    for (std::size_t j = 0; j < cf.size(); ++j) {
      const Magnitude direct = (x - ratfun_make(tab.rows[j].P, tab.rows[j].Q)).abs();
      const std::int64_t expect = -(cf.term(j + 1).deg() + 2 * tab.rows[j].Q.deg());
      t.check(!direct.zero && direct.exponent == expect && approx_error(x, cf, j) == direct,
              "error identity at j=" + std::to_string(j));
      ++rows;
    }
  }
  t.note(std::to_string(rows) + " convergents");
  return t.outcome();
}

bool digits_in_cantor(const RatFun& x) {
  DigitStream s(x);
  for (int i = 0; i < 100000 && !s.terminated(); ++i) {
    auto d = s.take(1);
    if (!d.empty() && d[0] != 0 && d[0] != 2) return false;
  }
  return s.terminated();
}

// 8. the construction for psi(x) = x^-3
Outcome construction() {
  Tally t;
  const PsiSpec psi = parse_psi("pow:tau=3");
  const FoldingSchedule s = schedule(psi, 5);
  t.check(s.u == std::vector<std::int64_t>{1, 2, 5, 14, 41}, "u schedule");
  t.check(s.v == std::vector<std::int64_t>{1, 4, 13, 40, 121}, "v schedule");
  const ConstructionState st = construct(s, 5);
  for (std::size_t k = 0; k < st.stages(); ++k) {
    t.check(digits_in_cantor(st.stage_value[k]), "stage " + std::to_string(k + 1) + " digits");
    t.check(st.stage_value[k].den() == Poly::monomial(1, static_cast<std::size_t>(s.v[k]), 3),
            "stage " + std::to_string(k + 1) + " denominator");
  }
  const std::vector<Rational> expect{4, Rational(13, 4), Rational(40, 13), Rational(121, 40)};
  Rational prev_gap = 100;
  std::ostringstream shown;
  for (std::size_t n = 2; n <= 5; ++n) {
    const Rational e = estimate_tau(st.stage_cf[n - 1]).estimate;
    shown << (n > 2 ? "," : "") << frac(e);
    t.check(e == expect[n - 2], "stage " + std::to_string(n) + " estimate " + frac(e));
    const Rational gap = e > 3 ? Rational(e - 3) : Rational(3 - e);
    t.check(gap < prev_gap, "|tau_j - 3| not decreasing at stage " + std::to_string(n));
    prev_gap = gap;
  }
  const WindowReport w = verify_window(st, psi, Rational(3, 10));
  t.check(w.pass, "verify_window at c = 3/10");
  t.note("estimates " + shown.str());
  return t.outcome();
}

// 9. prescribed exponents and the Liouville element
Outcome prescribed() {
  Tally t;
  std::ostringstream shown;
  for (const char* tau_text : {"5/2", "3", "4"}) {
    const Rational tau = parse_rational(tau_text);
    const PsiSpec psi = parse_psi(std::string("pow:tau=") + tau_text);
    std::size_t n = 1;
    FoldingSchedule s = schedule(psi, n);
    while (s.v.back() < 200) s = schedule(psi, ++n);
    const ConstructionState st = construct(s, n);
    const Rational e = estimate_tau(st.final_cf()).estimate;
    const Rational gap = e > tau ? Rational(e - tau) : Rational(tau - e);
    shown << "tau " << tau_text << ": v=" << s.v[n - 1] << " est " << frac(e) << "; ";
    t.check(gap <= Rational(1, 10), std::string("tau=") + tau_text + " estimate " + frac(e));
  }
  // through the 4! block: the quotient after the Q = X^24 convergent is
  // certified once the digits reach 2 * 5! - 2 * 4! = 192
  const CfExpansion lv = cf_laurent(liouville_element(192), 200);
  const Rational le = estimate_tau(lv.cf).estimate;
  shown << "liouville(192) est " << frac(le);
  t.check(le >= 6, "Liouville estimate " + frac(le) + " < 6");
  t.note(shown.str());
  return t.outcome();
}

// 10. perturbation bits change the digits
Outcome uncountability() {
  Tally t;
  std::mt19937_64 rng(77);
  const FoldingSchedule base = schedule(parse_psi("pow:tau=3"), 6);
  std::uniform_int_distribution<int> bit(1, 2), len(3, 4);
  for (int it = 0; it < 20; ++it) {
    std::vector<int> a(static_cast<std::size_t>(len(rng)));
    for (auto& b : a) b = bit(rng);
    std::vector<int> b = a;
    const std::size_t flip = std::uniform_int_distribution<std::size_t>(0, a.size() - 1)(rng);
    b[flip] = 3 - b[flip];
    const FoldingSchedule sa = perturb(base, a), sb = perturb(base, b);
    const LaurentTrunc da = construct(sa, sa.u.size()).digits(), db = construct(sb, sb.u.size()).digits();
    const std::int64_t bound = std::max(sa.v.back(), sb.v.back());
    bool differ = false;
    for (std::int64_t i = 1; i <= bound && !differ; ++i) differ = da.digit(i).value_or(0) != db.digit(i).value_or(0);
    t.check(differ, "pair " + std::to_string(it) + " gives identical digits");
    const MdsVerdict va = in_mds(da, std::vector<std::uint32_t>{0, 2}, da.known_depth());
    t.check(va.kind == MdsVerdict::Kind::yes, "pair " + std::to_string(it) + " leaves the Cantor set");
  }
  return t.outcome();
}

// 11. theta transform, ceil_3 and the tie guard
Outcome theta_transform() {
  Tally t;
  const PsiSpec th = theta(DimensionFunction{GammaPower{2}}, parse_psi("ceil:a=1,b=0"), kC, 20);
  const auto& ex = std::get<Tabulated>(th.form()).exponents;
  bool ok = ex.size() == 20;
  for (std::size_t i = 0; ok && i < ex.size(); ++i) ok = ex[i] == 2 * static_cast<std::int64_t>(i + 1);
  t.check(ok, "theta exponents are not 2n");
  t.check(ceil_pow(Rational(1, 5), 3) == -1, "ceil_3(1/5)");
  t.check(ceil_pow_decimal(Decimal("0.2"), 3) == -1, "ceil_3(0.2) from a decimal");
  bool guarded = false;
  try {
    ceil_pow_decimal(Decimal(9) * (1 + Decimal("1e-15")), 3);
  } catch (const PreconditionError&) {
    guarded = true;
  }
  t.check(guarded, "tie guard did not fire at 9 (1 + 1e-15)");
  guarded = false;
  try {
    ceil_pow_from_log(Decimal(-2) + Decimal("1e-12"));
  } catch (const PreconditionError&) {
    guarded = true;
  }
  t.check(guarded, "tie guard did not fire at log = -2 + 1e-12");
  return t.outcome();
}

struct Criterion {
  const char* name;
  double budget_s;  // 0: no limit
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {"counting #F(N), #F*(N), N <= 16", 10, counting},
    {"cylinder measure and cover refinement", 10, prop1},
    {"global measure of A_n*, n <= 14", 60, global_measure},
    {"local counts and measures, depth(B) <= 3, n <= 12", 60, local},
    {"quasi-independence, m < n <= 12", 60, quasi_independence},
    {"Borel-Cantelli ratio N/(N+1)", 0, borel_cantelli},
    {"continued-fraction identities", 30, cf_identities},
    {"construction for psi(x) = x^-3", 10, construction},
    {"prescribed exponents and Liouville element", 30, prescribed},
    {"uncountability perturbation", 10, uncountability},
    {"theta transform and tie guard", 0, theta_transform},
};

bool run_one(int index) {
  const Criterion& c = kCriteria[index - 1];
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (c.budget_s > 0 && secs > c.budget_s) {
    o.pass = false;
    o.detail += ", over the " + std::to_string(static_cast<int>(c.budget_s)) + " s budget";
  }
  std::printf("C%-2d %s  %s (%.2f s): %s\n", index, o.pass ? "PASS" : "FAIL", c.name, secs, o.detail.c_str());
  std::fflush(stdout);
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  constexpr int kCount = static_cast<int>(std::size(kCriteria));
  if (argc == 3 && std::string(argv[1]) == "--criterion") {
    const int n = std::atoi(argv[2]);
    if (n < 1 || n > kCount) {
      std::fprintf(stderr, "criterion must be 1..%d\n", kCount);
      return 2;
    }
    return run_one(n) ? 0 : 1;
  }
  if (argc != 1) {
    std::fprintf(stderr, "usage: acceptance [--criterion N]\n");
    return 2;
  }
  int failed = 0;
  for (int i = 1; i <= kCount; ++i) failed += run_one(i) ? 0 : 1;
  std::printf("%d/%d criteria passed\n", kCount - failed, kCount);
  return failed == 0 ? 0 : 1;
}
