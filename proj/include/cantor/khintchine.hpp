#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cantor/mds.hpp"
#include "cantor/psi.hpp"

namespace cantor {

/// A_n* (or A_n) for one n: the balls B(g/X^n, psi(p^n)) as cylinders.
struct ApproxSetRecord {
  std::int64_t n = 0;
  std::int64_t psi_exponent = 0;  // psi(p^n) = p^-psi_exponent
  CylinderSet cylinders;
  Rational measure;   // by cylinder measure
  Rational formula;   // (#A)^(n - 1 - e(n))
  bool match = false;
};

/// Pointwise Psi(r) = min(1/r, psi(r)): exponent max(n, e(n)).
PsiSpec psi_cap(const PsiSpec& spec);

/// One depth-e(n) cylinder per g in F*(n) (F(n) when !starred), centred on
/// the expansion of g/X^n, in enumeration order and before any reduction.
std::vector<Cylinder> approximation_balls(std::int64_t n, const PsiSpec& spec, const MDSConfig& cfg,
                                          bool starred);

ApproxSetRecord build_Astar(std::int64_t n, const PsiSpec& spec, const MDSConfig& cfg);
/// Same construction over F(n); used for the W* ⊆ W containment check.
ApproxSetRecord build_A(std::int64_t n, const PsiSpec& spec, const MDSConfig& cfg);

/// #{g in F*(n) : ball(g) ⊆ B}, enumerated and checked against (#A)^(n-l-1).
BigInt ball_count_in(const Cylinder& B, std::int64_t n, const PsiSpec& spec, const MDSConfig& cfg);

/// mu(B ∩ A_n*) by cylinder intersection, checked against the closed form
/// r(B)^gamma (psi(p^n) p^n)^gamma p^-gamma.
Rational local_measure(const Cylinder& B, std::int64_t n, const PsiSpec& spec, const MDSConfig& cfg);
Rational local_measure_closed_form(const Cylinder& B, std::int64_t n, const PsiSpec& spec,
                                   const MDSConfig& cfg);

enum class PairRegime { empty, product };

struct PairwiseResult {
  Rational measure;
  PairRegime regime;
};

/// mu(A_m* ∩ A_n*) for m < n by explicit intersection; empty when
/// n <= e(m), otherwise mu(A_m*) mu(A_n*).
PairwiseResult pairwise_measure(std::int64_t m, std::int64_t n, const PsiSpec& spec, const MDSConfig& cfg);

/// (sum_k mu(A_k*))^2 / sum_{n,m} mu(A_n* ∩ A_m*) for k, n, m <= N.
Rational bc_ratio(std::int64_t N, const PsiSpec& spec, const MDSConfig& cfg);
/// Same quantity from the closed forms (measure formula + regime rule),
/// linear in N.
Rational bc_ratio_closed_form(std::int64_t N, const PsiSpec& spec, const MDSConfig& cfg);
/// The closed-form ratio for every N' = 1..N in one pass.
std::vector<Rational> bc_ratio_closed_form_all(std::int64_t N, const PsiSpec& spec, const MDSConfig& cfg);

struct SeriesResult {
  std::vector<std::optional<Rational>> exact_terms;
  std::vector<Decimal> approx_terms;
  std::optional<Rational> exact_sum;  // present when every term is exact
  Decimal approx_sum;
  /// "terms_decaying" or "terms_not_decaying"; a trend, not a proof.
  std::string verdict;
};

/// Partial sums of sum_n f(psi(p^n)) (p^n)^gamma for n = 1..N.
SeriesResult series_partial(const DimensionFunction& f, const PsiSpec& spec, std::int64_t N,
                            const MDSConfig& cfg);

/// theta(p^n) = ceil_p( f(psi(p^n))^(1/gamma) ), tabulated for n = 1..n_max.
PsiSpec theta(const DimensionFunction& f, const PsiSpec& spec, const MDSConfig& cfg, std::int64_t n_max);

}  // namespace cantor
