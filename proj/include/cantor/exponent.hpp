#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cantor/cfrac.hpp"
#include "cantor/laurent.hpp"
#include "cantor/psi.hpp"

namespace cantor {

/// u_1 = v_1 = 1, v_{i+1} = u_{i+1} + 2 v_i, with u_{i+1} the integer
/// satisfying 1 < p^(u_{i+1} + 2 v_i) psi(p^(v_i)) <= p.
struct FoldingSchedule {
  std::vector<std::int64_t> u;
  std::vector<std::int64_t> v;
  PsiSpec source;
  std::uint32_t p = 3;
};

/// First `count` entries of the schedule for psi. Checks over the sampled
/// range that x^2 psi(x) is non-increasing and actually decreases.
FoldingSchedule schedule(const PsiSpec& spec, std::size_t count, std::uint32_t p = 3);

/// Stage n holds xi_n = P_n / X^(v_n) and its continued fraction
/// (2^n - 1 partial quotients).
struct ConstructionState {
  FoldingSchedule sched;
  std::vector<CFrac> stage_cf;
  std::vector<RatFun> stage_value;

  std::size_t stages() const { return stage_cf.size(); }
  const CFrac& final_cf() const { return stage_cf.back(); }
  const RatFun& final_value() const { return stage_value.back(); }
  /// Digits of the final stage, indices 1..v_n.
  LaurentTrunc digits() const;
};

/// Iterated folding with t = X^(u_{i+1}). Every stage is checked: the
/// denominator is X^(v_i), the value is -sum_k X^(-v_k), the digits lie in
/// {0, p-1}, and the earlier stage is a prefix of its continued fraction.
ConstructionState construct(const FoldingSchedule& sched, std::size_t stages);

struct StageCheck {
  std::size_t n = 0;
  std::int64_t error_exponent = 0;  // |xi_final - xi_n| = p^error_exponent
  std::string psi_log;              // log_p psi(p^(v_n)), exact or "~decimal"
  bool pass = false;
};

struct ConvergentCheck {
  std::size_t j = 0;
  std::int64_t deg_a = 0;  // deg a_{j+1}
  std::int64_t deg_Q = 0;
  /// deg a_{j+1} + 2 deg Q_j + log_p psi(p^(deg Q_j)); <= 1 gives
  /// |xi - P_j/Q_j| >= psi(|Q_j|)/p > c psi(|Q_j|).
  std::string excess;
  bool pass = false;
};

struct BlockCheck {
  std::size_t i = 0;  // j ranges over [2^(i-1), 2^i)
  std::int64_t max_deg = 0;
  std::int64_t bound = 0;  // u_{i+1}
  bool attained = false;
  bool pass = false;
};

struct WindowReport {
  Rational c;
  std::vector<StageCheck> stages;
  std::vector<ConvergentCheck> convergents;
  std::vector<BlockCheck> blocks;
  bool pass = false;
};

/// Checks xi_final is in K(psi) and outside K(c psi) as far as the final
/// stage can witness it. Needs 0 < c < 1/p and at least two stages.
WindowReport verify_window(const ConstructionState& state, const PsiSpec& spec, const Rational& c);

struct TauEstimate {
  std::vector<Rational> per_j;  // tau_j for j = 1..J
  std::size_t window_start = 1;
  Rational estimate;            // max of tau_j over j >= window_start
  Rational dirichlet_shortfall; // max(0, 2 - estimate)
};

/// tau_j = (deg a_{j+1} + 2 deg Q_j) / deg Q_j over the available
/// convergents. The estimate is the maximum over the second half of the
/// range so early convergents do not mask the tail.
TauEstimate estimate_tau(const CFrac& cf);

/// Digit p-1 at every index n! <= depth, zero elsewhere (unknown beyond).
LaurentTrunc liouville_element(std::int64_t depth, std::uint32_t p = 3);

/// u'_1 = 1, u'_{2n} = u_n, u'_{2n+1} = bits_n, closed with u'_{2L+2} = u_{L+1};
/// v' recomputed by the recursion.
FoldingSchedule perturb(const FoldingSchedule& sched, const std::vector<int>& bits);

}  // namespace cantor
