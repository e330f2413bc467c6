#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cantor/poly.hpp"
#include "cantor/rational.hpp"

namespace cantor {

/// Missing-digit set MDS(A) inside the unit ball of F_p((X^-1)).
/// gamma_A = log #A / log p is kept as the integer pair (#A, p).
class MDSConfig {
 public:
  /// `starred` is the pinned constant coefficient of F*(N); defaults to 2
  /// for the Cantor set and to max(A) otherwise.
  MDSConfig(std::uint32_t p, std::vector<std::uint32_t> alphabet,
            std::optional<std::uint32_t> starred = std::nullopt);

  static MDSConfig cantor() { return MDSConfig(3, {0, 2}); }

  std::uint32_t p() const { return p_; }
  std::span<const std::uint32_t> alphabet() const { return alphabet_; }
  std::uint32_t alphabet_size() const { return static_cast<std::uint32_t>(alphabet_.size()); }
  std::uint32_t starred() const { return starred_; }
  bool admits(std::uint32_t digit) const;

  std::pair<std::uint32_t, std::uint32_t> gamma_pair() const { return {alphabet_size(), p_}; }
  double gamma_approx() const;

  bool operator==(const MDSConfig&) const = default;

 private:
  std::uint32_t p_;
  std::vector<std::uint32_t> alphabet_;
  std::uint32_t starred_;
};

/// B[a_-1, ..., a_-l]: every series whose first l digits are the prefix.
/// Radius p^-l; the empty prefix is the unit ball.
struct Cylinder {
  std::vector<std::uint8_t> prefix;

  std::size_t depth() const { return prefix.size(); }
  bool contains(const Cylinder& other) const;  // other is a sub-cylinder
  auto operator<=>(const Cylinder&) const = default;
};

/// Finite union of cylinders in canonical form: maximal cylinders only,
/// sorted, no cylinder inside another and no complete family of p siblings.
class CylinderSet {
 public:
  explicit CylinderSet(MDSConfig cfg) : cfg_(std::move(cfg)) {}

  static CylinderSet reduce(MDSConfig cfg, std::vector<Cylinder> cylinders);

  const MDSConfig& config() const { return cfg_; }
  std::span<const Cylinder> cylinders() const { return cylinders_; }
  std::size_t size() const { return cylinders_.size(); }
  bool empty() const { return cylinders_.empty(); }

  bool operator==(const CylinderSet&) const = default;

 private:
  MDSConfig cfg_;
  std::vector<Cylinder> cylinders_;
};

bool is_reduced(std::span<const Cylinder> cylinders, std::uint32_t p);

enum class CylOp { union_, intersect, reduce };

CylinderSet cyl_ops(const CylinderSet& S, const CylinderSet& T, CylOp op);
CylinderSet cyl_union(const CylinderSet& S, const CylinderSet& T);
CylinderSet cyl_intersect(const CylinderSet& S, const CylinderSet& T);

/// H^gamma(S ∩ MDS(A)): each cylinder whose digits all lie in A counts
/// (#A)^-depth, the others count zero.
Rational cyl_measure(const CylinderSet& S);
/// Same, for a raw list; PreconditionError unless it is already reduced.
Rational cyl_measure(std::span<const Cylinder> cylinders, const MDSConfig& cfg);

/// Split B one digit at a time down to depth k, discarding children whose
/// new digit is outside A. Returns the number of depth-k survivors after
/// checking that count * (#A)^-k equals (#A)^-depth(B).
BigInt prop1_refine(const Cylinder& B, std::size_t k, const MDSConfig& cfg);
/// The explicit depth-k cover produced by the same refinement.
std::vector<Cylinder> prop1_cover(const Cylinder& B, std::size_t k, const MDSConfig& cfg);

/// F(N) (or F*(N) when starred): polynomials of degree < N with
/// coefficients in A (and constant term pinned to cfg.starred()).
struct PolySet {
  std::vector<Poly> items;
  BigInt closed_form_count;
};

PolySet enum_F(std::int64_t N, const MDSConfig& cfg, bool starred);

/// Enumeration size guard, in free digits; LD_MAX_DEPTH overrides the
/// default of 24.
std::int64_t enumeration_limit();

}  // namespace cantor
