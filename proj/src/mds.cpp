#include "cantor/mds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <string>

#include "cantor/error.hpp"
#include "cantor/laurent.hpp"

namespace cantor {

MDSConfig::MDSConfig(std::uint32_t p, std::vector<std::uint32_t> alphabet,
                     std::optional<std::uint32_t> starred)
    : p_(p), alphabet_(check_alphabet(std::move(alphabet), p)) {
  check_modulus(p);
  if (starred) {
    starred_ = *starred;
  } else if (p == 3 && admits(2)) {
    starred_ = 2;
  } else {
    starred_ = alphabet_.back();
  }
  require(starred_ != 0 && admits(starred_),
          "starred digit must be a nonzero element of the alphabet (got " + std::to_string(starred_) + ")");
}

bool MDSConfig::admits(std::uint32_t digit) const {
  return std::binary_search(alphabet_.begin(), alphabet_.end(), digit);
}

double MDSConfig::gamma_approx() const {
  return std::log(static_cast<double>(alphabet_.size())) / std::log(static_cast<double>(p_));
}

bool Cylinder::contains(const Cylinder& other) const {
  return other.prefix.size() >= prefix.size() &&
         std::equal(prefix.begin(), prefix.end(), other.prefix.begin());
}

namespace {

void sort_and_drop_nested(std::vector<Cylinder>& cyls) {
  std::sort(cyls.begin(), cyls.end());
  std::vector<Cylinder> kept;
  kept.reserve(cyls.size());
  for (auto& c : cyls) {
    // In lexicographic order a containing cylinder is always the last one kept.
    if (!kept.empty() && kept.back().contains(c)) continue;
    kept.push_back(std::move(c));
  }
  cyls = std::move(kept);
}

bool merge_siblings(std::vector<Cylinder>& cyls, std::uint32_t p) {
  bool changed = false;
  std::vector<Cylinder> out;
  out.reserve(cyls.size());
  std::size_t i = 0;
  while (i < cyls.size()) {
    const Cylinder& c = cyls[i];
    std::size_t j = i + 1;
    if (c.depth() > 0) {
      while (j < cyls.size() && cyls[j].depth() == c.depth() &&
             std::equal(c.prefix.begin(), c.prefix.end() - 1, cyls[j].prefix.begin()))
        ++j;
    }
    if (c.depth() > 0 && j - i == p) {
      Cylinder parent{std::vector<std::uint8_t>(c.prefix.begin(), c.prefix.end() - 1)};
      out.push_back(std::move(parent));
      changed = true;
    } else {
      for (std::size_t k = i; k < j; ++k) out.push_back(std::move(cyls[k]));
    }
    i = j;
  }
  cyls = std::move(out);
  return changed;
}

void check_digits(const Cylinder& c, std::uint32_t p) {
  for (auto d : c.prefix) require(d < p, "cylinder digit " + std::to_string(d) + " outside F_" + std::to_string(p));
}

}  // namespace

CylinderSet CylinderSet::reduce(MDSConfig cfg, std::vector<Cylinder> cylinders) {
  for (const auto& c : cylinders) check_digits(c, cfg.p());
  sort_and_drop_nested(cylinders);
  while (merge_siblings(cylinders, cfg.p())) sort_and_drop_nested(cylinders);
  CylinderSet out(std::move(cfg));
  out.cylinders_ = std::move(cylinders);
  return out;
}

bool is_reduced(std::span<const Cylinder> cylinders, std::uint32_t p) {
  std::vector<Cylinder> copy(cylinders.begin(), cylinders.end());
  std::vector<Cylinder> canon = copy;
  sort_and_drop_nested(canon);
  while (merge_siblings(canon, p)) sort_and_drop_nested(canon);
  return canon == copy;
}

CylinderSet cyl_union(const CylinderSet& S, const CylinderSet& T) {
  require(S.config() == T.config(), "cyl_ops: configuration mismatch");
  std::vector<Cylinder> all(S.cylinders().begin(), S.cylinders().end());
  all.insert(all.end(), T.cylinders().begin(), T.cylinders().end());
  return CylinderSet::reduce(S.config(), std::move(all));
}

CylinderSet cyl_intersect(const CylinderSet& S, const CylinderSet& T) {
  require(S.config() == T.config(), "cyl_ops: configuration mismatch");
  auto tc = T.cylinders();
  std::vector<Cylinder> out;
  for (const Cylinder& s : S.cylinders()) {
    auto it = std::lower_bound(tc.begin(), tc.end(), s);
    // A member of T containing s sorts immediately before s (or equals it).
    if (it != tc.end() && *it == s) {
      out.push_back(s);
      continue;
    }
    if (it != tc.begin() && std::prev(it)->contains(s)) {
      out.push_back(s);
      continue;
    }
    for (; it != tc.end() && s.contains(*it); ++it) out.push_back(*it);
  }
  return CylinderSet::reduce(S.config(), std::move(out));
}

CylinderSet cyl_ops(const CylinderSet& S, const CylinderSet& T, CylOp op) {
  switch (op) {
    case CylOp::union_: return cyl_union(S, T);
    case CylOp::intersect: return cyl_intersect(S, T);
    case CylOp::reduce:
      require(S.config() == T.config(), "cyl_ops: configuration mismatch");
      return CylinderSet::reduce(S.config(), {S.cylinders().begin(), S.cylinders().end()});
  }
  throw PreconditionError("cyl_ops: unknown op");
}

Rational cyl_measure(std::span<const Cylinder> cylinders, const MDSConfig& cfg) {
  require(is_reduced(cylinders, cfg.p()), "cyl_measure: cylinder list is not reduced");
  std::map<std::size_t, BigInt> by_depth;
  for (const auto& c : cylinders) {
    check_digits(c, cfg.p());
    bool admissible = std::all_of(c.prefix.begin(), c.prefix.end(), [&](auto d) { return cfg.admits(d); });
    if (admissible) by_depth[c.depth()] += 1;
  }
  Rational total = 0;
  const auto a = static_cast<std::int64_t>(cfg.alphabet_size());
  for (const auto& [depth, count] : by_depth)
    total += Rational(count) * rational_pow(a, -static_cast<std::int64_t>(depth));
  return total;
}

Rational cyl_measure(const CylinderSet& S) { return cyl_measure(S.cylinders(), S.config()); }

BigInt prop1_refine(const Cylinder& B, std::size_t k, const MDSConfig& cfg) {
  require(k >= B.depth(), "prop1_refine: k must be >= depth(B)");
  check_digits(B, cfg.p());
  for (auto d : B.prefix)
    if (!cfg.admits(d)) return 0;  // B misses the set entirely
  const auto a = static_cast<std::int64_t>(cfg.alphabet_size());
  const Rational target = rational_pow(a, -static_cast<std::int64_t>(B.depth()));
  BigInt count = 1;
  for (std::size_t level = B.depth(); level < k; ++level) {
    // Every surviving cylinder splits the same way: p children, keep those
    // whose new digit is admissible.
    BigInt survivors_per_parent = 0;
    for (std::uint32_t digit = 0; digit < cfg.p(); ++digit)
      if (cfg.admits(digit)) survivors_per_parent += 1;
    count *= survivors_per_parent;
    const Rational mass = Rational(count) * rational_pow(a, -static_cast<std::int64_t>(level + 1));
    ensure(mass == target, "prop1_refine: refinement changed the measure at depth " + std::to_string(level + 1));
  }
  return count;
}

std::vector<Cylinder> prop1_cover(const Cylinder& B, std::size_t k, const MDSConfig& cfg) {
  require(k >= B.depth(), "prop1_cover: k must be >= depth(B)");
  check_digits(B, cfg.p());
  for (auto d : B.prefix)
    if (!cfg.admits(d)) return {};
  std::vector<Cylinder> frontier{B};
  for (std::size_t level = B.depth(); level < k; ++level) {
    std::vector<Cylinder> next;
    next.reserve(frontier.size() * cfg.alphabet_size());
    for (const auto& c : frontier) {
      for (std::uint32_t digit = 0; digit < cfg.p(); ++digit) {
        if (!cfg.admits(digit)) continue;
        Cylinder child = c;
        child.prefix.push_back(static_cast<std::uint8_t>(digit));
        next.push_back(std::move(child));
      }
    }
    frontier = std::move(next);
  }
  return frontier;
}

std::int64_t enumeration_limit() {
  if (const char* env = std::getenv("LD_MAX_DEPTH")) {
    try {
      std::int64_t v = std::stoll(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
    throw PreconditionError(std::string("LD_MAX_DEPTH must be a positive integer, got '") + env + "'");
  }
  return 24;
}

PolySet enum_F(std::int64_t N, const MDSConfig& cfg, bool starred) {
  require(N >= 1, "enum_F: N must be >= 1");
  const std::int64_t free_digits = starred ? N - 1 : N;
  const double bits = static_cast<double>(free_digits) * std::log2(static_cast<double>(cfg.alphabet_size()));
  require(bits <= static_cast<double>(enumeration_limit()),
          "enum_F: (#A)^" + std::to_string(free_digits) + " polynomials exceed the enumeration guard");
  const auto alphabet = cfg.alphabet();
  PolySet out;
  out.closed_form_count = boost::multiprecision::pow(BigInt(cfg.alphabet_size()), static_cast<unsigned>(free_digits));

  // Odometer over the free coefficients; coefficient 0 is pinned when starred.
  std::vector<std::size_t> idx(static_cast<std::size_t>(free_digits), 0);
  while (true) {
    std::vector<std::int64_t> coeffs(static_cast<std::size_t>(N), 0);
    std::size_t offset = starred ? 1 : 0;
    if (starred) coeffs[0] = cfg.starred();
    for (std::size_t i = 0; i < idx.size(); ++i) coeffs[i + offset] = alphabet[idx[i]];
    out.items.emplace_back(std::move(coeffs), cfg.p());
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == alphabet.size()) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }
  return out;
}

}  // namespace cantor
