#include "cantor/laurent.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "cantor/error.hpp"

namespace cantor {

LaurentTrunc::LaurentTrunc(std::uint32_t p, std::int64_t start, std::vector<std::uint32_t> digits,
                           bool exact)
    : p_(p), start_(start), digits_(std::move(digits)), exact_(exact) {
  check_modulus(p);
  for (auto d : digits_) require(d < p, "digit " + std::to_string(d) + " out of range for p=" + std::to_string(p));
}

LaurentTrunc LaurentTrunc::exact_zero(std::uint32_t p, std::int64_t depth) {
  return LaurentTrunc(p, 1, std::vector<std::uint32_t>(static_cast<std::size_t>(std::max<std::int64_t>(depth, 0)), 0), true);
}

std::optional<std::uint32_t> LaurentTrunc::digit(std::int64_t n) const {
  if (n < start_) return 0u;
  if (n <= known_depth()) return digits_[static_cast<std::size_t>(n - start_)];
  if (exact_) return 0u;
  return std::nullopt;
}

std::optional<std::int64_t> LaurentTrunc::leading_index() const {
  for (std::size_t i = 0; i < digits_.size(); ++i)
    if (digits_[i] != 0) return start_ + static_cast<std::int64_t>(i);
  return std::nullopt;
}

RatFun LaurentTrunc::truncation() const {
  const std::int64_t depth = known_depth();
  const std::int64_t top = std::max<std::int64_t>(depth, 0);
  std::vector<std::int64_t> num(static_cast<std::size_t>(top - start_ + 1), 0);
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    std::int64_t n = start_ + static_cast<std::int64_t>(i);
    num[static_cast<std::size_t>(top - n)] = digits_[i];
  }
  return ratfun_make(Poly(std::move(num), p_), Poly::monomial(1, static_cast<std::size_t>(top), p_));
}

DigitStream::DigitStream(const RatFun& source)
    : source_(source), poly_part_(source.modulus()), remainder_(source.modulus()) {
  auto [q, r] = poly_divmod(source.num(), source.den());
  poly_part_ = std::move(q);
  remainder_ = std::move(r);
}

std::uint32_t DigitStream::next() {
  const Poly& den = source_.den();  // monic
  Poly shifted = remainder_.shifted(1);
  std::uint32_t d = shifted.coeff(static_cast<std::size_t>(den.deg()));
  if (d != 0) shifted = shifted - den.scaled(d);
  remainder_ = std::move(shifted);
  ++next_index_;
  return d;
}

std::vector<std::uint32_t> DigitStream::take(std::size_t k) {
  std::vector<std::uint32_t> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(next());
  return out;
}

std::pair<std::size_t, std::size_t> DigitStream::period() const {
  DigitStream fresh(source_);
  std::map<std::vector<std::int64_t>, std::size_t> seen;
  for (std::size_t step = 0;; ++step) {
    auto key = fresh.remainder_.to_vector();
    auto [it, inserted] = seen.emplace(std::move(key), step);
    if (!inserted) return {it->second, step - it->second};
    fresh.next();
  }
}

LaurentTrunc laurent_expand(const RatFun& x, std::int64_t depth) {
  require(depth >= 1, "laurent_expand: depth must be >= 1");
  const std::uint32_t p = x.modulus();
  DigitStream stream(x);
  const Poly& poly = stream.polynomial_part();
  std::int64_t start = poly.is_zero() ? 1 : -poly.deg();
  std::vector<std::uint32_t> digits;
  digits.reserve(static_cast<std::size_t>(depth - start + 1));
  for (std::int64_t n = start; n <= 0; ++n) digits.push_back(poly.coeff(static_cast<std::size_t>(-n)));
  for (std::int64_t n = 1; n <= depth; ++n) digits.push_back(stream.next());
  return LaurentTrunc(p, start, std::move(digits), stream.terminated());
}

LaurentAbs laurent_abs(const LaurentTrunc& x) {
  if (auto lead = x.leading_index()) return {LaurentAbs::Kind::exact, -*lead};
  if (x.exact()) return {LaurentAbs::Kind::zero, 0};
  return {LaurentAbs::Kind::upper_bound, -(x.known_depth() + 1)};
}

namespace {

constexpr std::int64_t kInfinite = std::numeric_limits<std::int64_t>::max() / 4;

std::int64_t effective_depth(const LaurentTrunc& x) { return x.exact() ? kInfinite : x.known_depth(); }

// Lower bound on the index of the first nonzero digit.
std::int64_t valuation_bound(const LaurentTrunc& x) {
  if (auto lead = x.leading_index()) return *lead;
  return x.exact() ? kInfinite : x.known_depth() + 1;
}

bool is_exact_zero(const LaurentTrunc& x) { return x.exact() && !x.leading_index(); }

LaurentTrunc add_like(const LaurentTrunc& a, const LaurentTrunc& b, bool subtract) {
  const std::uint32_t p = a.modulus();
  const bool exact = a.exact() && b.exact();
  const std::int64_t depth = exact ? std::max(a.known_depth(), b.known_depth())
                                   : std::min(effective_depth(a), effective_depth(b));
  const std::int64_t start = std::min(a.start(), b.start());
  std::vector<std::uint32_t> digits;
  for (std::int64_t n = start; n <= depth; ++n) {
    std::uint32_t x = *a.digit(n), y = *b.digit(n);
    digits.push_back(subtract ? mod_sub(x, y, p) : mod_add(x, y, p));
  }
  return LaurentTrunc(p, start, std::move(digits), exact);
}

LaurentTrunc multiply(const LaurentTrunc& a, const LaurentTrunc& b) {
  const std::uint32_t p = a.modulus();
  const std::int64_t start = a.start() + b.start();
  if (is_exact_zero(a) || is_exact_zero(b))
    return LaurentTrunc(p, 1, std::vector<std::uint32_t>(static_cast<std::size_t>(std::max<std::int64_t>(
                                    std::max(a.known_depth(), b.known_depth()), 0)), 0), true);
  const bool exact = a.exact() && b.exact();
  const std::int64_t depth =
      exact ? a.known_depth() + b.known_depth()
            : std::min(effective_depth(a) + valuation_bound(b), effective_depth(b) + valuation_bound(a));
  std::vector<std::uint32_t> digits;
  for (std::int64_t n = start; n <= depth; ++n) {
    std::uint64_t acc = 0;
    // Unknown digits on one side only ever meet known zeros on the other.
    const std::int64_t lo = std::max(a.start(), n - b.known_depth());
    const std::int64_t hi = std::min(a.known_depth(), n - b.start());
    for (std::int64_t i = lo; i <= hi; ++i) {
      auto x = a.digit(i), y = b.digit(n - i);
      if (x && y) acc += static_cast<std::uint64_t>(*x) * *y;
    }
    digits.push_back(static_cast<std::uint32_t>(acc % p));
  }
  return LaurentTrunc(p, start, std::move(digits), exact);
}

}  // namespace

LaurentTrunc laurent_inverse(const LaurentTrunc& a) {
  const std::uint32_t p = a.modulus();
  auto lead = a.leading_index();
  require(lead.has_value(), a.exact() ? "laurent_arith: inverse of exact zero"
                                      : "laurent_arith: inverse of an unknown-zero series");
  const std::int64_t v = *lead;
  if (a.exact()) {
    return laurent_expand(a.truncation().reciprocal(), std::max<std::int64_t>(a.known_depth(), 1));
  }
  const std::int64_t rel = a.known_depth() - v;  // relative digits known after the leading one
  const std::uint32_t c_inv = mod_inv(*a.digit(v), p);
  std::vector<std::uint32_t> w(static_cast<std::size_t>(rel + 1), 0);
  w[0] = c_inv;
  for (std::int64_t m = 1; m <= rel; ++m) {
    std::uint64_t acc = 0;
    for (std::int64_t k = 1; k <= m; ++k)
      acc += static_cast<std::uint64_t>(*a.digit(v + k)) * w[static_cast<std::size_t>(m - k)];
    w[static_cast<std::size_t>(m)] = mod_mul(mod_sub(0, static_cast<std::uint32_t>(acc % p), p), c_inv, p);
  }
  return LaurentTrunc(p, -v, std::move(w), false);
}

LaurentTrunc laurent_arith(const LaurentTrunc& a, const LaurentTrunc& b, LaurentOp op) {
  require(a.modulus() == b.modulus(), "laurent_arith: modulus mismatch");
  switch (op) {
    case LaurentOp::add: return add_like(a, b, false);
    case LaurentOp::sub: return add_like(a, b, true);
    case LaurentOp::mul: return multiply(a, b);
    case LaurentOp::inv: return laurent_inverse(a);
  }
  throw PreconditionError("laurent_arith: unknown op");
}

std::vector<std::uint32_t> check_alphabet(std::vector<std::uint32_t> alphabet, std::uint32_t p) {
  std::sort(alphabet.begin(), alphabet.end());
  require(std::adjacent_find(alphabet.begin(), alphabet.end()) == alphabet.end(),
          "alphabet contains repeated digits");
  for (auto d : alphabet) require(d < p, "alphabet digit " + std::to_string(d) + " not in F_" + std::to_string(p));
  require(alphabet.size() >= 2 && alphabet.size() < p,
          "alphabet size must satisfy 2 <= #A < p (got " + std::to_string(alphabet.size()) + ")");
  return alphabet;
}

namespace {
bool contains(std::span<const std::uint32_t> alphabet, std::uint32_t d) {
  return std::find(alphabet.begin(), alphabet.end(), d) != alphabet.end();
}
}  // namespace

MdsVerdict in_mds(const LaurentTrunc& x, std::span<const std::uint32_t> alphabet, std::int64_t depth) {
  check_alphabet({alphabet.begin(), alphabet.end()}, x.modulus());
  for (std::int64_t n = x.start(); n <= std::min<std::int64_t>(0, x.known_depth()); ++n)
    require(*x.digit(n) == 0, "in_mds: series is not in the unit ball");
  for (std::int64_t n = 1; n <= depth; ++n) {
    auto d = x.digit(n);
    if (!d) return {MdsVerdict::Kind::unknown, 0};
    if (!contains(alphabet, *d)) return {MdsVerdict::Kind::no, n};
  }
  return {MdsVerdict::Kind::yes, 0};
}

MdsVerdict in_mds(const DigitStream& x, std::span<const std::uint32_t> alphabet, std::int64_t depth) {
  check_alphabet({alphabet.begin(), alphabet.end()}, x.source().modulus());
  DigitStream fresh(x.source());
  require(fresh.polynomial_part().is_zero(), "in_mds: series is not in the unit ball");
  for (std::int64_t n = 1; n <= depth; ++n) {
    std::uint32_t d = fresh.next();
    if (!contains(alphabet, d)) return {MdsVerdict::Kind::no, n};
  }
  return {MdsVerdict::Kind::yes, 0};
}

namespace {

char digit_symbol(std::uint32_t d) {
  return d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + (d - 10));
}

std::uint32_t symbol_digit(char c) {
  if (c >= '0' && c <= '9') return static_cast<std::uint32_t>(c - '0');
  if (c >= 'a' && c <= 'z') return static_cast<std::uint32_t>(c - 'a' + 10);
  throw PreconditionError(std::string("digit file: bad symbol '") + c + "'");
}

}  // namespace

void write_digit_file(std::ostream& out, const LaurentTrunc& series,
                      std::span<const std::uint32_t> alphabet) {
  require(series.modulus() <= 36, "digit file: p > 36 has no single-symbol encoding");
  out << "p=" << series.modulus() << " alphabet=";
  for (std::size_t i = 0; i < alphabet.size(); ++i) out << (i ? "," : "") << alphabet[i];
  out << " start=" << series.start() << "\n";
  for (auto d : series.digits()) out << digit_symbol(d);
  out << "\n";
}

std::string digit_file_string(const LaurentTrunc& series, std::span<const std::uint32_t> alphabet) {
  std::ostringstream out;
  write_digit_file(out, series, alphabet);
  return out.str();
}

DigitFile read_digit_file(std::istream& in) {
  std::string header, body;
  require(static_cast<bool>(std::getline(in, header)), "digit file: missing header");
  std::getline(in, body);
  std::istringstream hs(header);
  std::string token;
  std::optional<std::uint32_t> p;
  std::optional<std::int64_t> start;
  std::vector<std::uint32_t> alphabet;
  bool have_alphabet = false;
  while (hs >> token) {
    auto eq = token.find('=');
    require(eq != std::string::npos, "digit file: malformed header field '" + token + "'");
    std::string key = token.substr(0, eq), value = token.substr(eq + 1);
    try {
      if (key == "p") {
        p = static_cast<std::uint32_t>(std::stoul(value));
      } else if (key == "start") {
        start = std::stoll(value);
      } else if (key == "alphabet") {
        have_alphabet = true;
        std::istringstream as(value);
        std::string item;
        while (std::getline(as, item, ',')) alphabet.push_back(static_cast<std::uint32_t>(std::stoul(item)));
      } else {
        throw PreconditionError("digit file: unknown header field '" + key + "'");
      }
    } catch (const std::logic_error& e) {
      if (dynamic_cast<const PreconditionError*>(&e)) throw;
      throw PreconditionError("digit file: bad value for '" + key + "'");
    }
  }
  require(p && start && have_alphabet, "digit file: header needs p=, alphabet= and start=");
  if (!body.empty() && body.back() == '\r') body.pop_back();
  std::vector<std::uint32_t> digits;
  digits.reserve(body.size());
  for (char c : body) digits.push_back(symbol_digit(c));
  LaurentTrunc series(*p, *start, std::move(digits), false);
  return {std::move(series), check_alphabet(std::move(alphabet), *p)};
}

}  // namespace cantor
