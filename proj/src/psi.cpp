#include "cantor/psi.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "cantor/error.hpp"

namespace cantor {

namespace mp = boost::multiprecision;

bool PsiSpec::is_step() const {
  return std::holds_alternative<AffineCeil>(form_) || std::holds_alternative<Tabulated>(form_);
}

std::int64_t PsiSpec::exponent(std::int64_t n) const {
  require(n >= 1, "psi exponent requested at n < 1");
  std::int64_t e = 0;
  if (const auto* aff = std::get_if<AffineCeil>(&form_)) {
    e = static_cast<std::int64_t>(ceil_of(aff->a * n + aff->b));
  } else if (const auto* tab = std::get_if<Tabulated>(&form_)) {
    require(static_cast<std::size_t>(n) <= tab->exponents.size(),
            "tabulated psi has no value at n = " + std::to_string(n));
    e = tab->exponents[static_cast<std::size_t>(n - 1)];
  } else {
    throw PreconditionError("psi '" + to_string() + "' is not a power-of-p step function");
  }
  return capped_ ? std::max(n, e) : e;
}

std::optional<Rational> PsiSpec::exact_log(std::int64_t v) const {
  if (is_step()) return Rational(-exponent(v));
  if (const auto* pw = std::get_if<PowerLaw>(&form_)) {
    Rational l = -pw->tau * v;
    if (capped_) l = std::min(l, Rational(-v));
    return l;
  }
  return std::nullopt;
}

Decimal PsiSpec::approx_log(std::int64_t v, std::uint32_t p) const {
  if (auto exact = exact_log(v)) return to_decimal(*exact);
  // psi(p^v) = (p^v * v ln p)^-2  =>  log_p psi = -2 (v + log_p(v ln p))
  const Decimal lnp = mp::log(Decimal(p));
  Decimal l = Decimal(-2) * (Decimal(v) + mp::log(Decimal(v) * lnp) / lnp);
  if (capped_) l = mp::min(l, Decimal(-v));
  return l;
}

std::string PsiSpec::to_string() const {
  std::string s;
  if (const auto* aff = std::get_if<AffineCeil>(&form_)) {
    s = "ceil:a=" + to_fraction_string(aff->a) + ",b=" + to_fraction_string(aff->b);
  } else if (const auto* tab = std::get_if<Tabulated>(&form_)) {
    s = "table:";
    for (std::size_t i = 0; i < tab->exponents.size(); ++i)
      s += (i ? "," : "") + std::to_string(tab->exponents[i]);
  } else if (const auto* pw = std::get_if<PowerLaw>(&form_)) {
    s = "pow:tau=" + to_fraction_string(pw->tau);
  } else {
    s = "logcorr";
  }
  return capped_ ? "cap(" + s + ")" : s;
}

namespace {

std::map<std::string, std::string> parse_fields(const std::string& body, const std::string& whole) {
  std::map<std::string, std::string> fields;
  std::istringstream in(body);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    require(eq != std::string::npos, "malformed field '" + item + "' in '" + whole + "'");
    fields[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return fields;
}

Rational field(const std::map<std::string, std::string>& f, const std::string& key,
               const std::string& whole, std::optional<Rational> fallback = std::nullopt) {
  auto it = f.find(key);
  if (it == f.end()) {
    require(fallback.has_value(), "missing '" + key + "=' in '" + whole + "'");
    return *fallback;
  }
  return parse_rational(it->second);
}

void only_keys(const std::map<std::string, std::string>& f, std::initializer_list<const char*> keys,
               const std::string& whole) {
  for (const auto& [k, _] : f) {
    bool known = false;
    for (const char* allowed : keys) known = known || k == allowed;
    require(known, "unknown field '" + k + "' in '" + whole + "'");
  }
}

}  // namespace

PsiSpec parse_psi(const std::string& text) {
  auto colon = text.find(':');
  std::string kind = text.substr(0, colon);
  std::string body = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "ceil") {
    auto f = parse_fields(body, text);
    only_keys(f, {"a", "b"}, text);
    return PsiSpec(AffineCeil{field(f, "a", text), field(f, "b", text, Rational(0))});
  }
  if (kind == "pow") {
    auto f = parse_fields(body, text);
    only_keys(f, {"tau"}, text);
    return PsiSpec(PowerLaw{field(f, "tau", text)});
  }
  if (kind == "logcorr") {
    require(body.empty(), "logcorr takes no parameters");
    return PsiSpec(LogCorrected{});
  }
  if (kind == "table") {
    Tabulated t;
    std::istringstream in(body);
    std::string item;
    while (std::getline(in, item, ',')) t.exponents.push_back(std::stoll(item));
    require(!t.exponents.empty(), "table psi needs at least one exponent");
    return PsiSpec(t);
  }
  throw PreconditionError("unknown psi kind in '" + text + "' (expected ceil:, pow:, logcorr or table:)");
}

std::string DimensionFunction::to_string() const {
  if (const auto* g = std::get_if<GammaPower>(&form)) return "gamma:k=" + to_fraction_string(g->k);
  if (const auto* s = std::get_if<PlainPower>(&form)) return "pow:s=" + to_fraction_string(s->s);
  const auto& l = std::get<LogPower>(form);
  return "logcorr:k=" + to_fraction_string(l.k) + ",beta=" + to_fraction_string(l.beta);
}

DimensionFunction parse_dimension(const std::string& text) {
  auto colon = text.find(':');
  require(colon != std::string::npos, "dimension function must look like kind:fields, got '" + text + "'");
  std::string kind = text.substr(0, colon);
  auto f = parse_fields(text.substr(colon + 1), text);
  if (kind == "gamma") {
    only_keys(f, {"k"}, text);
    Rational k = field(f, "k", text);
    require(k > 0, "dimension function exponent must be positive");
    return {GammaPower{k}};
  }
  if (kind == "pow") {
    only_keys(f, {"s"}, text);
    Rational s = field(f, "s", text);
    require(s > 0, "dimension function exponent must be positive");
    return {PlainPower{s}};
  }
  if (kind == "logcorr") {
    only_keys(f, {"k", "beta"}, text);
    Rational k = field(f, "k", text);
    require(k > 0, "dimension function exponent must be positive");
    return {LogPower{k, field(f, "beta", text, Rational(0))}};
  }
  throw PreconditionError("unknown dimension function kind in '" + text + "'");
}

std::int64_t ceil_pow(const Rational& value, std::uint32_t p) {
  require(value > 0, "ceil_pow: value must be positive");
  // Start from a bit-length estimate and walk to the exact answer.
  const auto log2 = static_cast<double>(mp::msb(mp::numerator(value))) -
                    static_cast<double>(mp::msb(mp::denominator(value)));
  std::int64_t r = static_cast<std::int64_t>(std::floor(log2 / std::log2(static_cast<double>(p))));
  while (rational_pow(p, r) < value) ++r;
  while (rational_pow(p, r - 1) >= value) --r;
  return r;
}

std::int64_t ceil_pow_from_log(const Decimal& log_value, double guard) {
  const Decimal nearest = mp::round(log_value);
  require(mp::abs(log_value - nearest) >= Decimal(guard),
          "rounding to a power is ambiguous: log value lies within the guard band of an integer");
  return static_cast<std::int64_t>(mp::ceil(log_value));
}

std::int64_t ceil_pow_decimal(const Decimal& value, std::uint32_t p, double guard) {
  require(value > 0, "ceil_pow: value must be positive");
  return ceil_pow_from_log(mp::log(value) / mp::log(Decimal(p)), guard);
}

}  // namespace cantor
