#include "cantor/commands.hpp"

#include <fstream>
#include <sstream>

#include "cantor/error.hpp"
#include "cantor/exponent.hpp"
#include "cantor/khintchine.hpp"

namespace cantor::cli {

namespace {

const char* status_name(CfStatus s) {
  switch (s) {
    case CfStatus::complete: return "complete";
    case CfStatus::precision_exhausted: return "precision_exhausted";
    case CfStatus::term_limit: return "term_limit";
  }
  return "unknown";
}

MDSConfig config_of(const CommandSpec& spec) { return MDSConfig(spec.p, spec.alphabet, spec.starred); }

std::optional<PsiSpec> psi_of(const CommandSpec& spec) {
  if (spec.psi && spec.tau) throw UsageError("--psi and --tau are alternatives; give one");
  std::optional<PsiSpec> out;
  if (spec.psi) out = parse_psi(*spec.psi);
  if (spec.tau) out = parse_psi("pow:tau=" + *spec.tau);
  if (out && spec.cap) out = psi_cap(*out);
  if (!out && spec.cap) throw UsageError("--cap needs --psi");
  return out;
}

PsiSpec need_psi(const CommandSpec& spec) {
  auto psi = psi_of(spec);
  if (!psi) throw UsageError(spec.subcommand + " needs --psi (or --tau)");
  return *psi;
}

Cylinder parse_prefix(const std::string& text, std::uint32_t p) {
  Cylinder c;
  for (char ch : text) {
    int d = ch >= '0' && ch <= '9' ? ch - '0' : (ch >= 'a' && ch <= 'z' ? ch - 'a' + 10 : -1);
    require(d >= 0 && static_cast<std::uint32_t>(d) < p,
            "cylinder prefix '" + text + "' has a symbol outside F_" + std::to_string(p));
    c.prefix.push_back(static_cast<std::uint8_t>(d));
  }
  return c;
}

CylinderSet parse_set(const std::vector<std::string>& items, const MDSConfig& cfg) {
  if (items.size() == 1 && !items[0].empty() && items[0].front() == '{') return cylinder_set_from_json(Json::parse(items[0]));
  std::vector<Cylinder> cyl;
  for (const auto& s : items) cyl.push_back(parse_prefix(s == "-" ? "" : s, cfg.p()));
  return CylinderSet::reduce(cfg, std::move(cyl));
}

DigitFile load_digits(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open digit file '" + path + "'");
  return read_digit_file(in);
}

Json approx(const Decimal& d) { return std::stod(d.str(17, std::ios_base::scientific)); }

Json tau_json(const TauEstimate& t) {
  Json per = Json::array();
  for (const auto& r : t.per_j) per.push_back(to_fraction_string(r));
  return Json{{"estimate", to_fraction_string(t.estimate)},
              {"approx", to_double(t.estimate)},
              {"window_start", t.window_start},
              {"per_j", std::move(per)},
              {"dirichlet_shortfall", to_fraction_string(t.dirichlet_shortfall)}};
}

void cmd_cf(const CommandSpec& spec, ReportDocument& doc) {
  if (spec.x.has_value() == spec.digits_in.has_value()) throw UsageError("cf needs exactly one of --x and --digits");
  Json rec{{"kind", "cf"}};
  if (spec.x) {
    const RatFun x = parse_ratfun(*spec.x, spec.p);
    const CFrac cf = cf_rational(x);
    Json errors = Json::array();
    for (std::size_t j = 0; j + 1 <= cf.size(); ++j)
      errors.push_back(Json{{"j", j}, {"exponent", approx_error(x, cf, j).exponent}});
    rec["input"] = x.to_string();
    rec["cf"] = to_json(cf);
    rec["status"] = "complete";
    rec["convergents"] = to_json(convergents(cf));
    rec["errors"] = std::move(errors);
  } else {
    const DigitFile file = load_digits(*spec.digits_in);
    const CfExpansion ex = cf_laurent(file.series, spec.max_terms);
    rec["input"] = *spec.digits_in;
    rec["known_depth"] = file.series.known_depth();
    rec["cf"] = to_json(ex.cf);
    rec["status"] = status_name(ex.status);
    rec["convergents"] = to_json(convergents(ex.cf));
  }
  doc.records.push_back(std::move(rec));
}

void cmd_fold(const CommandSpec& spec, ReportDocument& doc) {
  if (!spec.x || !spec.t) throw UsageError("fold needs --x and --t");
  const RatFun x = parse_ratfun(*spec.x, spec.p);
  const Poly t = parse_poly(*spec.t, spec.p);
  const CFrac cf = cf_rational(x);
  require(cf.size() >= 1, "fold: x must have at least one partial quotient beyond a0");
  const CFrac folded = fold(cf, t);
  const ConvergentTable table = convergents(cf);
  const Poly& h = table.raw_Q.back();
  RatFun extra = RatFun(Poly::constant(cf.size() % 2 ? -1 : 1, spec.p)) / RatFun(t * h * h);
  const RatFun lhs = cf_eval(folded);
  const RatFun rhs = x + extra;
  ensure(lhs == rhs, "fold: value identity fails");
  doc.records.push_back(Json{{"kind", "fold"},
                             {"cf", to_json(cf)},
                             {"t", to_json(t)},
                             {"folded", to_json(folded)},
                             {"value", lhs.to_string()},
                             {"identity", true}});
}

void cmd_measure(const CommandSpec& spec, ReportDocument& doc) {
  if (spec.cylinders.empty()) throw UsageError("measure needs --cylinders");
  if (spec.op.has_value() != !spec.other.empty()) throw UsageError("--op and --with go together");
  const MDSConfig cfg = config_of(spec);
  const CylinderSet S = parse_set(spec.cylinders, cfg);
  doc.records.push_back(Json{{"kind", "set"}, {"set", to_json(S)}, {"measure", to_fraction_string(cyl_measure(S))}});
  if (spec.op) {
    const CylinderSet T = parse_set(spec.other, S.config());
    CylOp op;
    if (*spec.op == "union") op = CylOp::union_;
    else if (*spec.op == "intersect") op = CylOp::intersect;
    else throw UsageError("--op must be union or intersect");
    const CylinderSet R = cyl_ops(S, T, op);
    doc.records.push_back(Json{{"kind", "set"}, {"set", to_json(T)}, {"measure", to_fraction_string(cyl_measure(T))}});
    doc.records.push_back(Json{{"kind", *spec.op}, {"set", to_json(R)}, {"measure", to_fraction_string(cyl_measure(R))}});
  }
}

void cmd_khintchine(const CommandSpec& spec, ReportDocument& doc) {
  const PsiSpec psi = need_psi(spec);
  if (spec.nmax < 1) throw UsageError("--nmax must be >= 1");
  const MDSConfig cfg = config_of(spec);
  const DimensionFunction f = spec.f ? parse_dimension(*spec.f) : DimensionFunction{GammaPower{1}};
  doc.metadata["psi"] = psi.to_string();
  doc.metadata["f"] = f.to_string();

  for (std::int64_t n = 1; n <= spec.nmax; ++n) {
    const ApproxSetRecord r = build_Astar(n, psi, cfg);
    doc.records.push_back(Json{{"kind", "approx_set"},
                               {"n", n},
                               {"psi_exponent", r.psi_exponent},
                               {"cylinders", r.cylinders.size()},
                               {"measure", to_fraction_string(r.measure)},
                               {"formula", to_fraction_string(r.formula)},
                               {"match", r.match}});
  }
  for (std::int64_t m = 1; m <= spec.nmax; ++m)
    for (std::int64_t n = m + 1; n <= spec.nmax; ++n) {
      const PairwiseResult pr = pairwise_measure(m, n, psi, cfg);
      doc.records.push_back(Json{{"kind", "pairwise"},
                                 {"m", m},
                                 {"n", n},
                                 {"measure", to_fraction_string(pr.measure)},
                                 {"regime", pr.regime == PairRegime::empty ? "empty" : "product"}});
    }
  for (std::int64_t N = 1; N <= spec.nmax; ++N) {
    const Rational enumerated = bc_ratio(N, psi, cfg);
    const Rational closed = bc_ratio_closed_form(N, psi, cfg);
    ensure(enumerated == closed, "bc_ratio: enumeration and closed form disagree at N = " + std::to_string(N));
    doc.records.push_back(Json{{"kind", "bc_ratio"},
                               {"N", N},
                               {"value", to_fraction_string(enumerated)},
                               {"approx", to_double(enumerated)},
                               {"path", "enumeration"}});
  }
  if (spec.bc_max) {
    const Rational closed = bc_ratio_closed_form(*spec.bc_max, psi, cfg);
    doc.records.push_back(Json{{"kind", "bc_ratio"},
                               {"N", *spec.bc_max},
                               {"value", to_fraction_string(closed)},
                               {"approx", to_double(closed)},
                               {"path", "closed_form"}});
  }
  const SeriesResult s = series_partial(f, psi, spec.nmax, cfg);
  Decimal partial = 0;
  Rational exact_partial = 0;
  for (std::size_t i = 0; i < s.approx_terms.size(); ++i) {
    partial += s.approx_terms[i];
    Json rec{{"kind", "series"}, {"N", i + 1}};
    if (s.exact_terms[i]) {
      exact_partial += *s.exact_terms[i];
      rec["term"] = to_fraction_string(*s.exact_terms[i]);
      if (s.exact_sum) rec["partial_sum"] = to_fraction_string(exact_partial);
    }
    rec["approx"] = approx(partial);
    doc.records.push_back(std::move(rec));
  }
  doc.records.push_back(Json{{"kind", "series_verdict"}, {"verdict", s.verdict}});
}

void cmd_construct(const CommandSpec& spec, ReportDocument& doc) {
  const PsiSpec psi = need_psi(spec);
  if (spec.stages < 1) throw UsageError("--stages must be >= 1");
  const Rational c = parse_rational(spec.c);
  // One extra schedule entry gives the block bound for the last stage.
  const FoldingSchedule sched = schedule(psi, spec.stages + 1, spec.p);
  const ConstructionState st = construct(sched, spec.stages);
  doc.metadata["psi"] = psi.to_string();

  const std::vector<std::int64_t> u(sched.u.begin(), sched.u.begin() + static_cast<std::ptrdiff_t>(spec.stages));
  const std::vector<std::int64_t> v(sched.v.begin(), sched.v.begin() + static_cast<std::ptrdiff_t>(spec.stages));
  doc.records.push_back(Json{{"kind", "schedule"}, {"u", u}, {"v", v}});

  for (std::size_t n = 1; n <= st.stages(); ++n) {
    Json rec{{"kind", "stage"}, {"n", n}, {"v", sched.v[n - 1]}, {"quotients", st.stage_cf[n - 1].size()}};
    if (n < st.stages()) rec["error_exponent"] = (st.final_value() - st.stage_value[n - 1]).abs().exponent;
    if (st.stage_cf[n - 1].size() >= 2) {
      const TauEstimate t = estimate_tau(st.stage_cf[n - 1]);
      rec["tau_estimate"] = to_fraction_string(t.estimate);
      rec["approx"] = to_double(t.estimate);
    }
    doc.records.push_back(std::move(rec));
  }

  if (st.stages() >= 2) {
    const WindowReport w = verify_window(st, psi, c);
    Json stages = Json::array();
    for (const auto& s : w.stages)
      stages.push_back(Json{{"n", s.n}, {"error_exponent", s.error_exponent}, {"psi_log", s.psi_log}, {"pass", s.pass}});
    Json blocks = Json::array();
    for (const auto& b : w.blocks)
      blocks.push_back(Json{{"i", b.i}, {"max_deg", b.max_deg}, {"bound", b.bound}, {"attained", b.attained}, {"pass", b.pass}});
    Json failures = Json::array();
    for (const auto& cc : w.convergents)
      if (!cc.pass) failures.push_back(Json{{"j", cc.j}, {"excess", cc.excess}});
    doc.records.push_back(Json{{"kind", "verify_window"},
                               {"c", to_fraction_string(c)},
                               {"pass", w.pass},
                               {"stages", std::move(stages)},
                               {"convergents_checked", w.convergents.size()},
                               {"convergent_failures", std::move(failures)},
                               {"blocks", std::move(blocks)}});
  }

  const std::vector<std::uint32_t> alphabet{0, spec.p - 1};
  doc.digits = digit_file_string(st.digits(), alphabet);
  if (spec.emit_path) {
    std::ofstream out(*spec.emit_path, std::ios::binary);
    require(out.good(), "cannot write digit file '" + *spec.emit_path + "'");
    out << *doc.digits;
  }
}

void cmd_exponent(const CommandSpec& spec, ReportDocument& doc) {
  const auto psi = psi_of(spec);
  const int modes = int(psi.has_value()) + int(spec.liouville.has_value()) + int(spec.x.has_value()) +
                    int(spec.digits_in.has_value());
  if (modes != 1) throw UsageError("exponent needs exactly one of --psi/--tau, --liouville, --x, --digits");
  if (psi) {
    const FoldingSchedule s = schedule(*psi, spec.count, spec.p);
    doc.metadata["psi"] = psi->to_string();
    doc.records.push_back(Json{{"kind", "schedule"}, {"u", s.u}, {"v", s.v}});
    return;
  }
  CfExpansion ex{CFrac{Poly(spec.p), {}}, CfStatus::complete};
  Json rec{{"kind", "tau"}};
  if (spec.liouville) {
    LaurentTrunc el = liouville_element(*spec.liouville, spec.p);
    ex = cf_laurent(el, spec.max_terms);
    rec["source"] = "liouville";
    rec["depth"] = *spec.liouville;
  } else if (spec.x) {
    ex = {cf_rational(parse_ratfun(*spec.x, spec.p)), CfStatus::complete};
    rec["source"] = *spec.x;
  } else {
    const DigitFile file = load_digits(*spec.digits_in);
    ex = cf_laurent(file.series, spec.max_terms);
    rec["source"] = *spec.digits_in;
  }
  Json degrees = Json::array();
  for (const auto& a : ex.cf.quotients) degrees.push_back(a.deg());
  rec["quotient_degrees"] = std::move(degrees);
  rec["status"] = status_name(ex.status);
  rec["tau"] = tau_json(estimate_tau(ex.cf));
  doc.records.push_back(std::move(rec));
}

void cmd_dim(const CommandSpec& spec, ReportDocument& doc) {
  const MDSConfig cfg = config_of(spec);
  doc.records.push_back(Json{{"kind", "gamma"},
                             {"pair", {cfg.alphabet_size(), cfg.p()}},
                             {"expression", "log " + std::to_string(cfg.alphabet_size()) + " / log " + std::to_string(cfg.p())},
                             {"approx", cfg.gamma_approx()}});
  if (spec.f.has_value() != psi_of(spec).has_value()) throw UsageError("dim takes --f and --psi together");
  if (!spec.f) return;
  const PsiSpec psi = need_psi(spec);
  const DimensionFunction f = parse_dimension(*spec.f);
  doc.metadata["psi"] = psi.to_string();
  doc.metadata["f"] = f.to_string();
  const PsiSpec th = theta(f, psi, cfg, spec.nmax);
  doc.records.push_back(Json{{"kind", "theta"}, {"exponents", std::get<Tabulated>(th.form()).exponents}});
}

}  // namespace

std::vector<std::uint32_t> parse_alphabet(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    require(!item.empty() && item.find_first_not_of("0123456789") == std::string::npos,
            "alphabet entry '" + item + "' is not a non-negative integer");
    out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
  }
  return out;
}

RunResult run(const CommandSpec& spec) {
  RunResult res;
  try {
    res.doc.metadata = config_metadata(config_of(spec));
    res.doc.metadata["subcommand"] = spec.subcommand;
    if (spec.subcommand == "cf") cmd_cf(spec, res.doc);
    else if (spec.subcommand == "fold") cmd_fold(spec, res.doc);
    else if (spec.subcommand == "measure") cmd_measure(spec, res.doc);
    else if (spec.subcommand == "khintchine") cmd_khintchine(spec, res.doc);
    else if (spec.subcommand == "construct") cmd_construct(spec, res.doc);
    else if (spec.subcommand == "exponent") cmd_exponent(spec, res.doc);
    else if (spec.subcommand == "dim") cmd_dim(spec, res.doc);
    else throw UsageError("unknown subcommand '" + spec.subcommand + "'");

    if (spec.format == EmitFormat::digits && !res.doc.digits) throw UsageError("--format digits is only available for construct");
    if (spec.report_path) {
      std::ofstream out(*spec.report_path, std::ios::binary);
      require(out.good(), "cannot write report '" + *spec.report_path + "'");
      out << emit(res.doc, spec.format == EmitFormat::digits ? EmitFormat::json : spec.format);
    }
  } catch (const UsageError& e) {
    res = {{}, kExitUsage, e.what()};
  } catch (const PreconditionError& e) {
    res = {{}, kExitPrecondition, e.what()};
  } catch (const InvariantError& e) {
    res = {{}, kExitInvariant, e.what()};
  } catch (const nlohmann::json::exception& e) {
    res = {{}, kExitPrecondition, e.what()};
  } catch (const std::invalid_argument& e) {
    res = {{}, kExitPrecondition, e.what()};
  } catch (const std::out_of_range& e) {
    res = {{}, kExitPrecondition, e.what()};
  } catch (const std::exception& e) {
    res = {{}, kExitInvariant, e.what()};
  }
  return res;
}

}  // namespace cantor::cli
