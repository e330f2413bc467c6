#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cantor/cfrac.hpp"
#include "cantor/commands.hpp"
#include "cantor/error.hpp"
#include "cantor/exponent.hpp"
#include "cantor/khintchine.hpp"
#include "cantor/laurent.hpp"

namespace py = pybind11;
using namespace cantor;

namespace {

using Coeffs = std::vector<std::int64_t>;
using CfPair = std::pair<Coeffs, std::vector<Coeffs>>;

// Rationals cross the boundary as "num/den"; the Python side wraps them in Fraction.
std::string frac(const Rational& r) { return to_fraction_string(r); }

CFrac cf_from(const Coeffs& a0, const std::vector<Coeffs>& q, std::uint32_t p) {
  CFrac cf{Poly(a0, p), {}};
  for (const auto& a : q) cf.quotients.emplace_back(a, p);
  return cf;
}

CfPair cf_to(const CFrac& cf) {
  CfPair out{cf.a0.to_vector(), {}};
  for (const auto& a : cf.quotients) out.second.push_back(a.to_vector());
  return out;
}

MDSConfig config(std::uint32_t p, const std::vector<std::uint32_t>& alphabet) { return MDSConfig(p, alphabet); }

std::vector<std::uint32_t> known_digits(const LaurentTrunc& t) {
  std::vector<std::uint32_t> out;
  for (std::int64_t n = 1; n <= t.known_depth(); ++n) out.push_back(t.digit(n).value_or(0));
  return out;
}

}  // namespace

PYBIND11_MODULE(_cantor, m) {
  m.doc() = "exact arithmetic over F_p[X], continued fractions and missing-digit sets";

  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);

  m.attr("version") = kToolVersion;

  m.def("gamma", [](std::uint32_t p, const std::vector<std::uint32_t>& alphabet) {
    return config(p, alphabet).gamma_approx();
  }, py::arg("p") = 3, py::arg("alphabet") = std::vector<std::uint32_t>{0, 2});

  m.def("cf_rational", [](const Coeffs& num, const Coeffs& den, std::uint32_t p) {
    return cf_to(cf_rational(ratfun_make(Poly(num, p), Poly(den, p))));
  }, py::arg("num"), py::arg("den"), py::arg("p") = 3);

  m.def("cf_eval", [](const Coeffs& a0, const std::vector<Coeffs>& q, std::uint32_t p) {
    const RatFun x = cf_eval(cf_from(a0, q, p));
    return std::pair{x.num().to_vector(), x.den().to_vector()};
  }, py::arg("a0"), py::arg("quotients"), py::arg("p") = 3);

  m.def("fold", [](const Coeffs& a0, const std::vector<Coeffs>& q, const Coeffs& t, std::uint32_t p) {
    return cf_to(fold(cf_from(a0, q, p), Poly(t, p)));
  }, py::arg("a0"), py::arg("quotients"), py::arg("t"), py::arg("p") = 3);

  m.def("laurent_digits", [](const Coeffs& num, const Coeffs& den, std::int64_t depth, std::uint32_t p) {
    return known_digits(laurent_expand(ratfun_make(Poly(num, p), Poly(den, p)), depth));
  }, py::arg("num"), py::arg("den"), py::arg("depth"), py::arg("p") = 3);

  m.def("cylinder_measure", [](const std::vector<std::vector<std::uint8_t>>& prefixes, std::uint32_t p,
                               const std::vector<std::uint32_t>& alphabet) {
    std::vector<Cylinder> cyls;
    for (const auto& w : prefixes) cyls.push_back(Cylinder{w});
    return frac(cyl_measure(CylinderSet::reduce(config(p, alphabet), std::move(cyls))));
  }, py::arg("prefixes"), py::arg("p") = 3, py::arg("alphabet") = std::vector<std::uint32_t>{0, 2});

  m.def("astar_measure", [](std::int64_t n, const std::string& psi, std::uint32_t p,
                            const std::vector<std::uint32_t>& alphabet) {
    const ApproxSetRecord r = build_Astar(n, parse_psi(psi), config(p, alphabet));
    return std::pair{frac(r.measure), frac(r.formula)};
  }, py::arg("n"), py::arg("psi"), py::arg("p") = 3, py::arg("alphabet") = std::vector<std::uint32_t>{0, 2});

  m.def("bc_ratio", [](std::int64_t N, const std::string& psi, bool closed_form) {
    const MDSConfig cfg = MDSConfig::cantor();
    return frac(closed_form ? bc_ratio_closed_form(N, parse_psi(psi), cfg) : bc_ratio(N, parse_psi(psi), cfg));
  }, py::arg("N"), py::arg("psi"), py::arg("closed_form") = false);

  m.def("theta", [](const std::string& f, const std::string& psi, std::int64_t n_max) {
    const PsiSpec th = theta(parse_dimension(f), parse_psi(psi), MDSConfig::cantor(), n_max);
    return std::get<Tabulated>(th.form()).exponents;
  }, py::arg("f"), py::arg("psi"), py::arg("n_max"));

  m.def("schedule", [](const std::string& psi, std::size_t count, std::uint32_t p) {
    const FoldingSchedule s = schedule(parse_psi(psi), count, p);
    return std::pair{s.u, s.v};
  }, py::arg("psi"), py::arg("count"), py::arg("p") = 3);

  m.def("construct_digits", [](const std::string& psi, std::size_t stages, std::uint32_t p) {
    return known_digits(construct(schedule(parse_psi(psi), stages, p), stages).digits());
  }, py::arg("psi"), py::arg("stages"), py::arg("p") = 3);

  m.def("estimate_tau", [](const Coeffs& a0, const std::vector<Coeffs>& q, std::uint32_t p) {
    return frac(estimate_tau(cf_from(a0, q, p)).estimate);
  }, py::arg("a0"), py::arg("quotients"), py::arg("p") = 3);

  m.def("run", [](const std::string& subcommand, const py::kwargs& kw) {
    cli::CommandSpec spec;
    spec.subcommand = subcommand;
    for (const auto& [key_obj, value] : kw) {
      const std::string key = py::cast<std::string>(key_obj);
      if (key == "p") spec.p = value.cast<std::uint32_t>();
      else if (key == "alphabet") spec.alphabet = value.cast<std::vector<std::uint32_t>>();
      else if (key == "starred") spec.starred = value.cast<std::uint32_t>();
      else if (key == "psi") spec.psi = value.cast<std::string>();
      else if (key == "f") spec.f = value.cast<std::string>();
      else if (key == "tau") spec.tau = py::str(value).cast<std::string>();
      else if (key == "cap") spec.cap = value.cast<bool>();
      else if (key == "x") spec.x = value.cast<std::string>();
      else if (key == "t") spec.t = value.cast<std::string>();
      else if (key == "max_terms") spec.max_terms = value.cast<std::size_t>();
      else if (key == "cylinders") spec.cylinders = value.cast<std::vector<std::string>>();
      else if (key == "other") spec.other = value.cast<std::vector<std::string>>();
      else if (key == "op") spec.op = value.cast<std::string>();
      else if (key == "nmax") spec.nmax = value.cast<std::int64_t>();
      else if (key == "bc_max") spec.bc_max = value.cast<std::int64_t>();
      else if (key == "c") spec.c = py::str(value).cast<std::string>();
      else if (key == "stages") spec.stages = value.cast<std::size_t>();
      else if (key == "liouville") spec.liouville = value.cast<std::int64_t>();
      else if (key == "count") spec.count = value.cast<std::size_t>();
      else throw py::type_error("run: unknown option '" + key + "'");
    }
    const cli::RunResult r = cli::run(spec);
    return std::pair{r.exit_code, r.exit_code == 0 ? emit(r.doc, EmitFormat::json) : r.error};
  }, py::arg("subcommand"));
}
