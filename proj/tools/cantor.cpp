// Command-line front end: parses flags into a CommandSpec and prints the report.
#include <iostream>

#include <CLI11.hpp>

#include "cantor/commands.hpp"

using cantor::cli::CommandSpec;

namespace {

void add_config_flags(CLI::App* sub, CommandSpec& spec, std::string& alphabet) {
  sub->add_option("--p", spec.p, "prime modulus")->capture_default_str();
  sub->add_option("--alphabet", alphabet, "digit alphabet, comma separated")->capture_default_str();
  sub->add_option("--starred", spec.starred, "pinned constant coefficient of F*(N)");
}

void add_output_flags(CLI::App* sub, std::string& format, CommandSpec& spec) {
  sub->add_option("--format", format, "json, csv or digits")->capture_default_str();
  sub->add_option("--report", spec.report_path, "write the report here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Diophantine approximation on missing-digit sets over F_p((1/X))"};
  app.require_subcommand(1);
  app.set_version_flag("--version", cantor::kToolVersion);

  CommandSpec spec;
  std::string alphabet = "0,2";
  std::string format = "json";

  auto* cf = app.add_subcommand("cf", "continued fraction and convergents");
  cf->add_option("--x", spec.x, "rational function [num]/[den]");
  cf->add_option("--digits", spec.digits_in, "digit file");
  cf->add_option("--max-terms", spec.max_terms)->capture_default_str();

  auto* fold = app.add_subcommand("fold", "apply the Folding Lemma");
  fold->add_option("--x", spec.x, "rational function [num]/[den]")->required();
  fold->add_option("--t", spec.t, "polynomial of degree >= 1, e.g. [0,0,1]")->required();

  auto* measure = app.add_subcommand("measure", "exact cylinder-set measures");
  measure->add_option("--cylinders", spec.cylinders, "prefixes such as 20 022, '-' for the unit ball, or JSON")->required();
  measure->add_option("--with", spec.other, "second cylinder set for --op");
  measure->add_option("--op", spec.op, "union or intersect");

  auto* kh = app.add_subcommand("khintchine", "approximation sets, quasi-independence, series");
  kh->add_option("--psi", spec.psi, "ceil:a=,b= | table:e1,e2,...");
  kh->add_flag("--cap", spec.cap, "replace psi by min(1/r, psi)");
  kh->add_option("--f", spec.f, "dimension function, default gamma:k=1");
  kh->add_option("--nmax", spec.nmax)->capture_default_str();
  kh->add_option("--bc-max", spec.bc_max, "closed-form Borel-Cantelli ratio up to this N");

  auto* con = app.add_subcommand("construct", "iterated folding with a prescribed exponent");
  con->add_option("--tau", spec.tau, "psi(x) = x^-tau");
  con->add_option("--psi", spec.psi, "psi mini-language");
  con->add_option("--stages", spec.stages)->capture_default_str();
  con->add_option("--c", spec.c, "constant in (0, 1/p)")->capture_default_str();
  con->add_option("--emit", spec.emit_path, "write the digit file here");

  auto* ex = app.add_subcommand("exponent", "schedules and irrationality exponent estimates");
  ex->add_option("--tau", spec.tau, "schedule for psi(x) = x^-tau");
  ex->add_option("--psi", spec.psi, "schedule for this psi");
  ex->add_option("--count", spec.count, "schedule length")->capture_default_str();
  ex->add_option("--liouville", spec.liouville, "estimate for sum X^-n! known to this depth");
  ex->add_option("--x", spec.x, "estimate for a rational function");
  ex->add_option("--digits", spec.digits_in, "estimate for a digit file");
  ex->add_option("--max-terms", spec.max_terms)->capture_default_str();

  auto* dim = app.add_subcommand("dim", "gamma_A and the theta transform");
  dim->add_option("--f", spec.f, "dimension function");
  dim->add_option("--psi", spec.psi, "psi mini-language");
  dim->add_option("--nmax", spec.nmax)->capture_default_str();

  for (auto* sub : {cf, fold, measure, kh, con, ex, dim}) {
    add_config_flags(sub, spec, alphabet);
    add_output_flags(sub, format, spec);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cantor::cli::kExitUsage;
  }

  spec.subcommand = app.get_subcommands().front()->get_name();
  try {
    spec.alphabet = cantor::cli::parse_alphabet(alphabet);
    spec.format = cantor::parse_format(format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cantor::cli::kExitUsage;
  }

  const auto res = cantor::cli::run(spec);
  if (res.exit_code != cantor::cli::kExitOk) {
    std::cerr << "error: " << res.error << '\n';
    return res.exit_code;
  }
  if (!spec.report_path) std::cout << cantor::emit(res.doc, spec.format);
  return 0;
}
