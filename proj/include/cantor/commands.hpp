#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cantor/report.hpp"

namespace cantor::cli {

/// Bad flag combination; maps to exit status 2 like a parse failure.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitPrecondition = 3;
inline constexpr int kExitInvariant = 4;

struct CommandSpec {
  std::string subcommand;  // cf | fold | measure | khintchine | construct | exponent | dim

  std::uint32_t p = 3;
  std::vector<std::uint32_t> alphabet{0, 2};
  std::optional<std::uint32_t> starred;

  std::optional<std::string> psi;    // psi mini-language
  std::optional<std::string> f;      // dimension function
  std::optional<std::string> tau;    // shorthand for psi = pow:tau=<tau>
  bool cap = false;                  // apply Psi = min(1/r, psi)

  std::optional<std::string> x;          // rational function "[num]/[den]"
  std::optional<std::string> digits_in;  // digit file to read
  std::optional<std::string> t;          // fold polynomial
  std::size_t max_terms = 64;

  std::vector<std::string> cylinders;  // measure: prefixes such as "20"
  std::vector<std::string> other;      // measure: second set for --op
  std::optional<std::string> op;       // union | intersect

  std::int64_t nmax = 6;
  std::optional<std::int64_t> bc_max;  // closed-form bc_ratio up to this N
  std::string c = "3/10";
  std::size_t stages = 2;
  std::optional<std::int64_t> liouville;
  std::size_t count = 6;

  EmitFormat format = EmitFormat::json;
  std::optional<std::string> report_path;
  std::optional<std::string> emit_path;  // digit file output
};

struct RunResult {
  ReportDocument doc;
  int exit_code = kExitOk;
  std::string error;
};

/// Executes one command. Never throws: errors become exit codes 2
/// (usage), 3 (precondition) or 4 (internal invariant).
RunResult run(const CommandSpec& spec);

/// Parses "0,2" into an alphabet.
std::vector<std::uint32_t> parse_alphabet(const std::string& text);

}  // namespace cantor::cli
