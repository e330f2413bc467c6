#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cantor/cfrac.hpp"
#include "cantor/mds.hpp"

namespace cantor {

using Json = nlohmann::ordered_json;

Json to_json(const Poly& P);
Json to_json(const CFrac& cf);
Json to_json(const ConvergentTable& table);
Json to_json(const CylinderSet& S);

Poly poly_from_json(const Json& j, std::uint32_t p);
CFrac cfrac_from_json(const Json& j, std::uint32_t p);
/// Reads {"p":3,"alphabet":[0,2],"cylinders":[[2,0],...]} and reduces it.
CylinderSet cylinder_set_from_json(const Json& j);

/// Exact value plus an "approx" decimal annotation.
Json exact_with_approx(const Rational& r);

struct ReportDocument {
  Json metadata = Json::object();
  std::vector<Json> records;
  std::optional<std::string> digits;  // digit-file payload, when there is one

  bool operator==(const ReportDocument&) const = default;
};

/// Common metadata: tool version, p, alphabet and gamma_A.
Json config_metadata(const MDSConfig& cfg);

enum class EmitFormat { json, csv, digits };

EmitFormat parse_format(const std::string& name);

/// json: {"metadata":...,"records":[...]} (plus "digits" when present);
/// csv: one row per record, nested values as JSON text;
/// digits: the digit-file payload byte for byte.
std::string emit(const ReportDocument& doc, EmitFormat format);

ReportDocument parse_report(const std::string& json_text);

inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace cantor
