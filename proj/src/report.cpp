#include "cantor/report.hpp"

#include <algorithm>
#include <sstream>

#include "cantor/error.hpp"

namespace cantor {

Json to_json(const Poly& P) { return Json(P.to_vector()); }

Json to_json(const CFrac& cf) {
  Json q = Json::array();
  for (const auto& a : cf.quotients) q.push_back(to_json(a));
  return Json{{"a0", to_json(cf.a0)}, {"quotients", std::move(q)}};
}

Json to_json(const ConvergentTable& table) {
  Json rows = Json::array();
  for (const auto& r : table.rows) rows.push_back(Json{{"j", r.j}, {"P", to_json(r.P)}, {"Q", to_json(r.Q)}});
  return rows;
}

Json to_json(const CylinderSet& S) {
  Json cyl = Json::array();
  for (const auto& c : S.cylinders()) cyl.push_back(std::vector<int>(c.prefix.begin(), c.prefix.end()));
  const auto alpha = S.config().alphabet();
  return Json{{"p", S.config().p()},
              {"alphabet", std::vector<std::uint32_t>(alpha.begin(), alpha.end())},
              {"cylinders", std::move(cyl)}};
}

Poly poly_from_json(const Json& j, std::uint32_t p) {
  require(j.is_array(), "polynomial must be a JSON array of coefficients");
  return Poly(j.get<std::vector<std::int64_t>>(), p);
}

CFrac cfrac_from_json(const Json& j, std::uint32_t p) {
  CFrac cf{Poly(p), {}};
  if (j.is_object()) {
    cf.a0 = poly_from_json(j.at("a0"), p);
    for (const auto& q : j.at("quotients")) cf.quotients.push_back(poly_from_json(q, p));
  } else {
    // bare [[a0], [a1], ...]
    require(j.is_array() && !j.empty(), "continued fraction must be an object or a non-empty array");
    cf.a0 = poly_from_json(j[0], p);
    for (std::size_t i = 1; i < j.size(); ++i) cf.quotients.push_back(poly_from_json(j[i], p));
  }
  check_canonical(cf);
  return cf;
}

CylinderSet cylinder_set_from_json(const Json& j) {
  require(j.is_object(), "cylinder set must be a JSON object");
  try {
    MDSConfig cfg(j.at("p").get<std::uint32_t>(), j.at("alphabet").get<std::vector<std::uint32_t>>());
    std::vector<Cylinder> cyl;
    for (const auto& c : j.at("cylinders")) {
      Cylinder x;
      for (const auto& d : c) {
        const auto v = d.get<std::int64_t>();
        require(v >= 0 && v < static_cast<std::int64_t>(cfg.p()), "cylinder digit out of range");
        x.prefix.push_back(static_cast<std::uint8_t>(v));
      }
      cyl.push_back(std::move(x));
    }
    return CylinderSet::reduce(cfg, std::move(cyl));
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("malformed cylinder set: ") + e.what());
  }
}

Json exact_with_approx(const Rational& r) {
  return Json{{"exact", to_fraction_string(r)}, {"approx", to_double(r)}};
}

Json config_metadata(const MDSConfig& cfg) {
  const auto alpha = cfg.alphabet();
  return Json{{"tool", "cantor"},
              {"version", kToolVersion},
              {"p", cfg.p()},
              {"alphabet", std::vector<std::uint32_t>(alpha.begin(), alpha.end())},
              {"gamma", Json{{"pair", {cfg.alphabet_size(), cfg.p()}}, {"approx", cfg.gamma_approx()}}}};
}

EmitFormat parse_format(const std::string& name) {
  if (name == "json") return EmitFormat::json;
  if (name == "csv") return EmitFormat::csv;
  if (name == "digits") return EmitFormat::digits;
  throw PreconditionError("unknown output format '" + name + "' (json, csv or digits)");
}

namespace {

std::string csv_field(const Json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

std::string emit_csv(const ReportDocument& doc) {
  std::vector<std::string> columns;
  for (const auto& r : doc.records) {
    require(r.is_object(), "csv output needs object records");
    for (const auto& [k, _] : r.items())
      if (std::find(columns.begin(), columns.end(), k) == columns.end()) columns.push_back(k);
  }
  std::ostringstream out;
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const auto& r : doc.records) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) out << ',';
      if (r.contains(columns[i])) out << csv_field(r[columns[i]]);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace

std::string emit(const ReportDocument& doc, EmitFormat format) {
  switch (format) {
    case EmitFormat::json: {
      Json j{{"metadata", doc.metadata}, {"records", Json(doc.records)}};
      if (doc.digits) j["digits"] = *doc.digits;
      return j.dump(2) + "\n";
    }
    case EmitFormat::csv:
      return emit_csv(doc);
    case EmitFormat::digits:
      require(doc.digits.has_value(), "this report carries no digit stream");
      return *doc.digits;
  }
  throw PreconditionError("unknown output format");
}

ReportDocument parse_report(const std::string& json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("report is not valid JSON: ") + e.what());
  }
  require(j.is_object() && j.contains("metadata") && j.contains("records") && j["records"].is_array(),
          "report must have metadata and a records array");
  ReportDocument doc;
  doc.metadata = j["metadata"];
  for (const auto& r : j["records"]) doc.records.push_back(r);
  if (j.contains("digits")) doc.digits = j["digits"].get<std::string>();
  return doc;
}

}  // namespace cantor
