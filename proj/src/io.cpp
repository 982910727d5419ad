#include "syslat/io.hpp"

#include <fstream>
#include <sstream>

namespace syslat {

using nlohmann::json;

namespace {

Eigen::MatrixXd matrix_from_json(const json& rows, const char* what) {
  if (!rows.is_array() || rows.empty()) {
    throw InputError(std::string(what) + ": basis must be a nonempty array of rows");
  }
  const size_t n = rows.size();
  Eigen::MatrixXd m(n, n);
  for (size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) {
      std::ostringstream msg;
      msg << what << ": basis is not square (row " << i << " has "
          << rows[i].size() << " entries, expected " << n << ")";
      throw InputError(msg.str());
    }
    for (size_t j = 0; j < n; ++j) {
      if (!rows[i][j].is_number()) {
        std::ostringstream msg;
        msg << what << ": basis entry (" << i << "," << j << ") is not a number";
        throw InputError(msg.str());
      }
      m(i, j) = rows[i][j].get<double>();
    }
  }
  return m;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

json ivector_to_json(const Eigen::VectorXi& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Eigen::VectorXd vector_from_json(const json& arr, const char* what) {
  if (!arr.is_array()) throw InputError(std::string(what) + " must be an array");
  Eigen::VectorXd v(arr.size());
  for (size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) {
      throw InputError(std::string(what) + " contains a non-number entry");
    }
    v(i) = arr[i].get<double>();
  }
  return v;
}

Eigen::VectorXi ivector_from_json(const json& arr, const char* what) {
  if (!arr.is_array()) throw InputError(std::string(what) + " must be an array");
  Eigen::VectorXi v(arr.size());
  for (size_t i = 0; i < arr.size(); ++i) v(i) = arr[i].get<int>();
  return v;
}

json witness_to_json(const Witness& w) {
  return json{{"role", w.role},
              {"coeffs", ivector_to_json(w.coeffs)},
              {"coords", vector_to_json(w.coords)},
              {"norm", w.norm}};
}

Witness witness_from_json(const json& j) {
  Witness w;
  w.role = j.at("role").get<std::string>();
  w.coeffs = ivector_from_json(j.at("coeffs"), "witness coeffs");
  w.coords = vector_from_json(j.at("coords"), "witness coords");
  w.norm = j.at("norm").get<double>();
  return w;
}

}  // namespace

Lattice lattice_from_json(const json& j) {
  if (!j.is_object()) throw InputError("lattice: expected a JSON object");
  if (!j.contains("dim") || !j.contains("basis")) {
    throw InputError("lattice: required fields are \"dim\" and \"basis\"");
  }
  if (!j["dim"].is_number_integer() || j["dim"].get<int>() < 1) {
    throw InputError("lattice: \"dim\" must be a positive integer");
  }
  const int dim = j["dim"].get<int>();
  Eigen::MatrixXd basis = matrix_from_json(j["basis"], "lattice");
  if (basis.rows() != dim) {
    std::ostringstream msg;
    msg << "lattice: \"dim\" = " << dim << " does not match basis rows = "
        << basis.rows();
    throw InputError(msg.str());
  }
  return Lattice(std::move(basis));  // rank invariant enforced by constructor
}

json lattice_to_json(const Lattice& lattice) {
  return json{{"dim", lattice.dim()}, {"basis", matrix_to_json(lattice.basis())}};
}

Lattice load_lattice(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open lattice file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError("lattice file '" + path + "' is not valid JSON: " + e.what());
  }
  return lattice_from_json(j);
}

PVector pvector_from_json(const json& j) {
  if (!j.contains("n") || !j.contains("p") || !j.contains("coords")) {
    throw InputError("pvector: required fields are \"n\", \"p\", \"coords\"");
  }
  return PVector::from_coords(j["n"].get<int>(), j["p"].get<int>(),
                              vector_from_json(j["coords"], "pvector coords"));
}

json pvector_to_json(const PVector& v) {
  return json{{"n", v.ambient_dim}, {"p", v.degree},
              {"coords", vector_to_json(v.coords)}};
}

json norm_spec_to_json(const NormSpec& norm) {
  const char* kind = "euclidean";
  if (norm.kind() == NormSpec::Kind::Mass) kind = "mass";
  if (norm.kind() == NormSpec::Kind::Comass) kind = "comass";
  return json{{"kind", kind},
              {"name", norm.name()},
              {"degree", norm.degree()},
              {"ambient_dim", norm.ambient_dim()},
              {"scale", norm.scale()},
              {"exact", norm.exact()}};
}

json certificate_to_json(const Certificate& cert) {
  json params = json::object();
  for (const auto& [key, value] : cert.params) params[key] = value;
  json witnesses = json::array();
  for (const Witness& w : cert.witnesses) witnesses.push_back(witness_to_json(w));
  return json{{"record", "certificate"},
              {"schema", kSchemaVersion},
              {"inequality", cert.inequality},
              {"params", std::move(params)},
              {"lhs", cert.lhs},
              {"rhs", cert.rhs},
              {"ratio", cert.ratio},
              {"witnesses", std::move(witnesses)},
              {"status", to_string(cert.status)},
              {"notes", cert.notes}};
}

Certificate certificate_from_json(const json& j) {
  Certificate cert;
  cert.inequality = j.at("inequality").get<std::string>();
  for (const auto& [key, value] : j.at("params").items()) {
    cert.params[key] = value.get<double>();
  }
  cert.lhs = j.at("lhs").get<double>();
  cert.rhs = j.at("rhs").get<double>();
  cert.ratio = j.at("ratio").get<double>();
  for (const auto& w : j.at("witnesses")) {
    cert.witnesses.push_back(witness_from_json(w));
  }
  cert.status = status_from_string(j.at("status").get<std::string>());
  cert.notes = j.value("notes", "");
  return cert;
}

json minima_profile_to_json(const MinimaProfile& profile) {
  json values = json::array();
  for (double v : profile.values) values.push_back(v);
  json vectors = json::array();
  for (const LatticePoint& pt : profile.vectors) {
    vectors.push_back(json{{"coeffs", ivector_to_json(pt.coeffs)},
                           {"coords", vector_to_json(pt.coords)},
                           {"norm", pt.norm.value}});
  }
  json bounds = json::array();
  for (const auto& b : profile.bounds) bounds.push_back(json::array({b[0], b[1]}));
  return json{{"record", "minima"},
              {"schema", kSchemaVersion},
              {"norm", norm_spec_to_json(profile.norm)},
              {"values", std::move(values)},
              {"vectors", std::move(vectors)},
              {"heuristic", profile.heuristic},
              {"bounds", std::move(bounds)}};
}

json systole_report_to_json(const SystoleReport& report) {
  json j{{"record", "systole"},
         {"schema", kSchemaVersion},
         {"p", report.p},
         {"value", report.value},
         {"witness",
          json{{"coeffs", ivector_to_json(report.witness_coeffs)},
               {"coords", vector_to_json(report.witness_coords)}}},
         {"heuristic", report.heuristic},
         {"notes", report.notes}};
  if (report.bounds) {
    j["bounds"] = json::array({(*report.bounds)[0], (*report.bounds)[1]});
  } else {
    j["bounds"] = nullptr;
  }
  return j;
}

json search_result_to_json(const SearchResult& result) {
  return json{{"record", "search"},
              {"schema", kSchemaVersion},
              {"b", result.lattice.dim()},
              {"objective", result.objective},
              {"lambda1", result.lambda1},
              {"dual_lambda1", result.dual_lambda1},
              {"seed", result.seed},
              {"best_start", result.best_start},
              {"basis", matrix_to_json(result.lattice.basis())}};
}

json record_schemas() {
  // field -> JSON type name; optional fields are suffixed with '?'.
  return json{
      {"version", kSchemaVersion},
      {"records",
       json{{"certificate",
             json{{"inequality", "string"}, {"params", "object"},
                  {"lhs", "number"}, {"rhs", "number"}, {"ratio", "number"},
                  {"witnesses", "array"}, {"status", "string"},
                  {"notes", "string"}, {"timestamp?", "string"}}},
            {"minima",
             json{{"norm", "object"}, {"values", "array"}, {"vectors", "array"},
                  {"heuristic", "boolean"}, {"bounds", "array"},
                  {"timestamp?", "string"}}},
            {"systole",
             json{{"p", "number"}, {"value", "number"}, {"witness", "object"},
                  {"heuristic", "boolean"}, {"notes", "string"},
                  {"timestamp?", "string"}}},
            {"search",
             json{{"b", "number"}, {"objective", "number"},
                  {"lambda1", "number"}, {"dual_lambda1", "number"},
                  {"seed", "number"}, {"best_start", "number"},
                  {"basis", "array"}, {"timestamp?", "string"}}},
            {"lattice",
             json{{"dim", "number"}, {"basis", "array"},
                  {"timestamp?", "string"}}},
            {"summary",
             json{{"inequality", "string"}, {"count", "number"},
                  {"min_ratio", "number"}, {"median_ratio", "number"},
                  {"max_ratio", "number"}, {"statuses", "object"},
                  {"timestamp?", "string"}}},
            {"points",
             json{{"norm", "object"}, {"radius", "number"}, {"points", "array"},
                  {"timestamp?", "string"}}},
            {"wedge-index",
             json{{"n", "number"}, {"p", "number"}, {"order", "array"},
                  {"timestamp?", "string"}}}}}};
}

bool validate_record(const json& record, std::string* error) {
  auto fail = [&](const std::string& msg) {
    if (error != nullptr) *error = msg;
    return false;
  };
  if (!record.is_object()) return fail("record is not a JSON object");
  if (!record.contains("record") || !record["record"].is_string()) {
    return fail("missing string field 'record'");
  }
  if (!record.contains("schema") || record["schema"] != kSchemaVersion) {
    return fail("missing or mismatched 'schema' field");
  }
  const json schemas = record_schemas();
  const std::string type = record["record"].get<std::string>();
  if (!schemas["records"].contains(type)) {
    return fail("unknown record type '" + type + "'");
  }
  for (const auto& [field, kind] : schemas["records"][type].items()) {
    if (!field.empty() && field.back() == '?') continue;
    if (!record.contains(field)) {
      return fail("record '" + type + "' is missing field '" + field + "'");
    }
    const json& value = record[field];
    const std::string want = kind.get<std::string>();
    const bool ok = (want == "string" && value.is_string()) ||
                    (want == "number" && value.is_number()) ||
                    (want == "array" && value.is_array()) ||
                    (want == "object" && value.is_object()) ||
                    (want == "boolean" && value.is_boolean());
    if (!ok) {
      return fail("field '" + field + "' of '" + type + "' is not a " + want);
    }
  }
  return true;
}

}  // namespace syslat
