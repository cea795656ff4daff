#include "pairframe/document.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace pairframe {

namespace {

using nlohmann::json;

std::string format_float(double x) {
  if (std::isinf(x)) return x > 0 ? "\"inf\"" : "\"-inf\"";
  if (std::isnan(x)) return "\"nan\"";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool is_scalar(const json& j) { return !j.is_object() && !j.is_array(); }

void dump_scalar(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::string:
      out += j.dump();
      break;
    case json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      break;
    case json::value_t::number_integer:
      out += std::to_string(j.get<long long>());
      break;
    case json::value_t::number_unsigned:
      out += std::to_string(j.get<unsigned long long>());
      break;
    case json::value_t::number_float:
      out += format_float(j.get<double>());
      break;
    default:
      out += "null";
      break;
  }
}

void dump_rec(const json& j, std::string& out, int indent) {
  const std::string pad(static_cast<size_t>(indent) * 2, ' ');
  const std::string pad_in(static_cast<size_t>(indent + 1) * 2, ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ",\n";
      first = false;
      out += pad_in;
      out += json(it.key()).dump();
      out += ": ";
      dump_rec(it.value(), out, indent + 1);
    }
    out += "\n" + pad + "}";
    return;
  }
  if (j.is_array()) {
    bool all_scalar = true;
    for (const auto& e : j) all_scalar = all_scalar && is_scalar(e);
    if (all_scalar) {
      out += "[";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ", ";
        first = false;
        dump_scalar(e, out);
      }
      out += "]";
      return;
    }
    out += "[\n";
    bool first = true;
    for (const auto& e : j) {
      if (!first) out += ",\n";
      first = false;
      out += pad_in;
      dump_rec(e, out, indent + 1);
    }
    out += "\n" + pad + "]";
    return;
  }
  dump_scalar(j, out);
}

double number_field(const json& j, const std::string& field) {
  if (!j.is_number()) throw ValidationError(field + ": expected a number");
  return j.get<double>();
}

Eigen::VectorXd row_from_json(const json& j, const std::string& field, int expected_len) {
  if (!j.is_array()) throw ValidationError(field + ": expected an array of numbers");
  if (static_cast<int>(j.size()) != expected_len) {
    throw ValidationError(field + ": expected " + std::to_string(expected_len) +
                          " entries, got " + std::to_string(j.size()));
  }
  Eigen::VectorXd v(expected_len);
  for (int k = 0; k < expected_len; ++k) {
    v[k] = number_field(j[static_cast<size_t>(k)], field + "[" + std::to_string(k) + "]");
  }
  return v;
}

std::vector<Eigen::VectorXd> family_from_json(const json& j, const std::string& field, int dim) {
  if (!j.is_array()) throw ValidationError(field + ": expected an array of rows");
  std::vector<Eigen::VectorXd> rows;
  rows.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    rows.push_back(row_from_json(j[i], field + "[" + std::to_string(i) + "]", dim));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j, const std::string& field, int rows, int cols) {
  if (!j.is_array()) throw ValidationError(field + ": expected an array of rows");
  if (static_cast<int>(j.size()) != rows) {
    throw ValidationError(field + ": expected " + std::to_string(rows) + " rows, got " +
                          std::to_string(j.size()));
  }
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    m.row(i) =
        row_from_json(j[static_cast<size_t>(i)], field + "[" + std::to_string(i) + "]", cols)
            .transpose();
  }
  return m;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

json family_to_json(const std::vector<Eigen::VectorXd>& family) {
  json rows = json::array();
  for (const auto& v : family) {
    json row = json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) row.push_back(v[k]);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string canonical_dump(const nlohmann::json& j) {
  std::string out;
  dump_rec(j, out, 0);
  out += "\n";
  return out;
}

nlohmann::json exponent_to_json(double p) {
  if (is_inf_exponent(p)) return json("inf");
  return json(p);
}

double exponent_from_json(const nlohmann::json& j, const std::string& field) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInfExponent;
    throw ValidationError(field + ": the only string exponent allowed is \"inf\"");
  }
  const double p = number_field(j, field);
  if (std::isnan(p) || p < 1.0) throw ValidationError(field + ": exponent must satisfy p >= 1");
  return p;
}

SystemDocument parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("document is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("document: expected a JSON object");

  SystemDocument doc;
  if (!j.contains("space") || !j["space"].is_object()) {
    throw ValidationError("space: required object missing");
  }
  if (!j["space"].contains("dim")) throw ValidationError("space.dim: required field missing");
  const double dim_raw = number_field(j["space"]["dim"], "space.dim");
  if (dim_raw < 1 || dim_raw != std::floor(dim_raw)) {
    throw ValidationError("space.dim: expected a positive integer");
  }
  doc.dim = static_cast<int>(dim_raw);
  if (!j["space"].contains("p")) throw ValidationError("space.p: required field missing");
  doc.space_p = exponent_from_json(j["space"]["p"], "space.p");

  if (!j.contains("sequence_space") || !j["sequence_space"].is_object() ||
      !j["sequence_space"].contains("p")) {
    throw ValidationError("sequence_space.p: required field missing");
  }
  doc.seq_p = exponent_from_json(j["sequence_space"]["p"], "sequence_space.p");

  if (j.contains("family_F")) doc.family_f = family_from_json(j["family_F"], "family_F", doc.dim);
  if (j.contains("family_G")) doc.family_g = family_from_json(j["family_G"], "family_G", doc.dim);

  if (j.contains("lazy")) {
    const json& lz = j["lazy"];
    if (!lz.is_object() || !lz.contains("generator") || !lz["generator"].is_string()) {
      throw ValidationError("lazy.generator: required string missing");
    }
    LazyDocSpec spec;
    spec.generator = lz["generator"].get<std::string>();
    if (lz.contains("parameters")) {
      if (!lz["parameters"].is_object()) {
        throw ValidationError("lazy.parameters: expected an object of numbers");
      }
      for (auto it = lz["parameters"].begin(); it != lz["parameters"].end(); ++it) {
        spec.parameters[it.key()] =
            number_field(it.value(), std::string("lazy.parameters.") + it.key());
      }
    }
    doc.lazy = std::move(spec);
  }

  if (!doc.family_f.empty() || !doc.family_g.empty()) {
    if (doc.family_f.empty() && !j.contains("operator_T")) {
      throw ValidationError("family_F: missing while family_G is present");
    }
    if (doc.family_g.empty()) {
      throw ValidationError("family_G: missing while family_F is present");
    }
    if (!doc.family_f.empty() && doc.family_f.size() != doc.family_g.size()) {
      throw ValidationError("family_F: row count " + std::to_string(doc.family_f.size()) +
                            " does not match family_G row count " +
                            std::to_string(doc.family_g.size()));
    }
  } else if (!doc.lazy) {
    throw ValidationError("family_G: required unless a lazy generator is given");
  }

  if (j.contains("operator_T")) {
    const int count = static_cast<int>(doc.family_g.size());
    if (count == 0) throw ValidationError("operator_T: requires family_G");
    doc.operator_t = matrix_from_json(j["operator_T"], "operator_T", doc.dim, count);
  }
  if (j.contains("transforms")) {
    const json& tr = j["transforms"];
    if (!tr.is_object()) throw ValidationError("transforms: expected an object with V and W");
    if (tr.contains("V")) {
      doc.transform_v = matrix_from_json(tr["V"], "transforms.V", doc.dim, doc.dim);
    }
    if (tr.contains("W")) {
      doc.transform_w = matrix_from_json(tr["W"], "transforms.W", doc.dim, doc.dim);
    }
  }
  return doc;
}

SystemDocument load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open input file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_document(buffer.str());
}

nlohmann::json document_to_json(const SystemDocument& doc) {
  json j;
  j["space"] = json{{"dim", doc.dim}, {"p", exponent_to_json(doc.space_p)}};
  j["sequence_space"] = json{{"p", exponent_to_json(doc.seq_p)}};
  if (!doc.family_f.empty()) j["family_F"] = family_to_json(doc.family_f);
  if (!doc.family_g.empty()) j["family_G"] = family_to_json(doc.family_g);
  if (doc.operator_t) j["operator_T"] = matrix_to_json(*doc.operator_t);
  if (doc.transform_v || doc.transform_w) {
    json tr;
    if (doc.transform_v) tr["V"] = matrix_to_json(*doc.transform_v);
    if (doc.transform_w) tr["W"] = matrix_to_json(*doc.transform_w);
    j["transforms"] = std::move(tr);
  }
  if (doc.lazy) {
    json lz;
    lz["generator"] = doc.lazy->generator;
    if (!doc.lazy->parameters.empty()) {
      json params;
      for (const auto& [k, v] : doc.lazy->parameters) params[k] = v;
      lz["parameters"] = std::move(params);
    }
    j["lazy"] = std::move(lz);
  }
  return j;
}

SpaceSpec ambient_space(const SystemDocument& doc) { return make_space(doc.dim, doc.space_p); }

FrameFamily document_family_g(const SystemDocument& doc) {
  if (doc.family_g.empty()) throw ValidationError("family_G: required for this command");
  return make_family(doc.family_g, dual_space(ambient_space(doc)), Side::functionals_on_x);
}

FrameFamily document_family_f(const SystemDocument& doc) {
  if (doc.family_f.empty()) throw ValidationError("family_F: required for this command");
  return make_family(doc.family_f, ambient_space(doc), Side::vectors_in_x);
}

PairSystem document_pair_system(const SystemDocument& doc) {
  return make_pair_system(document_family_g(doc), document_family_f(doc), doc.seq_p);
}

DenseOperator document_operator_t(const SystemDocument& doc) {
  if (!doc.operator_t) throw ValidationError("operator_T: required for this command");
  const int count = static_cast<int>(doc.family_g.size());
  return make_operator(*doc.operator_t, make_space(count, doc.seq_p), ambient_space(doc));
}

DenseOperator document_transform_v(const SystemDocument& doc) {
  if (!doc.transform_v) throw ValidationError("transforms.V: required for this command");
  const SpaceSpec x = ambient_space(doc);
  return make_operator(*doc.transform_v, x, x);
}

DenseOperator document_transform_w(const SystemDocument& doc) {
  if (!doc.transform_w) throw ValidationError("transforms.W: required for this command");
  const SpaceSpec x = ambient_space(doc);
  return make_operator(*doc.transform_w, x, x);
}

bool document_has_families(const SystemDocument& doc) {
  return !doc.family_f.empty() && !doc.family_g.empty();
}

LazyFamily document_lazy_family(const SystemDocument& doc) {
  if (doc.lazy) {
    const SpaceSpec ambient = ambient_space(doc);
    const auto& spec = *doc.lazy;
    if (spec.generator == "geometric") {
      double ratio = 0.5;
      if (auto it = spec.parameters.find("ratio"); it != spec.parameters.end()) {
        ratio = it->second;
      }
      if (!(ratio > 0.0 && ratio < 1.0)) {
        throw ValidationError("lazy.parameters.ratio: must lie in (0, 1)");
      }
      return geometric_family(ambient, ratio);
    }
    if (spec.generator == "alternating_harmonic") {
      return alternating_harmonic_family(ambient);
    }
    throw ValidationError("lazy.generator: unknown generator \"" + spec.generator + "\"");
  }
  return lazy_from_system(document_pair_system(doc));
}

SystemDocument document_from_pair_system(const PairSystem& sys) {
  SystemDocument doc;
  doc.dim = sys.synthesis_family.space.dim;
  doc.space_p = sys.synthesis_family.space.p;
  doc.seq_p = sys.seq.p;
  doc.family_f = sys.synthesis_family.vectors;
  doc.family_g = sys.analysis_family.vectors;
  return doc;
}

SystemDocument document_from_banach_dual(const FrameFamily& h, const DenseOperator& dual_synthesis,
                                         double seq_p) {
  SystemDocument doc;
  doc.dim = dual_synthesis.codomain.dim;
  doc.space_p = dual_synthesis.codomain.p;
  doc.seq_p = seq_p;
  doc.family_g = h.vectors;
  doc.operator_t = dual_synthesis.matrix;
  return doc;
}

nlohmann::json to_json(const OperatorNormEstimate& est) {
  return json{{"lower", est.lower},
              {"upper", est.upper},
              {"method", to_string(est.method)},
              {"seed", est.seed}};
}

nlohmann::json to_json(const EllBesselCert& cert) {
  json j;
  j["p"] = exponent_to_json(cert.seq_p);
  j["upper"] = to_json(cert.upper);
  if (cert.lower) j["lower"] = to_json(*cert.lower);
  return j;
}

}  // namespace pairframe
