#include "qdq/io.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include "json.hpp"

namespace qdq::io {

namespace {

using nlohmann::json;

[[noreturn]] void malformed(const std::string& what) {
  throw MalformedDocumentError("document: " + what);
}

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) {
    malformed("not valid JSON");
  }
  if (!j.is_object()) {
    malformed("top level must be an object");
  }
  return j;
}

void check_schema(const json& j) {
  if (!j.contains("schema_version") || !j["schema_version"].is_string() ||
      j["schema_version"].get<std::string>() != kSchemaVersion) {
    malformed("schema_version must be \"" + std::string(kSchemaVersion) + "\"");
  }
}

std::string get_kind(const json& j) {
  if (!j.contains("kind") || !j["kind"].is_string()) {
    malformed("missing kind");
  }
  return j["kind"].get<std::string>();
}

std::size_t get_dim(const json& j) {
  if (!j.contains("dim") || !j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() == 0) {
    malformed("dim must be a positive integer");
  }
  return j["dim"].get<std::size_t>();
}

Complex parse_entry(const json& e, const std::string& where) {
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
    malformed(where + ": entry must be a [re, im] pair of numbers");
  }
  const double re = e[0].get<double>();
  const double im = e[1].get<double>();
  if (!std::isfinite(re) || !std::isfinite(im)) {
    malformed(where + ": non-finite entry");
  }
  return Complex{re, im};
}

ComplexMatrix parse_matrix(const json& m, std::size_t dim, const std::string& where) {
  if (!m.is_array() || m.size() != dim) {
    malformed(where + ": expected " + std::to_string(dim) + " rows");
  }
  ComplexMatrix out(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const json& row = m[i];
    if (!row.is_array() || row.size() != dim) {
      malformed(where + ": expected " + std::to_string(dim) + " columns");
    }
    for (std::size_t j = 0; j < dim; ++j) {
      out(i, j) = parse_entry(row[j], where);
    }
  }
  return out;
}

std::vector<ComplexMatrix> parse_operator_list(const json& list, std::size_t dim,
                                               const std::string& where) {
  if (!list.is_array() || list.size() != dim * dim) {
    malformed(where + ": expected " + std::to_string(dim * dim) + " operators");
  }
  std::vector<ComplexMatrix> out;
  out.reserve(list.size());
  for (std::size_t k = 0; k < list.size(); ++k) {
    out.push_back(parse_matrix(list[k], dim, where + "[" + std::to_string(k) + "]"));
  }
  return out;
}

std::map<std::string, std::string> parse_metadata(const json& j) {
  std::map<std::string, std::string> out;
  if (!j.contains("metadata")) {
    return out;
  }
  if (!j["metadata"].is_object()) {
    malformed("metadata must be an object");
  }
  for (const auto& [key, value] : j["metadata"].items()) {
    out[key] = value.is_string() ? value.get<std::string>() : value.dump();
  }
  return out;
}

// --- emission; numbers printed with 17 significant digits ---

void append_double(std::string& out, double v) {
  if (!std::isfinite(v)) {
    throw Error("emit: non-finite number");
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void append_string(std::string& out, const std::string& s) {
  out += '"';
  for (const char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
}

void append_entry(std::string& out, const Complex& z) {
  out += '[';
  append_double(out, z.real());
  out += ", ";
  append_double(out, z.imag());
  out += ']';
}

void append_matrix(std::string& out, const ComplexMatrix& m) {
  out += '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out += ", ";
    out += '[';
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ", ";
      append_entry(out, m(i, j));
    }
    out += ']';
  }
  out += ']';
}

void append_operator_list(std::string& out, const std::vector<ComplexMatrix>& ops) {
  out += '[';
  for (std::size_t k = 0; k < ops.size(); ++k) {
    if (k) out += ", ";
    append_matrix(out, ops[k]);
  }
  out += ']';
}

void append_metadata(std::string& out, const std::map<std::string, std::string>& metadata) {
  if (metadata.empty()) {
    return;
  }
  out += ", \"metadata\": {";
  bool first = true;
  for (const auto& [key, value] : metadata) {
    if (!first) out += ", ";
    first = false;
    append_string(out, key);
    out += ": ";
    append_string(out, value);
  }
  out += '}';
}

std::string document_head(const char* kind, std::size_t dim) {
  std::string out = "{\"schema_version\": \"";
  out += kSchemaVersion;
  out += "\", \"kind\": \"";
  out += kind;
  out += "\", \"dim\": ";
  out += std::to_string(dim);
  return out;
}

}  // namespace

SetDocument parse_set_document(const std::string& text) {
  const json j = parse_json(text);
  check_schema(j);
  SetDocument doc;
  doc.kind = get_kind(j);
  doc.dim = get_dim(j);
  doc.metadata = parse_metadata(j);
  if (doc.kind == "dequantizers" || doc.kind == "quantizers") {
    if (!j.contains("operators")) {
      malformed("missing operators");
    }
    doc.operators = parse_operator_list(j["operators"], doc.dim, "operators");
  } else if (doc.kind == "pair") {
    if (!j.contains("dequantizers") || !j.contains("quantizers")) {
      malformed("pair document needs dequantizers and quantizers");
    }
    doc.operators = parse_operator_list(j["dequantizers"], doc.dim, "dequantizers");
    doc.quantizers = parse_operator_list(j["quantizers"], doc.dim, "quantizers");
  } else {
    malformed("kind must be dequantizers, quantizers or pair; got '" + doc.kind + "'");
  }
  return doc;
}

OperatorDocument parse_operator_document(const std::string& text) {
  const json j = parse_json(text);
  check_schema(j);
  if (get_kind(j) != "operator") {
    malformed("kind must be operator");
  }
  OperatorDocument doc;
  doc.dim = get_dim(j);
  if (!j.contains("matrix")) {
    malformed("missing matrix");
  }
  doc.matrix = parse_matrix(j["matrix"], doc.dim, "matrix");
  doc.metadata = parse_metadata(j);
  return doc;
}

SymbolDocument parse_symbol_document(const std::string& text) {
  const json j = parse_json(text);
  check_schema(j);
  if (get_kind(j) != "symbol") {
    malformed("kind must be symbol");
  }
  SymbolDocument doc;
  doc.dim = get_dim(j);
  if (j.contains("set_label")) {
    if (!j["set_label"].is_string()) {
      malformed("set_label must be a string");
    }
    doc.set_label = j["set_label"].get<std::string>();
  }
  if (!j.contains("values") || !j["values"].is_array() ||
      j["values"].size() != doc.dim * doc.dim) {
    malformed("values must hold dim^2 entries");
  }
  for (std::size_t k = 0; k < j["values"].size(); ++k) {
    doc.values.push_back(parse_entry(j["values"][k], "values[" + std::to_string(k) + "]"));
  }
  return doc;
}

TransformDocument parse_transform_document(const std::string& text) {
  const json j = parse_json(text);
  check_schema(j);
  if (get_kind(j) != "transform") {
    malformed("kind must be transform");
  }
  TransformDocument doc;
  doc.dim = get_dim(j);
  if (!j.contains("L")) {
    malformed("missing L");
  }
  doc.l = parse_matrix(j["L"], doc.dim * doc.dim, "L");
  if (j.contains("M")) {
    doc.m = parse_matrix(j["M"], doc.dim * doc.dim, "M");
  }
  return doc;
}

std::string emit(const SetDocument& doc) {
  std::string out = document_head(doc.kind.c_str(), doc.dim);
  if (doc.kind == "pair") {
    out += ", \"dequantizers\": ";
    append_operator_list(out, doc.operators);
    out += ", \"quantizers\": ";
    append_operator_list(out, doc.quantizers);
  } else {
    out += ", \"operators\": ";
    append_operator_list(out, doc.operators);
  }
  append_metadata(out, doc.metadata);
  out += "}\n";
  return out;
}

std::string emit(const OperatorDocument& doc) {
  std::string out = document_head("operator", doc.dim);
  out += ", \"matrix\": ";
  append_matrix(out, doc.matrix);
  append_metadata(out, doc.metadata);
  out += "}\n";
  return out;
}

std::string emit(const SymbolDocument& doc) {
  std::string out = document_head("symbol", doc.dim);
  out += ", \"set_label\": ";
  append_string(out, doc.set_label);
  out += ", \"values\": [";
  for (std::size_t k = 0; k < doc.values.size(); ++k) {
    if (k) out += ", ";
    append_entry(out, doc.values[k]);
  }
  out += "]}\n";
  return out;
}

std::string emit(const TransformDocument& doc) {
  std::string out = document_head("transform", doc.dim);
  out += ", \"L\": ";
  append_matrix(out, doc.l);
  if (doc.m) {
    out += ", \"M\": ";
    append_matrix(out, *doc.m);
  }
  out += "}\n";
  return out;
}

OperatorSet to_operator_set(const SetDocument& doc) {
  std::string label;
  if (const auto it = doc.metadata.find("label"); it != doc.metadata.end()) {
    label = it->second;
  }
  return OperatorSet(doc.dim, doc.operators, std::move(label));
}

DualPair to_dual_pair(const SetDocument& doc, double eps) {
  if (doc.kind != "pair") {
    malformed("expected a pair document, got kind '" + doc.kind + "'");
  }
  std::string label;
  if (const auto it = doc.metadata.find("label"); it != doc.metadata.end()) {
    label = it->second;
  }
  OperatorSet deq(doc.dim, doc.operators, label);
  OperatorSet quant(doc.dim, doc.quantizers);
  return DualPair::certify(std::move(deq), std::move(quant), eps);
}

Symbol to_symbol(const SymbolDocument& doc) {
  Symbol f;
  f.dim = doc.dim;
  f.values = doc.values;
  f.set_label = doc.set_label;
  return f;
}

SetDocument from_operator_set(const OperatorSet& set, std::string kind) {
  SetDocument doc;
  doc.kind = std::move(kind);
  doc.dim = set.dim();
  doc.operators = set.ops();
  if (!set.label().empty()) {
    doc.metadata["label"] = set.label();
  }
  return doc;
}

SetDocument from_dual_pair(const DualPair& pair) {
  SetDocument doc;
  doc.kind = "pair";
  doc.dim = pair.dim();
  doc.operators = pair.dequantizers().ops();
  doc.quantizers = pair.quantizers().ops();
  if (!pair.dequantizers().label().empty()) {
    doc.metadata["label"] = pair.dequantizers().label();
  }
  return doc;
}

SymbolDocument from_symbol(const Symbol& f) {
  SymbolDocument doc;
  doc.dim = f.dim;
  doc.set_label = f.set_label;
  doc.values = f.values;
  return doc;
}

}  // namespace qdq::io
