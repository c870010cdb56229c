#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qdq/duality.hpp"
#include "qdq/matkit.hpp"
#include "qdq/symbols.hpp"

namespace qdq::io {

inline constexpr const char* kSchemaVersion = "qdq/1";

/// On-disk form of an operator set ("dequantizers" or "quantizers") or of a
/// dual pair ("pair", with two operator lists).
struct SetDocument {
  std::string kind;
  std::size_t dim = 0;
  std::vector<ComplexMatrix> operators;   // dequantizers when kind == "pair"
  std::vector<ComplexMatrix> quantizers;  // only for kind == "pair"
  std::map<std::string, std::string> metadata;
};

/// A single operator (observable or density matrix).
struct OperatorDocument {
  std::size_t dim = 0;
  ComplexMatrix matrix;
  std::map<std::string, std::string> metadata;
};

struct SymbolDocument {
  std::size_t dim = 0;
  std::string set_label;
  std::vector<Complex> values;
};

/// A basis-change matrix L, optionally with the companion quantizer
/// transform M.
struct TransformDocument {
  std::size_t dim = 0;
  ComplexMatrix l;
  std::optional<ComplexMatrix> m;
};

/// Parsers throw MalformedDocumentError on any schema violation, including
/// non-finite or non-numeric entries.
SetDocument parse_set_document(const std::string& text);
OperatorDocument parse_operator_document(const std::string& text);
SymbolDocument parse_symbol_document(const std::string& text);
TransformDocument parse_transform_document(const std::string& text);

/// Emitters serialize numbers as decimal with 17 significant digits, so
/// parse(emit(x)) round-trips bit-exactly.
std::string emit(const SetDocument& doc);
std::string emit(const OperatorDocument& doc);
std::string emit(const SymbolDocument& doc);
std::string emit(const TransformDocument& doc);

OperatorSet to_operator_set(const SetDocument& doc);
DualPair to_dual_pair(const SetDocument& doc, double eps);
Symbol to_symbol(const SymbolDocument& doc);

SetDocument from_operator_set(const OperatorSet& set, std::string kind = "dequantizers");
SetDocument from_dual_pair(const DualPair& pair);
SymbolDocument from_symbol(const Symbol& f);

}  // namespace qdq::io
