#include "doctest.h"

#include "qdq/io.hpp"
#include "qdq/selfdual.hpp"
#include "qdq/symbols.hpp"
#include "testutil.hpp"

using namespace qdq;

TEST_CASE("set documents round trip bit-exactly") {
  testutil::Rng rng(71);
  const OperatorSet set = testutil::random_hermitian_set(rng);
  io::SetDocument doc = io::from_operator_set(set);
  doc.metadata["label"] = "random-set";
  doc.metadata["note"] = "quotes \" and \\ backslashes \n survive";

  const io::SetDocument back = io::parse_set_document(io::emit(doc));
  CHECK(back.kind == doc.kind);
  CHECK(back.dim == doc.dim);
  CHECK(back.metadata == doc.metadata);
  REQUIRE(back.operators.size() == doc.operators.size());
  for (std::size_t k = 0; k < doc.operators.size(); ++k) {
    // Bit-exact: every entry reparses to the same double.
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        CHECK(back.operators[k](i, j) == doc.operators[k](i, j));
      }
    }
  }
}

TEST_CASE("pair documents carry both operator lists") {
  const DualPair pair = solve_quantizers(preset("family2-paper"));
  const std::string text = io::emit(io::from_dual_pair(pair));
  const io::SetDocument doc = io::parse_set_document(text);
  CHECK(doc.kind == "pair");
  CHECK(doc.operators.size() == 4);
  CHECK(doc.quantizers.size() == 4);
  const DualPair back = io::to_dual_pair(doc, 1e-10);
  CHECK(max_abs_diff(back.quantizers().op(2), pair.quantizers().op(2)) == 0.0);
}

TEST_CASE("symbol documents round trip") {
  const DualPair pair = solve_quantizers(preset("family3-paper"));
  const Symbol f = symbol_of(ComplexMatrix{{0.7, 0.0}, {0.0, 0.3}}, pair.dequantizers());
  const io::SymbolDocument doc = io::from_symbol(f);
  const io::SymbolDocument back = io::parse_symbol_document(io::emit(doc));
  CHECK(back.dim == 2);
  CHECK(back.set_label == f.set_label);
  REQUIRE(back.values.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(back.values[k] == f.values[k]);
  }
}

TEST_CASE("operator and transform documents round trip") {
  testutil::Rng rng(72);
  io::OperatorDocument op;
  op.dim = 2;
  op.matrix = testutil::random_matrix(rng, 2);
  const io::OperatorDocument op_back = io::parse_operator_document(io::emit(op));
  CHECK(op_back.matrix(1, 1) == op.matrix(1, 1));

  io::TransformDocument tr;
  tr.dim = 2;
  tr.l = testutil::random_matrix(rng, 4);
  tr.m = testutil::random_matrix(rng, 4);
  const io::TransformDocument tr_back = io::parse_transform_document(io::emit(tr));
  CHECK(tr_back.l(3, 2) == tr.l(3, 2));
  REQUIRE(tr_back.m.has_value());
  CHECK((*tr_back.m)(0, 3) == (*tr.m)(0, 3));
}

TEST_CASE("malformed documents are rejected with MalformedDocumentError") {
  // Not JSON at all.
  CHECK_THROWS_AS(io::parse_set_document("not json"), MalformedDocumentError);
  // Wrong schema version.
  CHECK_THROWS_AS(io::parse_set_document(
                      R"({"schema_version":"qdq/2","kind":"dequantizers","dim":2,"operators":[]})"),
                  MalformedDocumentError);
  // Missing kind.
  CHECK_THROWS_AS(io::parse_set_document(R"({"schema_version":"qdq/1","dim":2})"),
                  MalformedDocumentError);
  // Wrong operator count.
  CHECK_THROWS_AS(io::parse_set_document(
                      R"({"schema_version":"qdq/1","kind":"dequantizers","dim":2,
                          "operators":[[[[1,0],[0,0]],[[0,0],[0,0]]]]})"),
                  MalformedDocumentError);
  // Ragged matrix.
  CHECK_THROWS_AS(
      io::parse_set_document(
          R"({"schema_version":"qdq/1","kind":"dequantizers","dim":2,
              "operators":[[[[1,0]],[[0,0],[0,0]]],
                           [[[1,0],[0,0]],[[0,0],[0,0]]],
                           [[[1,0],[0,0]],[[0,0],[0,0]]],
                           [[[1,0],[0,0]],[[0,0],[0,0]]]]})"),
      MalformedDocumentError);
  // Non-numeric entry.
  CHECK_THROWS_AS(
      io::parse_set_document(
          R"({"schema_version":"qdq/1","kind":"dequantizers","dim":2,
              "operators":[[[["x",0],[0,0]],[[0,0],[0,0]]],
                           [[[1,0],[0,0]],[[0,0],[0,0]]],
                           [[[1,0],[0,0]],[[0,0],[0,0]]],
                           [[[1,0],[0,0]],[[0,0],[0,0]]]]})"),
      MalformedDocumentError);
  // dim zero.
  CHECK_THROWS_AS(io::parse_set_document(
                      R"({"schema_version":"qdq/1","kind":"dequantizers","dim":0,"operators":[]})"),
                  MalformedDocumentError);
  // Pair without quantizers.
  CHECK_THROWS_AS(io::parse_set_document(
                      R"({"schema_version":"qdq/1","kind":"pair","dim":2,"dequantizers":[]})"),
                  MalformedDocumentError);
  // Symbol with wrong value count.
  CHECK_THROWS_AS(io::parse_symbol_document(
                      R"({"schema_version":"qdq/1","kind":"symbol","dim":2,"values":[[1,0]]})"),
                  MalformedDocumentError);
}

TEST_CASE("17 significant digits appear in the emitted text") {
  io::OperatorDocument op;
  op.dim = 1;
  op.matrix = ComplexMatrix(1, 1);
  op.matrix(0, 0) = Complex{1.0 / 3.0, 0.0};
  const std::string text = io::emit(op);
  CHECK(text.find("0.33333333333333331") != std::string::npos);
}
