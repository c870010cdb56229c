#include "doctest.h"

#include <cmath>

#include "qdq/selfdual.hpp"
#include "qdq/symbols.hpp"
#include "qdq/tensorext.hpp"
#include "testutil.hpp"

using namespace qdq;

TEST_CASE("tensor of the third family with itself is a 16-operator self-dual set") {
  const OperatorSet u = preset("family3-paper");
  const OperatorSet two = tensor_sets(u, u);
  CHECK(two.dim() == 4);
  CHECK(two.size() == 16);
  CHECK(validate_selfdual(two, Tolerance{1e-12, 1e-12}).max_gram_deviation < 1e-12);
}

TEST_CASE("tensor of matrix units gives the matrix units of the composite space") {
  const OperatorSet units = preset("matrix-units");
  const OperatorSet two = tensor_sets(units, units);
  CHECK(two.size() == 16);
  for (std::size_t k = 0; k < 16; ++k) {
    // Each member must be a 4x4 matrix unit: exactly one entry equal to one.
    int ones = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        const Complex z = two.op(k)(i, j);
        if (std::abs(z - Complex{1.0, 0.0}) < 1e-15) {
          ++ones;
        } else {
          CHECK(std::abs(z) < 1e-15);
        }
      }
    }
    CHECK(ones == 1);
  }
}

TEST_CASE("gram of a tensor set factorizes as a Kronecker product") {
  for (const char* left : {"family1-paper", "wigner-aam", "matrix-units"}) {
    for (const char* right : {"family3-paper", "wigner-erl"}) {
      const OperatorSet a = preset(left);
      const OperatorSet b = preset(right);
      const ComplexMatrix composite = pairing_matrix(tensor_sets(a, b), tensor_sets(a, b));
      const ComplexMatrix factored = kron(pairing_matrix(a, a), pairing_matrix(b, b));
      CHECK(max_abs_diff(composite, factored) < 1e-12);
    }
  }
}

TEST_CASE("tensor sets of minimal factors stay minimal") {
  for (const char* left : {"family2-paper", "matrix-units", "wigner-erl"}) {
    const OperatorSet a = preset(left);
    const OperatorSet two = tensor_sets(a, preset("family3-paper"));
    CHECK(check_minimal(two).is_minimal);
  }
}

TEST_CASE("lexicographic ordering makes kron associative at the set level") {
  const OperatorSet a = preset("family3-paper");
  const OperatorSet b = preset("matrix-units");
  const OperatorSet c = preset("pauli-orthonormal");
  const OperatorSet left = tensor_sets(tensor_sets(a, b), c);
  const OperatorSet right = tensor_sets(a, tensor_sets(b, c));
  REQUIRE(left.size() == right.size());
  for (std::size_t k = 0; k < left.size(); ++k) {
    CHECK(max_abs_diff(left.op(k), right.op(k)) == 0.0);
  }
}

TEST_CASE("tensor pair of self-dual pairs stays self-dual") {
  const DualPair one = solve_quantizers(preset("family3-paper"));
  const DualPair two = tensor_pair(one, one);
  CHECK(two.dim() == 4);
  for (std::size_t k = 0; k < 16; ++k) {
    CHECK(max_abs_diff(two.dequantizers().op(k), two.quantizers().op(k)) < 1e-12);
  }
  CHECK(two.certified_eps() <= 10.0 * one.certified_eps());
}

TEST_CASE("tensor pair of the matrix-unit pair pairs to the 16x16 identity") {
  const DualPair one = solve_quantizers(preset("matrix-units"));
  const DualPair two = tensor_pair(one, one);
  const ComplexMatrix g = pairing_matrix(two.dequantizers(), two.quantizers());
  CHECK(max_abs_diff(g, ComplexMatrix::identity(16)) < 1e-12);
}

TEST_CASE("two-qubit symbol round trip") {
  testutil::Rng rng(61);
  const DualPair one = solve_quantizers(preset("family3-paper"));
  const DualPair two = tensor_pair(one, one);
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix a = testutil::random_hermitian(rng, 4);
    const ComplexMatrix back = reconstruct(symbol_of(a, two.dequantizers()), two.quantizers());
    CHECK(max_abs_diff(back, a) < 1e-9);
  }
}

TEST_CASE("parameter and constraint counts") {
  const ParameterCount two = parameter_count(2);
  CHECK(two.params == 16);
  CHECK(two.constraints == 10);

  const ParameterCount three = parameter_count(3);
  CHECK(three.params == 81);
  CHECK(three.constraints == 45);

  const ParameterCount four = parameter_count(4);
  CHECK(four.params == 256);
  CHECK(four.constraints == 136);

  CHECK_THROWS_AS(parameter_count(1), DimensionMismatchError);
}
