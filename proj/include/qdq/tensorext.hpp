#pragma once

#include <cstdint>

#include "qdq/duality.hpp"

namespace qdq {

/// Composite set of kron(a.ops[i], b.ops[j]) ordered lexicographically by
/// (i, j); dimension d_a * d_b.
OperatorSet tensor_sets(const OperatorSet& a, const OperatorSet& b);

/// Tensors dequantizers with dequantizers and quantizers with quantizers,
/// re-certifying at 10x the larger input certification level.
DualPair tensor_pair(const DualPair& a, const DualPair& b);

struct ParameterCount {
  std::uint64_t params = 0;
  std::uint64_t constraints = 0;
};

/// Free parameters (d^4) versus orthonormality constraints (d^2 (d^2+1) / 2)
/// for a minimal self-dual set in dimension d.
ParameterCount parameter_count(std::uint64_t d);

}  // namespace qdq
