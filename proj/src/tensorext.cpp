#include "qdq/tensorext.hpp"

#include <algorithm>

#include "qdq/matkit.hpp"

namespace qdq {

OperatorSet tensor_sets(const OperatorSet& a, const OperatorSet& b) {
  std::vector<ComplexMatrix> ops;
  ops.reserve(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      ops.push_back(kron(a.op(i), b.op(j)));
    }
  }
  std::string label;
  if (!a.label().empty() || !b.label().empty()) {
    label = a.label() + "(x)" + b.label();
  }
  return OperatorSet(a.dim() * b.dim(), std::move(ops), std::move(label));
}

DualPair tensor_pair(const DualPair& a, const DualPair& b) {
  OperatorSet deq = tensor_sets(a.dequantizers(), b.dequantizers());
  OperatorSet quant = tensor_sets(a.quantizers(), b.quantizers());
  const double eps = 10.0 * std::max(a.certified_eps(), b.certified_eps());
  return DualPair::certify(std::move(deq), std::move(quant), eps);
}

ParameterCount parameter_count(std::uint64_t d) {
  if (d < 2) {
    throw DimensionMismatchError("parameter_count: d must be at least 2");
  }
  const std::uint64_t n = d * d;
  return ParameterCount{n * n, n * (n + 1) / 2};
}

}  // namespace qdq
