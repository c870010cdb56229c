#include "qdq/transforms.hpp"

#include <cmath>
#include <utility>

namespace qdq {

TransformMatrix::TransformMatrix(std::size_t dim, ComplexMatrix l, const Tolerance& tol)
    : dim_(dim), l_(std::move(l)) {
  const std::size_t n = dim * dim;
  if (l_.rows() != n || l_.cols() != n) {
    throw DimensionMismatchError("TransformMatrix: matrix is " + std::to_string(l_.rows()) +
                                 "x" + std::to_string(l_.cols()) + ", expected " +
                                 std::to_string(n) + "x" + std::to_string(n));
  }
  if (!l_.all_finite()) {
    throw Error("TransformMatrix: non-finite entry");
  }
  det_ = determinant(l_);
  if (!is_nonsingular(det_, l_, tol)) {
    throw DegenerateTransformError("TransformMatrix: |det| = " +
                                   std::to_string(std::abs(det_)) + " is degenerate");
  }
}

TransformMatrix TransformMatrix::identity(std::size_t dim) {
  return TransformMatrix(dim, ComplexMatrix::identity(dim * dim));
}

OperatorSet apply_transform(const TransformMatrix& l, const OperatorSet& u) {
  if (l.dim() != u.dim()) {
    throw DimensionMismatchError("apply_transform: transform dim " + std::to_string(l.dim()) +
                                 " vs set dim " + std::to_string(u.dim()));
  }
  const std::size_t n = u.size();
  const ComplexMatrix& m = l.matrix();
  std::vector<ComplexMatrix> out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    ComplexMatrix v(u.dim(), u.dim());
    for (std::size_t k = 0; k < n; ++k) {
      v = v + m(j, k) * u.op(k);
    }
    out.push_back(std::move(v));
  }
  return OperatorSet(u.dim(), std::move(out));
}

TransformMatrix find_transform(const OperatorSet& v, const OperatorSet& u,
                               const Tolerance& tol) {
  if (v.dim() != u.dim()) {
    throw DimensionMismatchError("find_transform: dims " + std::to_string(v.dim()) + " vs " +
                                 std::to_string(u.dim()));
  }
  const ComplexMatrix gram = pairing_matrix(u, u);
  const double gram_dev = max_abs_diff(gram, ComplexMatrix::identity(gram.rows()));
  if (gram_dev > tol.abs_eps) {
    throw NotOrthonormalBaseError("find_transform: reference set deviates from "
                                  "orthonormality by " +
                                  std::to_string(gram_dev));
  }
  return TransformMatrix(u.dim(), pairing_matrix(v, u), tol);
}

TransformMatrix find_transform_general(const OperatorSet& v, const OperatorSet& u,
                                       const Tolerance& tol) {
  if (v.dim() != u.dim()) {
    throw DimensionMismatchError("find_transform_general: dims " + std::to_string(v.dim()) +
                                 " vs " + std::to_string(u.dim()));
  }
  // Flattening is linear in the operators, so V_j = Sum_k L[j][k] U_k reads
  // A_v = L A_u, i.e. A_u^T L^T = A_v^T.
  const ComplexMatrix a_u = flatten_dequantizers(u);
  const ComplexMatrix a_v = flatten_dequantizers(v);
  ComplexMatrix l_t;
  try {
    l_t = solve_linear(transpose(a_u), transpose(a_v), tol);
  } catch (const SingularError&) {
    throw SingularSetError("find_transform_general: reference set is not minimal");
  }
  return TransformMatrix(u.dim(), transpose(l_t), tol);
}

TransformMatrix quantizer_transform(const TransformMatrix& l, const Tolerance& tol) {
  // L M^T = I, so M^T = L^{-1}.
  const ComplexMatrix m_t =
      solve_linear(l.matrix(), ComplexMatrix::identity(l.matrix().rows()), tol);
  return TransformMatrix(l.dim(), transpose(m_t), tol);
}

DualPair transform_pair(const TransformMatrix& l, const DualPair& pair, const Tolerance& tol) {
  OperatorSet new_deq = apply_transform(l, pair.dequantizers());
  OperatorSet new_quant = apply_transform(quantizer_transform(l, tol), pair.quantizers());
  return DualPair::certify(std::move(new_deq), std::move(new_quant),
                           10.0 * pair.certified_eps());
}

}  // namespace qdq
