#pragma once

#include "qdq/duality.hpp"
#include "qdq/matkit.hpp"

namespace qdq {

/// A non-degenerate change of dequantizer basis, V_j = Sum_k L[j][k] U_k.
class TransformMatrix {
 public:
  /// Validates shape (d^2 x d^2) and non-degeneracy.
  /// Throws DegenerateTransformError when |det L| falls below the threshold.
  TransformMatrix(std::size_t dim, ComplexMatrix l, const Tolerance& tol = {});

  static TransformMatrix identity(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  const ComplexMatrix& matrix() const noexcept { return l_; }
  const Complex& det() const noexcept { return det_; }

 private:
  std::size_t dim_;
  ComplexMatrix l_;
  Complex det_;
};

/// V_j = Sum_k L[j][k] u.ops[k].
OperatorSet apply_transform(const TransformMatrix& l, const OperatorSet& u);

/// L[j][k'] = Tr(v.ops[j] u.ops[k']); valid only against an orthonormal
/// reference set u. Throws NotOrthonormalBaseError when u fails validation.
TransformMatrix find_transform(const OperatorSet& v, const OperatorSet& u,
                               const Tolerance& tol = {});

/// General-u variant: solves the linear system relating the flattened sets,
/// with no orthonormality requirement on u (u must still be minimal).
TransformMatrix find_transform_general(const OperatorSet& v, const OperatorSet& u,
                                       const Tolerance& tol = {});

/// The companion quantizer transform M with L M^T = I.
TransformMatrix quantizer_transform(const TransformMatrix& l, const Tolerance& tol = {});

/// Transforms dequantizers by L and quantizers by the companion M, then
/// re-certifies at 10x the input certification level.
DualPair transform_pair(const TransformMatrix& l, const DualPair& pair,
                        const Tolerance& tol = {});

}  // namespace qdq
