#pragma once

#include <string>
#include <vector>

#include "qdq/matkit.hpp"

namespace qdq {

/// An ordered family of exactly d^2 operators on a d-dimensional system,
/// the candidate minimal set of dequantizers or quantizers.
class OperatorSet {
 public:
  /// Validates count (dim^2), member shape (dim x dim) and finiteness.
  OperatorSet(std::size_t dim, std::vector<ComplexMatrix> ops, std::string label = "");

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return ops_.size(); }
  const ComplexMatrix& op(std::size_t k) const { return ops_.at(k); }
  const std::vector<ComplexMatrix>& ops() const noexcept { return ops_; }

  const std::string& label() const noexcept { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

 private:
  std::size_t dim_;
  std::vector<ComplexMatrix> ops_;
  std::string label_;
};

/// A dequantizer set and its quantizers, certified to satisfy
/// Tr(U_k D_k') = delta(k,k') within certified_eps.
class DualPair {
 public:
  /// Verifies the duality condition and records eps as the certification
  /// level. Throws CertificationFailedError if the pairing deviates from the
  /// identity by more than eps, DimensionMismatchError on unequal dims.
  static DualPair certify(OperatorSet dequantizers, OperatorSet quantizers, double eps);

  const OperatorSet& dequantizers() const noexcept { return dequantizers_; }
  const OperatorSet& quantizers() const noexcept { return quantizers_; }
  double certified_eps() const noexcept { return certified_eps_; }
  std::size_t dim() const noexcept { return dequantizers_.dim(); }

 private:
  DualPair(OperatorSet dequantizers, OperatorSet quantizers, double eps)
      : dequantizers_(std::move(dequantizers)),
        quantizers_(std::move(quantizers)),
        certified_eps_(eps) {}

  OperatorSet dequantizers_;
  OperatorSet quantizers_;
  double certified_eps_;
};

struct MinimalityReport {
  bool is_minimal = false;
  Complex det_A{0.0, 0.0};
  /// max-entry-norm(A) * max-entry-norm(A^-1), +inf when not invertible.
  double condition_estimate = 0.0;
};

struct DualityReport {
  double max_deviation = 0.0;
  bool pass = false;
  /// det(A) * det(B); equals 1 for an exact dual pair.
  Complex det_product{0.0, 0.0};
  double det_deviation = 0.0;
};

/// The flattened matrix A: row k is the row-major vectorization of the
/// transpose of u.ops[k], so that (A B^T)_{kk'} = Tr(U_k D_k').
ComplexMatrix flatten_dequantizers(const OperatorSet& u);

/// The flattened matrix B: row k is the row-major vectorization of d.ops[k].
ComplexMatrix flatten_quantizers(const OperatorSet& d);

/// Inverse of flatten_quantizers: reads each row of B back as a dim x dim
/// operator.
OperatorSet unflatten_quantizers(std::size_t dim, const ComplexMatrix& b,
                                 std::string label = "");

/// Linear independence test via det(A); degenerate sets report
/// is_minimal = false rather than throwing.
MinimalityReport check_minimal(const OperatorSet& u, const Tolerance& tol = {});

/// Solves A B^T = I for the quantizers of a minimal dequantizer set and
/// certifies the pair at tol.abs_eps. Throws SingularSetError when the set
/// is not minimal.
DualPair solve_quantizers(const OperatorSet& u, const Tolerance& tol = {});

/// G[k][k'] = Tr(u.ops[k] d.ops[k']).
ComplexMatrix pairing_matrix(const OperatorSet& u, const OperatorSet& d);

/// Recomputes the pairing and the determinant reciprocity det(A)det(B) = 1.
DualityReport verify_duality(const DualPair& pair, const Tolerance& tol = {});

}  // namespace qdq
