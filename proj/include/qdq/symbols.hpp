#pragma once

#include <string>
#include <vector>

#include "qdq/duality.hpp"
#include "qdq/matkit.hpp"

namespace qdq {

/// The length-d^2 symbol f_A(k) of an operator in a given dequantizer set.
struct Symbol {
  std::size_t dim = 0;
  std::vector<Complex> values;
  std::string set_label;
};

/// Structure constants K[m][n][k] = Tr(D_m D_n U_k), evaluating the star
/// product entirely at the symbol level.
class StarKernel {
 public:
  explicit StarKernel(std::size_t dim)
      : dim_(dim), n_(dim * dim), k3_(n_ * n_ * n_, Complex{0.0, 0.0}) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return n_; }

  Complex& at(std::size_t m, std::size_t n, std::size_t k) {
    return k3_[(m * n_ + n) * n_ + k];
  }
  const Complex& at(std::size_t m, std::size_t n, std::size_t k) const {
    return k3_[(m * n_ + n) * n_ + k];
  }

 private:
  std::size_t dim_;
  std::size_t n_;
  std::vector<Complex> k3_;
};

/// values[k] = Tr(a U_k). Throws DimensionMismatchError.
Symbol symbol_of(const ComplexMatrix& a, const OperatorSet& u);

/// Sum_k f[k] d.ops[k]. Throws DimensionMismatchError.
ComplexMatrix reconstruct(const Symbol& f, const OperatorSet& d);

/// Symbol of the operator product, Tr(a b U_k).
Symbol star_direct(const ComplexMatrix& a, const ComplexMatrix& b, const OperatorSet& u);

/// Full d^2 x d^2 x d^2 kernel by direct triple products.
StarKernel build_star_kernel(const DualPair& pair);

/// out[k] = Sum_{m,n} fa[m] fb[n] K[m][n][k].
Symbol star_apply(const Symbol& fa, const Symbol& fb, const StarKernel& kernel);

/// Applies the identity f(k') = Sum_k f(k) Tr(D_k U_k') and returns the
/// largest deviation from f itself. Small for certified pairs.
double projection_check(const Symbol& f, const DualPair& pair);

}  // namespace qdq
