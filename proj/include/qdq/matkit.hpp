#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "qdq/errors.hpp"

namespace qdq {

using Complex = std::complex<double>;

/// Numerical thresholds shared across the toolkit.
///
/// abs_eps is the entrywise comparison tolerance; det_eps scales the
/// singularity threshold |det| > det_eps * scale^n, where scale is the
/// largest absolute entry of the matrix.
struct Tolerance {
  double abs_eps = 1e-10;
  double det_eps = 1e-12;
};

/// Dense row-major complex matrix.
///
/// Every matrix in this toolkit is at most d^2 x d^2 with d <= 4, so the
/// kernel sticks to plain O(n^3) elimination and makes no attempt at
/// anything fancier.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  /// rows x cols matrix of zeros.
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0.0, 0.0}) {}

  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  const std::vector<Complex>& entries() const noexcept { return entries_; }

  bool all_finite() const noexcept;

  /// Largest absolute entry; the scale used by singularity thresholds.
  double max_abs() const noexcept;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const Complex& s, const ComplexMatrix& m);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

/// Sum of diagonal entries. Throws NonSquareError.
Complex trace(const ComplexMatrix& m);

/// Standard matrix product. Throws DimensionMismatchError if a.cols != b.rows.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix transpose(const ComplexMatrix& m);

/// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix& m);

/// Determinant by partial-pivot elimination. Throws NonSquareError.
Complex determinant(const ComplexMatrix& m);

/// Solves a * X = rhs by Gaussian elimination with partial pivoting.
/// Throws SingularError when a pivot falls below det_eps * max_abs(a).
ComplexMatrix solve_linear(const ComplexMatrix& a, const ComplexMatrix& rhs,
                           const Tolerance& tol = {});

/// Matrix of signed minors C[i][j] = (-1)^{i+j} det(minor(m, i, j)).
/// Satisfies m * transpose(C) = det(m) * I.
ComplexMatrix cofactor_matrix(const ComplexMatrix& m);

/// Kronecker product; dimensions multiply.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tr(a b), without conjugation. Throws DimensionMismatchError unless both
/// are square of equal dimension.
Complex trace_pairing(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest entrywise |a - b|. Throws DimensionMismatchError on shape mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// True when |det| clears the scale-aware singularity threshold
/// det_eps * max_abs(m)^n.
bool is_nonsingular(const Complex& det, const ComplexMatrix& m, const Tolerance& tol = {});

}  // namespace qdq
