#include "qdq/duality.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace qdq {

OperatorSet::OperatorSet(std::size_t dim, std::vector<ComplexMatrix> ops, std::string label)
    : dim_(dim), ops_(std::move(ops)), label_(std::move(label)) {
  if (dim_ == 0) {
    throw DimensionMismatchError("OperatorSet: dim must be positive");
  }
  if (ops_.size() != dim_ * dim_) {
    throw DimensionMismatchError("OperatorSet: expected " + std::to_string(dim_ * dim_) +
                                 " operators, got " + std::to_string(ops_.size()));
  }
  for (const ComplexMatrix& m : ops_) {
    if (m.rows() != dim_ || m.cols() != dim_) {
      throw DimensionMismatchError("OperatorSet: member is " + std::to_string(m.rows()) +
                                   "x" + std::to_string(m.cols()) + ", expected " +
                                   std::to_string(dim_) + "x" + std::to_string(dim_));
    }
    if (!m.all_finite()) {
      throw Error("OperatorSet: non-finite entry");
    }
  }
}

DualPair DualPair::certify(OperatorSet dequantizers, OperatorSet quantizers, double eps) {
  if (dequantizers.dim() != quantizers.dim()) {
    throw DimensionMismatchError("DualPair: dims " + std::to_string(dequantizers.dim()) +
                                 " vs " + std::to_string(quantizers.dim()));
  }
  const ComplexMatrix g = pairing_matrix(dequantizers, quantizers);
  const double dev = max_abs_diff(g, ComplexMatrix::identity(g.rows()));
  if (dev > eps) {
    throw CertificationFailedError("DualPair: pairing deviates from identity by " +
                                   std::to_string(dev) + " > " + std::to_string(eps));
  }
  return DualPair(std::move(dequantizers), std::move(quantizers), eps);
}

ComplexMatrix flatten_dequantizers(const OperatorSet& u) {
  const std::size_t d = u.dim();
  const std::size_t n = d * d;
  ComplexMatrix a(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const ComplexMatrix& m = u.op(k);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        a(k, i * d + j) = m(j, i);  // vec of the transpose
      }
    }
  }
  return a;
}

ComplexMatrix flatten_quantizers(const OperatorSet& dset) {
  const std::size_t d = dset.dim();
  const std::size_t n = d * d;
  ComplexMatrix b(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const ComplexMatrix& m = dset.op(k);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        b(k, i * d + j) = m(i, j);
      }
    }
  }
  return b;
}

OperatorSet unflatten_quantizers(std::size_t dim, const ComplexMatrix& b, std::string label) {
  const std::size_t n = dim * dim;
  if (b.rows() != n || b.cols() != n) {
    throw DimensionMismatchError("unflatten_quantizers: matrix is " +
                                 std::to_string(b.rows()) + "x" + std::to_string(b.cols()) +
                                 ", expected " + std::to_string(n) + "x" + std::to_string(n));
  }
  std::vector<ComplexMatrix> ops;
  ops.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    ComplexMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        m(i, j) = b(k, i * dim + j);
      }
    }
    ops.push_back(std::move(m));
  }
  return OperatorSet(dim, std::move(ops), std::move(label));
}

MinimalityReport check_minimal(const OperatorSet& u, const Tolerance& tol) {
  const ComplexMatrix a = flatten_dequantizers(u);
  MinimalityReport report;
  report.det_A = determinant(a);
  report.is_minimal = is_nonsingular(report.det_A, a, tol);
  report.condition_estimate = std::numeric_limits<double>::infinity();
  if (report.is_minimal) {
    try {
      const ComplexMatrix inv = solve_linear(a, ComplexMatrix::identity(a.rows()), tol);
      report.condition_estimate = a.max_abs() * inv.max_abs();
    } catch (const SingularError&) {
      // Determinant above threshold but a pivot collapsed anyway; report the
      // set as effectively degenerate instead of throwing.
      report.is_minimal = false;
    }
  }
  return report;
}

namespace {

bool all_hermitian(const OperatorSet& u, double eps) {
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (max_abs_diff(u.op(k), adjoint(u.op(k))) > eps) {
      return false;
    }
  }
  return true;
}

// Quantizers of a Hermitian set, solved in the real coordinates
// (diagonal entries; real and imaginary parts of the upper triangle).
// In these coordinates the pairing is the weighted real form
// Tr(U D) = sum_i u_ii d_ii + sum_{i<j} 2 (Re u_ij Re d_ij + Im u_ij Im d_ij),
// so solving the real system keeps the quantizers Hermitian exactly and the
// pairing deviation equal to the solver residual.
OperatorSet solve_hermitian_dual(const OperatorSet& u, const Tolerance& tol) {
  const std::size_t d = u.dim();
  const std::size_t n = d * d;
  ComplexMatrix weighted(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const ComplexMatrix& m = u.op(k);
    std::size_t col = 0;
    for (std::size_t i = 0; i < d; ++i) {
      weighted(k, col++) = Complex{m(i, i).real(), 0.0};
    }
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i + 1; j < d; ++j) {
        weighted(k, col++) = Complex{2.0 * m(i, j).real(), 0.0};
        weighted(k, col++) = Complex{2.0 * m(i, j).imag(), 0.0};
      }
    }
  }
  // weighted Q^T = I for the coordinate rows Q of the quantizers. All
  // entries are real, so elimination keeps the solution exactly real.
  const ComplexMatrix q_t = solve_linear(weighted, ComplexMatrix::identity(n), tol);
  std::vector<ComplexMatrix> ops;
  ops.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    ComplexMatrix m(d, d);
    std::size_t row = 0;
    for (std::size_t i = 0; i < d; ++i) {
      m(i, i) = Complex{q_t(row++, k).real(), 0.0};
    }
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i + 1; j < d; ++j) {
        const double re = q_t(row++, k).real();
        const double im = q_t(row++, k).real();
        m(i, j) = Complex{re, im};
        m(j, i) = Complex{re, -im};
      }
    }
    ops.push_back(std::move(m));
  }
  return OperatorSet(d, std::move(ops));
}

}  // namespace

DualPair solve_quantizers(const OperatorSet& u, const Tolerance& tol) {
  const MinimalityReport report = check_minimal(u, tol);
  if (!report.is_minimal) {
    throw SingularSetError("solve_quantizers: set is not minimal, |det A| = " +
                           std::to_string(std::abs(report.det_A)));
  }
  const std::string label = u.label().empty() ? "" : u.label() + "-dual";
  OperatorSet quantizers = [&] {
    if (all_hermitian(u, 1e-13)) {
      OperatorSet dual = solve_hermitian_dual(u, tol);
      dual.set_label(label);
      return dual;
    }
    const ComplexMatrix a = flatten_dequantizers(u);
    // A B^T = I, so B^T = A^{-1}.
    const ComplexMatrix b_t = solve_linear(a, ComplexMatrix::identity(a.rows()), tol);
    return unflatten_quantizers(u.dim(), transpose(b_t), label);
  }();
  return DualPair::certify(u, std::move(quantizers), tol.abs_eps);
}

ComplexMatrix pairing_matrix(const OperatorSet& u, const OperatorSet& d) {
  if (u.dim() != d.dim()) {
    throw DimensionMismatchError("pairing_matrix: dims " + std::to_string(u.dim()) + " vs " +
                                 std::to_string(d.dim()));
  }
  const std::size_t n = u.size();
  ComplexMatrix g(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t kp = 0; kp < n; ++kp) {
      g(k, kp) = trace_pairing(u.op(k), d.op(kp));
    }
  }
  return g;
}

DualityReport verify_duality(const DualPair& pair, const Tolerance& tol) {
  DualityReport report;
  const ComplexMatrix g = pairing_matrix(pair.dequantizers(), pair.quantizers());
  report.max_deviation = max_abs_diff(g, ComplexMatrix::identity(g.rows()));
  report.pass = report.max_deviation <= tol.abs_eps;
  const Complex det_a = determinant(flatten_dequantizers(pair.dequantizers()));
  const Complex det_b = determinant(flatten_quantizers(pair.quantizers()));
  report.det_product = det_a * det_b;
  report.det_deviation = std::abs(report.det_product - Complex{1.0, 0.0});
  return report;
}

}  // namespace qdq
