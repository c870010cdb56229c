#include "qdq/matkit.hpp"

#include <cmath>
#include <utility>

namespace qdq {

namespace {

void require_square(const ComplexMatrix& m, const char* op) {
  if (!m.is_square()) {
    throw NonSquareError(std::string(op) + ": matrix is " + std::to_string(m.rows()) +
                         "x" + std::to_string(m.cols()));
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatchError(std::string(op) + ": shapes " + std::to_string(a.rows()) +
                                 "x" + std::to_string(a.cols()) + " vs " +
                                 std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) {
      throw DimensionMismatchError("ComplexMatrix: ragged initializer rows");
    }
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw DimensionMismatchError("ComplexMatrix: entry count " +
                                 std::to_string(entries_.size()) + " != " +
                                 std::to_string(rows_ * cols_));
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 1.0;
  }
  return m;
}

bool ComplexMatrix::all_finite() const noexcept {
  for (const Complex& z : entries_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      return false;
    }
  }
  return true;
}

double ComplexMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (const Complex& z : entries_) {
    m = std::max(m, std::abs(z));
  }
  return m;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "operator+");
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out(i, j) = a(i, j) + b(i, j);
    }
  }
  return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "operator-");
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out(i, j) = a(i, j) - b(i, j);
    }
  }
  return out;
}

ComplexMatrix operator*(const Complex& s, const ComplexMatrix& m) {
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out(i, j) = s * m(i, j);
    }
  }
  return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }

Complex trace(const ComplexMatrix& m) {
  require_square(m, "trace");
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < m.rows(); ++i) {
    sum += m(i, i);
  }
  return sum;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatchError("matmul: " + std::to_string(a.rows()) + "x" +
                                 std::to_string(a.cols()) + " times " +
                                 std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) {
        out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

ComplexMatrix transpose(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out(j, i) = m(i, j);
    }
  }
  return out;
}

ComplexMatrix adjoint(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out(j, i) = std::conj(m(i, j));
    }
  }
  return out;
}

Complex determinant(const ComplexMatrix& m) {
  require_square(m, "determinant");
  const std::size_t n = m.rows();
  if (n == 0) {
    return Complex{1.0, 0.0};
  }
  ComplexMatrix work = m;
  Complex det{1.0, 0.0};
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(work(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double mag = std::abs(work(r, col));
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (best == 0.0) {
      return Complex{0.0, 0.0};
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(work(pivot, j), work(col, j));
      }
      det = -det;
    }
    det *= work(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex factor = work(r, col) / work(col, col);
      for (std::size_t j = col; j < n; ++j) {
        work(r, j) -= factor * work(col, j);
      }
    }
  }
  return det;
}

namespace {

// Factored form of a square matrix: L\U in one body plus the row permutation.
struct LuFactors {
  ComplexMatrix lu;
  std::vector<std::size_t> perm;
};

LuFactors lu_factorize(const ComplexMatrix& a, const Tolerance& tol) {
  const std::size_t n = a.rows();
  const double pivot_floor = tol.det_eps * a.max_abs();
  LuFactors f{a, std::vector<std::size_t>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    f.perm[i] = i;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(f.lu(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double mag = std::abs(f.lu(r, col));
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (best <= pivot_floor) {
      throw SingularError("solve_linear: pivot " + std::to_string(best) +
                          " below threshold " + std::to_string(pivot_floor));
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(f.lu(pivot, j), f.lu(col, j));
      }
      std::swap(f.perm[pivot], f.perm[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex factor = f.lu(r, col) / f.lu(col, col);
      f.lu(r, col) = factor;
      for (std::size_t j = col + 1; j < n; ++j) {
        f.lu(r, j) -= factor * f.lu(col, j);
      }
    }
  }
  return f;
}

ComplexMatrix lu_solve(const LuFactors& f, const ComplexMatrix& rhs) {
  const std::size_t n = f.lu.rows();
  ComplexMatrix x(n, rhs.cols());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < rhs.cols(); ++j) {
      x(i, j) = rhs(f.perm[i], j);
    }
  }
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex factor = f.lu(r, col);
      for (std::size_t j = 0; j < x.cols(); ++j) {
        x(r, j) -= factor * x(col, j);
      }
    }
  }
  for (std::size_t col = n; col-- > 0;) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      Complex sum = x(col, j);
      for (std::size_t k = col + 1; k < n; ++k) {
        sum -= f.lu(col, k) * x(k, j);
      }
      x(col, j) = sum / f.lu(col, col);
    }
  }
  return x;
}

// rhs - a x, accumulated in extended precision so iterative refinement can
// push the forward error down to representation level.
ComplexMatrix residual_extended(const ComplexMatrix& a, const ComplexMatrix& x,
                                const ComplexMatrix& rhs) {
  using LComplex = std::complex<long double>;
  const std::size_t n = a.rows();
  ComplexMatrix r(n, x.cols());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      LComplex sum{rhs(i, j).real(), rhs(i, j).imag()};
      for (std::size_t k = 0; k < n; ++k) {
        sum -= LComplex{a(i, k).real(), a(i, k).imag()} *
               LComplex{x(k, j).real(), x(k, j).imag()};
      }
      r(i, j) = Complex{static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
    }
  }
  return r;
}

}  // namespace

ComplexMatrix solve_linear(const ComplexMatrix& a, const ComplexMatrix& rhs,
                           const Tolerance& tol) {
  require_square(a, "solve_linear");
  if (a.rows() != rhs.rows()) {
    throw DimensionMismatchError("solve_linear: lhs is " + std::to_string(a.rows()) +
                                 "x" + std::to_string(a.cols()) + ", rhs has " +
                                 std::to_string(rhs.rows()) + " rows");
  }
  const LuFactors f = lu_factorize(a, tol);
  ComplexMatrix x = lu_solve(f, rhs);
  // Two refinement sweeps cover every conditioning this toolkit meets.
  for (int step = 0; step < 2; ++step) {
    const ComplexMatrix r = residual_extended(a, x, rhs);
    if (r.max_abs() == 0.0) {
      break;
    }
    x = x + lu_solve(f, r);
  }
  return x;
}

ComplexMatrix cofactor_matrix(const ComplexMatrix& m) {
  require_square(m, "cofactor_matrix");
  const std::size_t n = m.rows();
  if (n == 1) {
    ComplexMatrix out(1, 1);
    out(0, 0) = 1.0;
    return out;
  }
  ComplexMatrix out(n, n);
  ComplexMatrix minor(n - 1, n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t r = 0, mr = 0; r < n; ++r) {
        if (r == i) {
          continue;
        }
        for (std::size_t c = 0, mc = 0; c < n; ++c) {
          if (c == j) {
            continue;
          }
          minor(mr, mc) = m(r, c);
          ++mc;
        }
        ++mr;
      }
      const Complex d = determinant(minor);
      out(i, j) = ((i + j) % 2 == 0) ? d : -d;
    }
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
      }
    }
  }
  return out;
}

Complex trace_pairing(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
    throw DimensionMismatchError("trace_pairing: need equal square matrices, got " +
                                 std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                 " and " + std::to_string(b.rows()) + "x" +
                                 std::to_string(b.cols()));
  }
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      sum += a(i, j) * b(j, i);
    }
  }
  return sum;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      m = std::max(m, std::abs(a(i, j) - b(i, j)));
    }
  }
  return m;
}

bool is_nonsingular(const Complex& det, const ComplexMatrix& m, const Tolerance& tol) {
  const double scale = m.max_abs();
  const double threshold = tol.det_eps * std::pow(scale, static_cast<double>(m.rows()));
  return std::abs(det) > threshold;
}

}  // namespace qdq
