#include "qdq/symbols.hpp"

#include <cmath>

namespace qdq {

Symbol symbol_of(const ComplexMatrix& a, const OperatorSet& u) {
  if (a.rows() != u.dim() || a.cols() != u.dim()) {
    throw DimensionMismatchError("symbol_of: operator is " + std::to_string(a.rows()) + "x" +
                                 std::to_string(a.cols()) + ", set has dim " +
                                 std::to_string(u.dim()));
  }
  Symbol f;
  f.dim = u.dim();
  f.set_label = u.label();
  f.values.reserve(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) {
    f.values.push_back(trace_pairing(a, u.op(k)));
  }
  return f;
}

ComplexMatrix reconstruct(const Symbol& f, const OperatorSet& d) {
  if (f.dim != d.dim() || f.values.size() != d.size()) {
    throw DimensionMismatchError("reconstruct: symbol dim " + std::to_string(f.dim) +
                                 " vs set dim " + std::to_string(d.dim()));
  }
  ComplexMatrix out(d.dim(), d.dim());
  for (std::size_t k = 0; k < d.size(); ++k) {
    out = out + f.values[k] * d.op(k);
  }
  return out;
}

Symbol star_direct(const ComplexMatrix& a, const ComplexMatrix& b, const OperatorSet& u) {
  return symbol_of(matmul(a, b), u);
}

StarKernel build_star_kernel(const DualPair& pair) {
  const OperatorSet& d = pair.quantizers();
  const OperatorSet& u = pair.dequantizers();
  const std::size_t n = d.size();
  StarKernel kernel(pair.dim());
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t nn = 0; nn < n; ++nn) {
      const ComplexMatrix product = matmul(d.op(m), d.op(nn));
      for (std::size_t k = 0; k < n; ++k) {
        kernel.at(m, nn, k) = trace_pairing(product, u.op(k));
      }
    }
  }
  return kernel;
}

Symbol star_apply(const Symbol& fa, const Symbol& fb, const StarKernel& kernel) {
  if (fa.dim != kernel.dim() || fb.dim != kernel.dim() ||
      fa.values.size() != kernel.size() || fb.values.size() != kernel.size()) {
    throw DimensionMismatchError("star_apply: symbol dims " + std::to_string(fa.dim) + ", " +
                                 std::to_string(fb.dim) + " vs kernel dim " +
                                 std::to_string(kernel.dim()));
  }
  const std::size_t n = kernel.size();
  Symbol out;
  out.dim = fa.dim;
  out.set_label = fa.set_label;
  out.values.assign(n, Complex{0.0, 0.0});
  for (std::size_t m = 0; m < n; ++m) {
    if (fa.values[m] == Complex{0.0, 0.0}) {
      continue;
    }
    for (std::size_t nn = 0; nn < n; ++nn) {
      const Complex w = fa.values[m] * fb.values[nn];
      if (w == Complex{0.0, 0.0}) {
        continue;
      }
      for (std::size_t k = 0; k < n; ++k) {
        out.values[k] += w * kernel.at(m, nn, k);
      }
    }
  }
  return out;
}

double projection_check(const Symbol& f, const DualPair& pair) {
  if (f.dim != pair.dim() || f.values.size() != pair.dequantizers().size()) {
    throw DimensionMismatchError("projection_check: symbol dim " + std::to_string(f.dim) +
                                 " vs pair dim " + std::to_string(pair.dim()));
  }
  const ComplexMatrix g = pairing_matrix(pair.quantizers(), pair.dequantizers());
  const std::size_t n = f.values.size();
  double worst = 0.0;
  for (std::size_t kp = 0; kp < n; ++kp) {
    Complex sum{0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
      sum += f.values[k] * g(k, kp);
    }
    worst = std::max(worst, std::abs(sum - f.values[kp]));
  }
  return worst;
}

}  // namespace qdq
