#include "qdq/selfdual.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace qdq {

namespace {

constexpr double kNewtonResidualTol = 1e-12;
constexpr int kNewtonIterationCap = 100;

const Complex kI{0.0, 1.0};

ComplexMatrix off_diag_hermitian(double b, double c, double d) {
  return ComplexMatrix{{Complex{0.0, 0.0}, Complex{b, -c}}, {Complex{b, c}, Complex{d, 0.0}}};
}

void require_sign(int s, const char* field) {
  if (s != 1 && s != -1) {
    throw InfeasibleParamsError(field, std::string(field) + " must be +1 or -1");
  }
}

std::size_t param_index(Family1Param p) { return static_cast<std::size_t>(p); }

const char* param_name(Family1Param p) {
  switch (p) {
    case Family1Param::B2: return "b2";
    case Family1Param::C2: return "c2";
    case Family1Param::B3: return "b3";
    case Family1Param::C3: return "c3";
    case Family1Param::B4: return "b4";
    case Family1Param::C4: return "c4";
  }
  return "?";
}

// Normalization residuals g_k = 2 gamma^2 / alpha_k^2 + 2 b_k^2 + 2 c_k^2 - 1
// for k = 2, 3, 4, written without a square root so the expression stays
// defined on infeasible sign configurations during iteration.
std::array<double, 3> family1_residual(const std::array<double, 6>& p) {
  const double b2 = p[0], c2 = p[1], b3 = p[2], c3 = p[3], b4 = p[4], c4 = p[5];
  const double a2 = b3 * b4 + c3 * c4;
  const double a3 = b2 * b4 + c2 * c4;
  const double a4 = b2 * b3 + c2 * c3;
  if (std::min({std::abs(a2), std::abs(a3), std::abs(a4)}) < 1e-13) {
    return {1e6, 1e6, 1e6};
  }
  const double prod = a2 * a3 * a4;
  const std::array<std::array<double, 3>, 3> rows = {{{b2, c2, a2}, {b3, c3, a3}, {b4, c4, a4}}};
  std::array<double, 3> g{};
  for (std::size_t k = 0; k < 3; ++k) {
    const auto& [b, c, a] = rows[k];
    g[k] = -2.0 * prod / (a * a) + 2.0 * b * b + 2.0 * c * c - 1.0;
  }
  return g;
}

double merit(const std::array<double, 3>& r) {
  return r[0] * r[0] + r[1] * r[1] + r[2] * r[2];
}

double max_abs(const std::array<double, 3>& r) {
  return std::max({std::abs(r[0]), std::abs(r[1]), std::abs(r[2])});
}

bool all_finite(const std::array<double, 3>& r) {
  return std::isfinite(r[0]) && std::isfinite(r[1]) && std::isfinite(r[2]);
}

// Solves the 3x3 system m x = rhs by elimination; returns false when a pivot
// collapses.
bool solve3(std::array<std::array<double, 3>, 3> m, std::array<double, 3> rhs,
            std::array<double, 3>& x) {
  for (std::size_t col = 0; col < 3; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < 3; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) {
        pivot = r;
      }
    }
    if (std::abs(m[pivot][col]) < 1e-300) {
      return false;
    }
    std::swap(m[pivot], m[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (std::size_t r = col + 1; r < 3; ++r) {
      const double f = m[r][col] / m[col][col];
      for (std::size_t j = col; j < 3; ++j) {
        m[r][j] -= f * m[col][j];
      }
      rhs[r] -= f * rhs[col];
    }
  }
  for (std::size_t col = 3; col-- > 0;) {
    double sum = rhs[col];
    for (std::size_t k = col + 1; k < 3; ++k) {
      sum -= m[col][k] * x[k];
    }
    x[col] = sum / m[col][col];
  }
  return std::isfinite(x[0]) && std::isfinite(x[1]) && std::isfinite(x[2]);
}

}  // namespace

ComplexMatrix hermitian_matrix(const HermitianParam& p) {
  return ComplexMatrix{{Complex{p.a, 0.0}, Complex{p.b, -p.c}},
                       {Complex{p.b, p.c}, Complex{p.d, 0.0}}};
}

double pairwise_form(const HermitianParam& p, const HermitianParam& q) {
  return p.a * q.a + p.d * q.d + 2.0 * (p.b * q.b + p.c * q.c);
}

OperatorSet family1_build(const Family1Params& params, const Tolerance& tol) {
  require_sign(params.gamma_sign, "gamma_sign");
  const double a2 = params.alpha2();
  const double a3 = params.alpha3();
  const double a4 = params.alpha4();
  if (a2 == 0.0) throw InfeasibleParamsError("alpha2", "alpha2 = b3 b4 + c3 c4 vanishes");
  if (a3 == 0.0) throw InfeasibleParamsError("alpha3", "alpha3 = b2 b4 + c2 c4 vanishes");
  if (a4 == 0.0) throw InfeasibleParamsError("alpha4", "alpha4 = b2 b3 + c2 c3 vanishes");
  const double gamma_sq = params.gamma_squared();
  if (gamma_sq <= 0.0) {
    throw InfeasibleParamsError("alpha_product",
                                "alpha2 alpha3 alpha4 must be negative, got " +
                                    std::to_string(-gamma_sq));
  }
  const double gamma = params.gamma_sign * std::sqrt(gamma_sq);
  const std::array<std::array<double, 3>, 3> rows = {
      {{params.b2, params.c2, a2}, {params.b3, params.c3, a3}, {params.b4, params.c4, a4}}};
  for (const auto& [b, c, a] : rows) {
    const double residual = 2.0 * gamma_sq / (a * a) + 2.0 * b * b + 2.0 * c * c - 1.0;
    if (!std::isfinite(residual) || std::abs(residual) > tol.abs_eps) {
      throw InfeasibleParamsError("normalization",
                                  "normalization residual " + std::to_string(residual));
    }
  }
  std::vector<ComplexMatrix> ops;
  ops.reserve(4);
  ops.push_back(ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}});
  const double root2 = std::sqrt(2.0);
  for (const auto& [b, c, a] : rows) {
    ops.push_back(off_diag_hermitian(b, c, root2 * gamma / a));
  }
  return OperatorSet(2, std::move(ops), "family1");
}

Family1Params family1_solve(const std::array<Family1Assignment, 3>& given) {
  std::array<bool, 6> fixed{};
  std::array<double, 6> base{};
  for (const auto& [name, value] : given) {
    const std::size_t idx = param_index(name);
    if (fixed[idx]) {
      throw InfeasibleParamsError(param_name(name), "parameter fixed twice");
    }
    fixed[idx] = true;
    base[idx] = value;
  }
  std::array<std::size_t, 3> unknown{};
  std::size_t nu = 0;
  for (std::size_t i = 0; i < 6; ++i) {
    if (!fixed[i]) {
      unknown[nu++] = i;
    }
  }

  const auto residual_at = [&](const std::array<double, 3>& x) {
    std::array<double, 6> p = base;
    for (std::size_t i = 0; i < 3; ++i) {
      p[unknown[i]] = x[i];
    }
    return family1_residual(p);
  };

  for (const auto& signs : all_sign_triples()) {
    std::array<double, 3> x = {0.5 * signs[0], 0.5 * signs[1], 0.5 * signs[2]};
    std::array<double, 3> r = residual_at(x);
    double lambda = 1e-12;
    bool converged = false;
    for (int it = 0; it < kNewtonIterationCap; ++it) {
      if (max_abs(r) < kNewtonResidualTol) {
        converged = true;
        break;
      }
      // Central-difference Jacobian.
      std::array<std::array<double, 3>, 3> jac{};
      const double h = 1e-7;
      for (std::size_t i = 0; i < 3; ++i) {
        std::array<double, 3> xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        const auto rp = residual_at(xp);
        const auto rm = residual_at(xm);
        for (std::size_t k = 0; k < 3; ++k) {
          jac[k][i] = (rp[k] - rm[k]) / (2.0 * h);
        }
      }
      // Gauss-Newton step with Levenberg regularization; the normalization
      // system has geometrically degenerate roots (rank-deficient Jacobian),
      // so a plain Newton solve is not enough.
      const double m0 = merit(r);
      bool stepped = false;
      double lambda_try = lambda;
      for (int attempt = 0; attempt < 25 && !stepped; ++attempt) {
        std::array<std::array<double, 3>, 3> lhs{};
        std::array<double, 3> rhs{};
        for (std::size_t i = 0; i < 3; ++i) {
          for (std::size_t j = 0; j < 3; ++j) {
            double sum = 0.0;
            for (std::size_t k = 0; k < 3; ++k) {
              sum += jac[k][i] * jac[k][j];
            }
            lhs[i][j] = sum;
          }
          lhs[i][i] += lambda_try;
          double g = 0.0;
          for (std::size_t k = 0; k < 3; ++k) {
            g += jac[k][i] * r[k];
          }
          rhs[i] = -g;
        }
        std::array<double, 3> dx{};
        if (solve3(lhs, rhs, dx)) {
          // Halve the step until the squared residual decreases.
          for (double t = 1.0; t > 1e-10; t *= 0.5) {
            const std::array<double, 3> xn = {x[0] + t * dx[0], x[1] + t * dx[1],
                                              x[2] + t * dx[2]};
            const auto rn = residual_at(xn);
            if (all_finite(rn) && merit(rn) < m0) {
              x = xn;
              r = rn;
              lambda = std::max(lambda_try / 4.0, 1e-12);
              stepped = true;
              break;
            }
          }
        }
        lambda_try = std::max(lambda_try * 10.0, 1e-12);
      }
      if (!stepped) {
        break;
      }
    }
    if (!converged) {
      continue;
    }
    std::array<double, 6> p = base;
    for (std::size_t i = 0; i < 3; ++i) {
      p[unknown[i]] = x[i];
    }
    Family1Params params{p[0], p[1], p[2], p[3], p[4], p[5], +1};
    if (params.alpha2() != 0.0 && params.alpha3() != 0.0 && params.alpha4() != 0.0 &&
        params.gamma_squared() > 0.0) {
      return params;
    }
  }
  throw NoRealSolutionError("family1_solve: no feasible root from any seed");
}

OperatorSet family2_build(const Family2Params& params, const Tolerance&) {
  require_sign(params.sign_b4, "sign_b4");
  require_sign(params.sign_c4, "sign_c4");
  require_sign(params.sign_d4, "sign_d4");
  const double c2 = params.c2;
  const double c3 = params.c3;
  if (c2 == 0.0 || !std::isfinite(c2)) {
    throw InfeasibleParamsError("c2", "c2 must be nonzero");
  }
  if (c3 == 0.0 || !std::isfinite(c3)) {
    throw InfeasibleParamsError("c3", "c3 must be nonzero");
  }
  const double den2 = 1.0 - 2.0 * c2 * c2;
  if (den2 <= 0.0) {
    throw InfeasibleParamsError("c2", "2 c2^2 must stay below 1");
  }
  const double rad = 1.0 - 2.0 * c2 * c2 - 2.0 * c3 * c3;
  if (rad <= 0.0) {
    throw InfeasibleParamsError("c2,c3", "2 c2^2 + 2 c3^2 must stay strictly below 1");
  }
  const double c4 = params.sign_c4 * std::sqrt(rad / 2.0);
  const double b4 = params.sign_b4 * c2 * std::sqrt(rad / den2);
  const double d4 = params.sign_d4 * std::sqrt(2.0) * c3 / std::sqrt(den2);
  const double b2 = -c2 * c4 / b4;
  const double b3 = b4 * c3 / c4;
  const double d3 = -2.0 * c3 * (b4 * b4 + c4 * c4) / (c4 * d4);

  std::vector<ComplexMatrix> ops;
  ops.reserve(4);
  ops.push_back(ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}});
  ops.push_back(off_diag_hermitian(b2, c2, 0.0));
  ops.push_back(off_diag_hermitian(b3, c3, d3));
  ops.push_back(off_diag_hermitian(b4, c4, d4));
  return OperatorSet(2, std::move(ops), "family2");
}

OperatorSet family3_build(const Family3Params& params, const Tolerance& tol) {
  require_sign(params.sign_c2, "sign_c2");
  require_sign(params.sign_c3, "sign_c3");
  require_sign(params.sign_d4, "sign_d4");
  const double b3 = params.b3;
  if (b3 == 0.0 || !std::isfinite(b3)) {
    throw InfeasibleParamsError("b3", "b3 must be nonzero");
  }
  double rad = 1.0 - 2.0 * b3 * b3;
  if (rad < 0.0) {
    // Accept the |b3| = 1/sqrt(2) boundary through rounding, reject beyond.
    if (rad < -16.0 * tol.det_eps) {
      throw InfeasibleParamsError("b3", "|b3| must not exceed 1/sqrt(2)");
    }
    rad = 0.0;
  }
  const double c2 = params.sign_c2 * b3;
  const double c3 = params.sign_c3 * std::sqrt(rad / 2.0);
  const double d4 = params.sign_d4 * 1.0;
  const double b2 = -c2 * c3 / b3;

  std::vector<ComplexMatrix> ops;
  ops.reserve(4);
  ops.push_back(ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}});
  ops.push_back(off_diag_hermitian(b2, c2, 0.0));
  ops.push_back(off_diag_hermitian(b3, c3, 0.0));
  ops.push_back(ComplexMatrix{{0.0, 0.0}, {0.0, Complex{d4, 0.0}}});
  return OperatorSet(2, std::move(ops), "family3");
}

OperatorSet preset(std::string_view name) {
  const double s2 = std::sqrt(2.0);
  const double s3 = std::sqrt(3.0);
  const double s6 = std::sqrt(6.0);
  if (name == "family1-paper") {
    return OperatorSet(
        2,
        {ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}},
         0.25 * ComplexMatrix{{0.0, Complex{2.0, -1.0}}, {Complex{2.0, 1.0}, -s6}},
         0.25 * ComplexMatrix{{0.0, Complex{2.0, 1.0}}, {Complex{2.0, -1.0}, s6}},
         0.25 * ComplexMatrix{{0.0, -kI * s6}, {kI * s6, 2.0}}},
        "family1-paper");
  }
  if (name == "family2-paper") {
    const Complex om{0.5, -0.5 * s3};  // (1 - i sqrt(3)) / 2
    return OperatorSet(
        2,
        {ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}},
         (-1.0 / (2.0 * s2)) * ComplexMatrix{{0.0, Complex{s3, 1.0}}, {Complex{s3, -1.0}, 0.0}},
         (1.0 / s6) * ComplexMatrix{{0.0, om}, {std::conj(om), -2.0}},
         (1.0 / s3) * ComplexMatrix{{0.0, om}, {std::conj(om), 1.0}}},
        "family2-paper");
  }
  if (name == "family3-paper") {
    return OperatorSet(
        2,
        {ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}},
         -0.5 * ComplexMatrix{{0.0, Complex{1.0, 1.0}}, {Complex{1.0, -1.0}, 0.0}},
         0.5 * ComplexMatrix{{0.0, Complex{1.0, -1.0}}, {Complex{1.0, 1.0}, 0.0}},
         ComplexMatrix{{0.0, 0.0}, {0.0, 1.0}}},
        "family3-paper");
  }
  if (name == "wigner-aam") {
    const Complex p{0.5, 0.5};   // (1 + i) / 2
    const Complex m{0.5, -0.5};  // (1 - i) / 2
    const double w = 1.0 / s2;
    return OperatorSet(2,
                       {w * ComplexMatrix{{1.0, m}, {p, 0.0}},
                        w * ComplexMatrix{{1.0, -m}, {-p, 0.0}},
                        w * ComplexMatrix{{0.0, p}, {m, 1.0}},
                        w * ComplexMatrix{{0.0, -p}, {-m, 1.0}}},
                       "wigner-aam");
  }
  if (name == "wigner-erl") {
    const Complex p{1.0, 1.0};
    const Complex m{1.0, -1.0};
    return OperatorSet(2,
                       {0.25 * ComplexMatrix{{0.0, p}, {m, 2.0}},
                        0.25 * ComplexMatrix{{2.0, m}, {p, 0.0}},
                        0.25 * ComplexMatrix{{0.0, -p}, {-m, 2.0}},
                        0.25 * ComplexMatrix{{2.0, -m}, {-p, 0.0}}},
                       "wigner-erl");
  }
  if (name == "pauli-orthonormal") {
    const double w = 1.0 / s2;
    return OperatorSet(2,
                       {w * ComplexMatrix::identity(2),
                        w * ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}},
                        w * ComplexMatrix{{0.0, -kI}, {kI, 0.0}},
                        w * ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}}},
                       "pauli-orthonormal");
  }
  if (name == "matrix-units") {
    return OperatorSet(2,
                       {ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}},
                        ComplexMatrix{{0.0, 0.0}, {0.0, 1.0}},
                        ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}},
                        ComplexMatrix{{0.0, 0.0}, {1.0, 0.0}}},
                       "matrix-units");
  }
  throw UnknownPresetError("unknown preset '" + std::string(name) + "'");
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {
      "family1-paper", "family2-paper", "family3-paper", "wigner-aam",
      "wigner-erl",    "pauli-orthonormal", "matrix-units"};
  return names;
}

SelfDualReport validate_selfdual(const OperatorSet& u, const Tolerance& tol) {
  SelfDualReport report;
  report.gram = pairing_matrix(u, u);
  report.max_gram_deviation =
      max_abs_diff(report.gram, ComplexMatrix::identity(report.gram.rows()));
  double herm = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    herm = std::max(herm, max_abs_diff(u.op(k), adjoint(u.op(k))));
  }
  report.max_hermiticity_deviation = herm;
  report.pass = report.max_gram_deviation <= tol.abs_eps &&
                report.max_hermiticity_deviation <= tol.abs_eps;
  return report;
}

const std::vector<std::array<int, 3>>& all_sign_triples() {
  static const std::vector<std::array<int, 3>> triples = {
      {+1, +1, +1}, {+1, +1, -1}, {+1, -1, +1}, {+1, -1, -1},
      {-1, +1, +1}, {-1, +1, -1}, {-1, -1, +1}, {-1, -1, -1}};
  return triples;
}

}  // namespace qdq
