#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "qdq/duality.hpp"
#include "qdq/matkit.hpp"

namespace qdq {

/// Real parameters (a, b, c, d) of the Hermitian matrix
/// [[a, b - i c], [b + i c, d]].
struct HermitianParam {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
};

ComplexMatrix hermitian_matrix(const HermitianParam& p);

/// a_p a_q + d_p d_q + 2 (b_p b_q + c_p c_q); equals the trace pairing of the
/// corresponding Hermitian matrices.
double pairwise_form(const HermitianParam& p, const HermitianParam& q);

/// Family with all three lower-diagonal entries nonzero. The six
/// off-diagonal parameters determine the diagonals d_k = sqrt(2) gamma /
/// alpha_k up to a global sign of gamma.
struct Family1Params {
  double b2 = 0.0, c2 = 0.0;
  double b3 = 0.0, c3 = 0.0;
  double b4 = 0.0, c4 = 0.0;
  int gamma_sign = +1;

  double alpha2() const noexcept { return b3 * b4 + c3 * c4; }
  double alpha3() const noexcept { return b2 * b4 + c2 * c4; }
  double alpha4() const noexcept { return b2 * b3 + c2 * c3; }
  double gamma_squared() const noexcept { return -alpha2() * alpha3() * alpha4(); }
};

/// Family with d2 = 0; everything follows from (c2, c3) and three signs.
struct Family2Params {
  double c2 = 0.0;
  double c3 = 0.0;
  int sign_b4 = +1;
  int sign_c4 = +1;
  int sign_d4 = +1;
};

/// Family with d2 = d3 = 0; everything follows from b3 and three signs.
struct Family3Params {
  double b3 = 0.0;
  int sign_c2 = +1;
  int sign_c3 = +1;
  int sign_d4 = +1;
};

enum class Family1Param { B2, C2, B3, C3, B4, C4 };

struct Family1Assignment {
  Family1Param name;
  double value;
};

/// Builds the four Hermitian operators of the first self-dual family.
/// Throws InfeasibleParamsError when an alpha vanishes, the sign condition
/// alpha2 alpha3 alpha4 < 0 fails, or a normalization residual exceeds 1e-10.
OperatorSet family1_build(const Family1Params& params, const Tolerance& tol = {});

/// Fixes the three given off-diagonal parameters and solves the three
/// normalization equations for the remaining three by damped Gauss-Newton
/// from a deterministic seed schedule (the eight sign orthants at 1/2),
/// to residual below 1e-12.
/// Throws NoRealSolutionError when no seed reaches a feasible root.
Family1Params family1_solve(const std::array<Family1Assignment, 3>& given);

/// Builds the second family from (c2, c3) and the three sign choices.
OperatorSet family2_build(const Family2Params& params, const Tolerance& tol = {});

/// Builds the third family from b3 and the three sign choices. The boundary
/// |b3| = 1/sqrt(2) is accepted (c3 = 0 stays valid).
OperatorSet family3_build(const Family3Params& params, const Tolerance& tol = {});

/// Named operator sets: the three explicit family instances, the two
/// published Wigner-function sets, and two convenience bases.
/// Names: family1-paper, family2-paper, family3-paper, wigner-aam,
/// wigner-erl, pauli-orthonormal, matrix-units. Throws UnknownPresetError.
OperatorSet preset(std::string_view name);

const std::vector<std::string>& preset_names();

struct SelfDualReport {
  ComplexMatrix gram;
  double max_gram_deviation = 0.0;
  double max_hermiticity_deviation = 0.0;
  bool pass = false;
};

/// Gram matrix Tr(U_k U_k') against the identity, plus a Hermiticity check
/// per member.
SelfDualReport validate_selfdual(const OperatorSet& u, const Tolerance& tol = {});

/// All eight (+1/-1)^3 combinations, for sweeping the family sign flags.
const std::vector<std::array<int, 3>>& all_sign_triples();

}  // namespace qdq
