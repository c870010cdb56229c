#include "doctest.h"

#include <cmath>

#include "qdq/selfdual.hpp"
#include "testutil.hpp"

using namespace qdq;
using testutil::close;

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);
const double kSqrt6 = std::sqrt(6.0);

// Normalization residuals of the first family, evaluated independently of
// the builder.
std::array<double, 3> family1_residuals(const Family1Params& p) {
  const double gamma_sq = p.gamma_squared();
  const std::array<std::array<double, 3>, 3> rows = {
      {{p.b2, p.c2, p.alpha2()}, {p.b3, p.c3, p.alpha3()}, {p.b4, p.c4, p.alpha4()}}};
  std::array<double, 3> out{};
  for (std::size_t k = 0; k < 3; ++k) {
    const auto& [b, c, a] = rows[k];
    out[k] = 2.0 * gamma_sq / (a * a) + 2.0 * b * b + 2.0 * c * c - 1.0;
  }
  return out;
}

// Feasible family-1 parameter draws: rows (d_k, sqrt2 b_k, sqrt2 c_k) of a
// random orthogonal 3x3 matrix satisfy the constraint system exactly.
Family1Params random_family1_params(testutil::Rng& rng) {
  for (;;) {
    const auto o = testutil::random_orthogonal(rng, 3);
    if (std::min({std::abs(o[0][0]), std::abs(o[1][0]), std::abs(o[2][0])}) < 1e-2) {
      continue;
    }
    Family1Params p;
    p.b2 = o[0][1] / kSqrt2;
    p.c2 = o[0][2] / kSqrt2;
    p.b3 = o[1][1] / kSqrt2;
    p.c3 = o[1][2] / kSqrt2;
    p.b4 = o[2][1] / kSqrt2;
    p.c4 = o[2][2] / kSqrt2;
    if (p.gamma_squared() <= 0.0) {
      continue;
    }
    return p;
  }
}

}  // namespace

TEST_CASE("pairwise form on the published parameter points") {
  const HermitianParam first{1.0, 0.0, 0.0, 0.0};
  CHECK(pairwise_form(first, first) == doctest::Approx(1.0).epsilon(1e-13));

  const HermitianParam u2{0.0, 0.5, 0.25, -kSqrt6 / 4.0};
  const HermitianParam u3{0.0, 0.5, -0.25, kSqrt6 / 4.0};
  CHECK(std::abs(pairwise_form(u2, u3)) < 1e-13);
}

TEST_CASE("pairwise form equals the trace pairing of the matrices") {
  testutil::Rng rng(41);
  for (int t = 0; t < 200; ++t) {
    const HermitianParam p{testutil::uniform(rng), testutil::uniform(rng),
                           testutil::uniform(rng), testutil::uniform(rng)};
    const HermitianParam q{testutil::uniform(rng), testutil::uniform(rng),
                           testutil::uniform(rng), testutil::uniform(rng)};
    const Complex tp = trace_pairing(hermitian_matrix(p), hermitian_matrix(q));
    CHECK(std::abs(tp.real() - pairwise_form(p, q)) < 1e-13);
    CHECK(std::abs(tp.imag()) < 1e-13);
  }
}

TEST_CASE("family 1 build reproduces the published instance") {
  const Family1Params params{0.5, 0.25, 0.5, -0.25, 0.0, kSqrt6 / 4.0, +1};
  const OperatorSet built = family1_build(params);
  const OperatorSet published = preset("family1-paper");
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(max_abs_diff(built.op(k), published.op(k)) < 1e-12);
  }
}

TEST_CASE("flipping gamma flips the diagonals and keeps orthonormality") {
  Family1Params params{0.5, 0.25, 0.5, -0.25, 0.0, kSqrt6 / 4.0, +1};
  const OperatorSet plus = family1_build(params);
  params.gamma_sign = -1;
  const OperatorSet minus = family1_build(params);
  for (std::size_t k = 1; k < 4; ++k) {
    CHECK(close(plus.op(k)(0, 1), minus.op(k)(0, 1)));
    CHECK(close(plus.op(k)(1, 1), -minus.op(k)(1, 1)));
  }
  CHECK(validate_selfdual(minus).pass);
}

TEST_CASE("family 1 rejects vanishing alphas and wrong sign products") {
  // b2 b3 + c2 c3 = 0 while the other alphas stay nonzero.
  CHECK_THROWS_AS(family1_build({1.0, 1.0, 1.0, -1.0, 1.0, 0.0, +1}), InfeasibleParamsError);
  // All alphas positive, so the product cannot be -gamma^2.
  CHECK_THROWS_AS(family1_build({0.5, 0.0, 0.5, 0.0, 0.5, 0.0, +1}), InfeasibleParamsError);
  // Feasible signs but broken normalization.
  CHECK_THROWS_AS(family1_build({0.4, 0.25, 0.5, -0.25, 0.0, kSqrt6 / 4.0, +1}),
                  InfeasibleParamsError);
}

TEST_CASE("family 1 sweep stays orthonormal for both gamma branches") {
  testutil::Rng rng(42);
  for (int t = 0; t < 100; ++t) {
    Family1Params p = random_family1_params(rng);
    for (const int sign : {+1, -1}) {
      p.gamma_sign = sign;
      const OperatorSet set = family1_build(p);
      CHECK(validate_selfdual(set).max_gram_deviation < 1e-10);
      CHECK(max_abs_diff(set.op(0), ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}}) == 0.0);
      for (std::size_t k = 1; k < 4; ++k) {
        CHECK(set.op(k)(0, 0) == Complex{0.0, 0.0});
      }
    }
  }
}

TEST_CASE("family 1 diagonal identity d_k alpha_k = sqrt(2) gamma") {
  testutil::Rng rng(43);
  for (int t = 0; t < 50; ++t) {
    const Family1Params p = random_family1_params(rng);
    const OperatorSet set = family1_build(p);
    const double expected = kSqrt2 * std::sqrt(p.gamma_squared());
    const std::array<double, 3> alphas{p.alpha2(), p.alpha3(), p.alpha4()};
    for (std::size_t k = 0; k < 3; ++k) {
      const double dk = set.op(k + 1)(1, 1).real();
      CHECK(std::abs(dk * alphas[k] - expected) < 1e-10);
    }
  }
}

TEST_CASE("family 1 solver recovers the published root") {
  const std::array<Family1Assignment, 3> given = {{{Family1Param::B2, 0.5},
                                                   {Family1Param::C2, 0.25},
                                                   {Family1Param::B3, 0.5}}};
  const Family1Params root = family1_solve(given);

  // The residual of the returned root meets the solver tolerance.
  const auto residuals = family1_residuals(root);
  for (const double r : residuals) {
    CHECK(std::abs(r) < 1e-12);
  }

  // The completion of this triple is unique up to signs: c3 = -1/4, b4 = 0,
  // c4 = +-sqrt(6)/4. The root is geometrically degenerate, so coordinates
  // are only pinned to ~sqrt(residual).
  CHECK(std::abs(root.c3 - (-0.25)) < 1e-5);
  CHECK(std::abs(root.b4) < 1e-5);
  CHECK(std::abs(std::abs(root.c4) - kSqrt6 / 4.0) < 1e-5);

  const OperatorSet set = family1_build(root);
  CHECK(validate_selfdual(set).max_gram_deviation < 1e-10);
}

TEST_CASE("the published family-1 values satisfy the normalization system") {
  const Family1Params published{0.5, 0.25, 0.5, -0.25, 0.0, kSqrt6 / 4.0, +1};
  for (const double r : family1_residuals(published)) {
    CHECK(std::abs(r) < 1e-12);
  }
}

TEST_CASE("family 1 solver rejects a repeated selector entry") {
  const std::array<Family1Assignment, 3> given = {{{Family1Param::B2, 0.5},
                                                   {Family1Param::B2, 0.25},
                                                   {Family1Param::B3, 0.5}}};
  CHECK_THROWS_AS(family1_solve(given), InfeasibleParamsError);
}

TEST_CASE("family 1 solver reports infeasible fixed values") {
  // 2 b2^2 + 2 c2^2 > 1 already breaks the k = 2 normalization equation.
  const std::array<Family1Assignment, 3> given = {{{Family1Param::B2, 0.9},
                                                   {Family1Param::C2, 0.9},
                                                   {Family1Param::B3, 0.1}}};
  CHECK_THROWS_AS(family1_solve(given), NoRealSolutionError);
}

TEST_CASE("family 1 solver roots always build orthonormal sets") {
  testutil::Rng rng(44);
  int solved = 0;
  for (int t = 0; t < 40 && solved < 10; ++t) {
    const std::array<Family1Assignment, 3> given = {
        {{Family1Param::B2, testutil::uniform(rng, -0.45, 0.45)},
         {Family1Param::C2, testutil::uniform(rng, -0.45, 0.45)},
         {Family1Param::B3, testutil::uniform(rng, -0.45, 0.45)}}};
    try {
      const Family1Params root = family1_solve(given);
      const OperatorSet set = family1_build(root);
      CHECK(validate_selfdual(set).max_gram_deviation < 1e-10);
      ++solved;
    } catch (const NoRealSolutionError&) {
      // Many fixed triples genuinely have no real completion.
    }
  }
  CHECK(solved >= 5);
}

TEST_CASE("family 2 build reproduces the published instance") {
  const Family2Params params{1.0 / (2.0 * kSqrt2), 1.0 / (2.0 * kSqrt2), +1, +1, +1};
  const OperatorSet built = family2_build(params);
  const OperatorSet published = preset("family2-paper");
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(max_abs_diff(built.op(k), published.op(k)) < 1e-12);
  }

  // Derived quantities read off the fourth operator.
  CHECK(built.op(3)(1, 0).real() == doctest::Approx(1.0 / (2.0 * kSqrt3)).epsilon(1e-12));
  CHECK(built.op(3)(1, 0).imag() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(built.op(3)(1, 1).real() == doctest::Approx(1.0 / kSqrt3).epsilon(1e-12));
}

TEST_CASE("family 2 rejects infeasible parameters") {
  CHECK_THROWS_AS(family2_build({0.0, 0.3, +1, +1, +1}), InfeasibleParamsError);
  CHECK_THROWS_AS(family2_build({0.3, 0.0, +1, +1, +1}), InfeasibleParamsError);
  // 2 c2^2 + 2 c3^2 = 1 exactly: c4 = 0 breaks the derived divisions.
  CHECK_THROWS_AS(family2_build({0.5, 0.5, +1, +1, +1}), InfeasibleParamsError);
  CHECK_THROWS_AS(family2_build({0.8, 0.1, +1, +1, +1}), InfeasibleParamsError);
}

TEST_CASE("family 2 sweep across all sign combinations") {
  testutil::Rng rng(45);
  for (int t = 0; t < 40; ++t) {
    double c2 = 0.0, c3 = 0.0;
    do {
      c2 = testutil::uniform(rng, -0.7, 0.7);
      c3 = testutil::uniform(rng, -0.7, 0.7);
    } while (std::abs(c2) < 1e-3 || std::abs(c3) < 1e-3 ||
             2.0 * c2 * c2 + 2.0 * c3 * c3 >= 1.0 - 1e-6);
    for (const auto& signs : all_sign_triples()) {
      const OperatorSet set = family2_build({c2, c3, signs[0], signs[1], signs[2]});
      CHECK(validate_selfdual(set).max_gram_deviation < 1e-10);
      CHECK(max_abs_diff(set.op(0), ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}}) == 0.0);
      for (std::size_t k = 1; k < 4; ++k) {
        CHECK(set.op(k)(0, 0) == Complex{0.0, 0.0});
      }
    }
  }
}

TEST_CASE("family 2 sign flips give distinct orthonormal sets") {
  const Family2Params base{0.31, -0.22, +1, +1, +1};
  const OperatorSet reference = family2_build(base);
  for (int flip = 0; flip < 3; ++flip) {
    Family2Params p = base;
    (flip == 0 ? p.sign_b4 : flip == 1 ? p.sign_c4 : p.sign_d4) = -1;
    const OperatorSet variant = family2_build(p);
    CHECK(validate_selfdual(variant).pass);
    double diff = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      diff = std::max(diff, max_abs_diff(variant.op(k), reference.op(k)));
    }
    CHECK(diff > 1e-3);
  }
}

TEST_CASE("family 3 build reproduces the published instance") {
  const OperatorSet built = family3_build({0.5, +1, +1, +1});
  const OperatorSet published = preset("family3-paper");
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(max_abs_diff(built.op(k), published.op(k)) < 1e-12);
  }
}

TEST_CASE("family 3 accepts the boundary |b3| = 1/sqrt(2)") {
  const OperatorSet set = family3_build({1.0 / kSqrt2, +1, +1, +1});
  CHECK(validate_selfdual(set).max_gram_deviation < 1e-12);
  // c3 collapses at the boundary up to the rounding of 1 - 2 b3^2, leaving
  // the off-diagonals real to ~1e-8.
  CHECK(std::abs(set.op(2)(0, 1).imag()) < 1e-7);
}

TEST_CASE("family 3 rejects out-of-range and vanishing b3") {
  CHECK_THROWS_AS(family3_build({0.8, +1, +1, +1}), InfeasibleParamsError);
  CHECK_THROWS_AS(family3_build({0.0, +1, +1, +1}), InfeasibleParamsError);
}

TEST_CASE("family 3 structure: zero diagonals and a unit d4") {
  testutil::Rng rng(46);
  for (int t = 0; t < 40; ++t) {
    const double b3 = testutil::uniform(rng, -1.0 / kSqrt2, 1.0 / kSqrt2);
    if (std::abs(b3) < 1e-3) {
      continue;
    }
    for (const auto& signs : all_sign_triples()) {
      const OperatorSet set = family3_build({b3, signs[0], signs[1], signs[2]});
      CHECK(validate_selfdual(set).max_gram_deviation < 1e-10);
      CHECK(set.op(1)(0, 0) == Complex{0.0, 0.0});
      CHECK(set.op(1)(1, 1) == Complex{0.0, 0.0});
      CHECK(set.op(2)(0, 0) == Complex{0.0, 0.0});
      CHECK(set.op(2)(1, 1) == Complex{0.0, 0.0});
      CHECK(set.op(3)(0, 0) == Complex{0.0, 0.0});
      CHECK(std::abs(std::abs(set.op(3)(1, 1).real()) - 1.0) < 1e-15);
    }
  }
}

TEST_CASE("family 3 sign flips give distinct orthonormal sets") {
  const Family3Params base{0.4, +1, +1, +1};
  const OperatorSet reference = family3_build(base);
  for (int flip = 0; flip < 3; ++flip) {
    Family3Params p = base;
    (flip == 0 ? p.sign_c2 : flip == 1 ? p.sign_c3 : p.sign_d4) = -1;
    const OperatorSet variant = family3_build(p);
    CHECK(validate_selfdual(variant).pass);
    double diff = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      diff = std::max(diff, max_abs_diff(variant.op(k), reference.op(k)));
    }
    CHECK(diff > 1e-3);
  }
}

TEST_CASE("preset fixtures match their published leading operators") {
  const ComplexMatrix aam0 = preset("wigner-aam").op(0);
  const ComplexMatrix expected_aam{{1.0 / kSqrt2, Complex{0.5, -0.5} / kSqrt2},
                                   {Complex{0.5, 0.5} / kSqrt2, 0.0}};
  CHECK(close(aam0, expected_aam));

  const ComplexMatrix erl0 = preset("wigner-erl").op(0);
  const ComplexMatrix expected_erl{{0.0, Complex{0.25, 0.25}},
                                   {Complex{0.25, -0.25}, 0.5}};
  CHECK(close(erl0, expected_erl));
}

TEST_CASE("unknown preset name throws") {
  CHECK_THROWS_AS(preset("family4-paper"), UnknownPresetError);
}

TEST_CASE("matrix-units gram is a permutation, not the identity") {
  const OperatorSet u = preset("matrix-units");
  const ComplexMatrix g = pairing_matrix(u, u);
  ComplexMatrix expected(4, 4);
  expected(0, 0) = 1.0;
  expected(1, 1) = 1.0;
  expected(2, 3) = 1.0;
  expected(3, 2) = 1.0;
  CHECK(close(g, expected));
  CHECK_FALSE(validate_selfdual(u).pass);
}

TEST_CASE("validate_selfdual passes the published presets") {
  for (const char* name : {"family1-paper", "family2-paper", "family3-paper", "wigner-aam"}) {
    const SelfDualReport report = validate_selfdual(preset(name));
    CHECK(report.pass);
    CHECK(report.max_gram_deviation < 1e-12);
    CHECK(report.max_hermiticity_deviation < 1e-15);
  }
}

TEST_CASE("the published 1/4-normalized set is orthogonal but not orthonormal") {
  // Its Gram matrix is I/2, so the strict orthonormality check fails while
  // every off-diagonal pairing vanishes.
  const SelfDualReport report = validate_selfdual(preset("wigner-erl"));
  CHECK_FALSE(report.pass);
  CHECK(report.max_gram_deviation == doctest::Approx(0.5).epsilon(1e-12));
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t kp = 0; kp < 4; ++kp) {
      if (k != kp) {
        CHECK(std::abs(report.gram(k, kp)) < 1e-15);
      }
    }
  }
}
