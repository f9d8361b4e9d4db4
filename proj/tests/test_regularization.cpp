// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "random_ops.hpp"
#include "regularization.hpp"

using namespace kamred;

namespace {
const SphereSpec kSphere{2, 4};
const int kFreq = 2;
const int kLmax = 2;
const std::vector<int> kZero{0, 0};
const std::vector<double> kOmega{0.87, 1.23};
} // namespace

TEST_CASE("order-reducing generator") {
  SUBCASE("zero input gives zero") {
    BlockOperator r(kSphere, kFreq, kLmax);
    CHECK(build_regularizer(r).empty());
  }
  SUBCASE("single block divides by the eigenvalue gap") {
    BlockOperator r(kSphere, kFreq, kLmax);
    Matrix b = Matrix::Random(3, 7);
    r.set_block({1, 0}, 1, 3, b);
    BlockOperator gen = build_regularizer(r);
    // lambda_1 - lambda_3 = -10, so the block is -i b / 10.
    CHECK((gen.block({1, 0}, 1, 3) - Complex(0.0, -0.1) * b).norm() <= 1e-14);
  }
  SUBCASE("rejects nonzero diagonal blocks") {
    BlockOperator r(kSphere, kFreq, kLmax);
    r.set_block({1, 0}, 2, 2, Matrix::Identity(5, 5));
    CHECK_THROWS_AS(build_regularizer(r), Error);
  }
  SUBCASE("solves the commutator identity exactly on random inputs") {
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
      BlockOperator r = random_operator(rng, kSphere, kFreq, kLmax, {},
                                        RandomStructure::HamiltonianDiagonalFree);
      BlockOperator gen = build_regularizer(r);
      CHECK(structure_defect(gen, Structure::Hamiltonian) <= 1e-13);
      double res = (r + laplacian_bracket(gen)).max_block_frobenius();
      CHECK(res <= 1e-12 * (1.0 + r.max_block_frobenius()));
    }
  }
}

TEST_CASE("regularization pipeline") {
  NormParams p{2.5, 0.4, 0.4, 0.0};

  SUBCASE("zero perturbations are a fixed point") {
    BlockOperator zero(kSphere, kFreq, kLmax);
    RegularizedSystem reg = regularize(kOmega, zero, zero, p);
    CHECK(reg.z.is_zero());
    CHECK(reg.m.empty());
    BlockOperator id = BlockOperator::identity(kSphere, kFreq, kLmax);
    CHECK((reg.transform - id).max_block_frobenius() == 0.0);
  }

  SUBCASE("pure smoothing input passes through with its diagonal split off") {
    Rng rng(5);
    BlockOperator zero(kSphere, kFreq, kLmax);
    BlockOperator rp = random_operator(rng, kSphere, kFreq, kLmax,
                                       {0.3, 0.8, 2.0, 0.8},
                                       RandomStructure::Hamiltonian);
    RegularizedSystem reg = regularize(kOmega, zero, rp, p);
    CHECK(reg.generator.empty());
    BlockOperator expect_z = Complex(0.0, 1.0) * diag_part(rp);
    BlockOperator zdiff = reg.z_op - expect_z;
    CHECK(zdiff.max_block_frobenius() <= 1e-13);
    BlockOperator expect_m = rp - diag_part(rp);
    CHECK((reg.m - expect_m).max_block_frobenius() <= 1e-13);
  }

  SUBCASE("generic small perturbation") {
    // Inputs supported on |l| <= 1 inside a truncation at 4: recombinations
    // of discarded products reach the interior window only at high order, so
    // the independent conjugation check is meaningful at its tolerance.
    Rng rng(7);
    double eps = 3e-3;
    int l_big = 4;
    auto narrow = [&](RandomStructure structure) {
      BlockOperator op = random_operator(rng, kSphere, kFreq, 1,
                                         {eps, 0.6, 2.0, 0.8}, structure);
      BlockOperator out(kSphere, kFreq, l_big);
      for (const auto& [key, blk] : op.blocks())
        out.set_block(key.l, key.k, key.kp, blk);
      return out;
    };
    BlockOperator r = narrow(RandomStructure::HamiltonianDiagonalFree);
    BlockOperator rp = narrow(RandomStructure::Hamiltonian);
    RegularizedSystem reg = regularize(kOmega, r, rp, p);

    CHECK(structure_check(reg.z_op, Structure::NormalForm, 1e-11));
    CHECK(structure_defect(reg.m, Structure::Hamiltonian) <= 1e-11);
    CHECK(diag_part(reg.m).max_block_frobenius() <= 1e-13);
    CHECK(reg.diag.generator_residual <= 1e-12 * (1.0 + r.max_block_frobenius()));
    // Independent composition route agrees on the interior window.
    CHECK(reg.diag.conjugacy_defect <= 10.0 * RegularizeOptions{}.tol);
    CHECK(reg.diag.m_norm > 0.0);
  }

  SUBCASE("output scales linearly with the input at small size") {
    Rng rng(11);
    BlockOperator r1 = random_operator(rng, kSphere, kFreq, kLmax,
                                       {1.0, 0.8, 2.0, 0.8},
                                       RandomStructure::HamiltonianDiagonalFree);
    BlockOperator rp1 = random_operator(rng, kSphere, kFreq, kLmax,
                                        {1.0, 0.8, 2.0, 0.8},
                                        RandomStructure::Hamiltonian);
    auto run = [&](double eps) {
      BlockOperator r = r1;
      r *= Complex(eps, 0.0);
      BlockOperator rp = rp1;
      rp *= Complex(eps, 0.0);
      RegularizedSystem reg = regularize(kOmega, r, rp, p);
      NormParams ph{p.s, p.sigma / 2.0, -p.beta, 0.0};
      return beta_norm(reg.m, ph);
    };
    double m3 = run(1e-3);
    double m4 = run(1e-4);
    CHECK(m3 / m4 == doctest::Approx(10.0).epsilon(0.05));
  }

  SUBCASE("generator norm is controlled by the input norm") {
    Rng rng(13);
    double alpha = 0.3, nu = 0.7, s = 2.5, sigma = 0.4;
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      BlockOperator r = random_operator(rng, kSphere, kFreq, kLmax,
                                        {0.5, 0.8, 2.0, 0.8},
                                        RandomStructure::HamiltonianDiagonalFree);
      BlockOperator gen = build_regularizer(r);
      NormParams p_r{s + nu, sigma, alpha, 0.0};
      NormParams p_g{s + nu, sigma, alpha - 1.0, 0.0};
      double denom = beta_norm(r, p_r);
      if (denom > 0.0) worst = std::max(worst, beta_norm(gen, p_g) / denom);
    }
    CHECK(worst <= 3.0);
    CHECK(worst > 0.0);
  }

  SUBCASE("rejects generators too large for the exponential series") {
    Rng rng(23);
    BlockOperator r = random_operator(rng, kSphere, kFreq, kLmax,
                                      {20.0, 0.1, 0.5, 1.0},
                                      RandomStructure::HamiltonianDiagonalFree);
    BlockOperator zero(kSphere, kFreq, kLmax);
    CHECK_THROWS_WITH_AS(regularize(kOmega, r, zero, p),
                         doctest::Contains("too large"), Error);
  }

  SUBCASE("rejects non-Hamiltonian and diagonal-carrying inputs") {
    Rng rng(17);
    BlockOperator generic = random_operator(rng, kSphere, kFreq, kLmax, {});
    BlockOperator zero(kSphere, kFreq, kLmax);
    CHECK_THROWS_AS(regularize(kOmega, generic, zero, p), Error);
    BlockOperator diag_carrier = random_operator(rng, kSphere, kFreq, kLmax, {},
                                                 RandomStructure::Hamiltonian);
    if (diag_part(diag_carrier).max_block_frobenius() > 1e-6)
      CHECK_THROWS_AS(regularize(kOmega, diag_carrier, zero, p), Error);
  }
}
