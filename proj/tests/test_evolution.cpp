// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "evolution.hpp"
#include "random_ops.hpp"

using namespace kamred;

namespace {
const SphereSpec kSphere{2, 4};
const int kFreq = 2;
const int kLmax = 2;
const std::vector<double> kOmega{0.83, 1.27};

CVector random_state_vector(const BasisLayout& layout, Rng& rng, int support_kmax) {
  CVector u = CVector::Zero(layout.dim());
  for (int k = 0; k <= support_kmax; ++k)
    for (int i = 0; i < layout.block_dim(k); ++i)
      u(layout.offset(k) + i) = rng.complex_normal();
  return u / u.norm();
}
} // namespace

TEST_CASE("free flow is exact phases per eigenspace") {
  BasisLayout layout(kSphere);
  Rng rng(3);
  CVector u0 = random_state_vector(layout, rng, kSphere.k_max);
  BlockOperator zero(kSphere, kFreq, kLmax);
  EvolutionOptions opt;
  opt.t_end = 2.0;
  opt.save_count = 5;
  EvolutionRun run = evolve_original(u0, kOmega, zero, layout, opt);
  for (size_t s = 0; s < run.times.size(); ++s) {
    double t = run.times[s];
    double defect = 0.0;
    for (int k = 0; k <= kSphere.k_max; ++k) {
      double th = laplace_eigenvalue(k, 2) * t;
      Complex phase(std::cos(th), std::sin(th));
      CVector expect =
          phase * u0.segment(layout.offset(k), layout.block_dim(k));
      defect = std::max(defect, (run.states[s].segment(layout.offset(k),
                                                       layout.block_dim(k)) -
                                 expect)
                                    .norm());
    }
    CHECK(defect <= 1e-9);
    // Per-eigenspace mass is conserved when the coupling vanishes.
    for (int k = 0; k <= kSphere.k_max; ++k) {
      double m0 = u0.segment(layout.offset(k), layout.block_dim(k)).norm();
      double mt =
          run.states[s].segment(layout.offset(k), layout.block_dim(k)).norm();
      CHECK(std::abs(mt - m0) <= 1e-11);
    }
  }
}

TEST_CASE("Hermitian coupling conserves the L2 norm") {
  BasisLayout layout(kSphere);
  Rng rng(5);
  CVector u0 = random_state_vector(layout, rng, 2);
  BlockOperator p = random_operator(rng, kSphere, kFreq, kLmax,
                                    {0.5, 0.8, 2.0, 0.8},
                                    RandomStructure::Hermitian);
  // Physical perturbations are Hermitian as phi-dependent families; freeze a
  // size and integrate.
  EvolutionOptions opt;
  opt.t_end = 10.0;
  opt.save_count = 21;
  EvolutionRun run = evolve_original(u0, kOmega, p, layout, opt);
  double drift = 0.0;
  for (double v : run.l2) drift = std::max(drift, std::abs(v - 1.0));
  CHECK(drift <= 1e-10);
}

TEST_CASE("stepper converges at fourth order") {
  BasisLayout layout(kSphere);
  Rng rng(7);
  CVector u0 = random_state_vector(layout, rng, 2);
  BlockOperator p = random_operator(rng, kSphere, kFreq, kLmax,
                                    {0.3, 0.8, 2.0, 0.8},
                                    RandomStructure::Hermitian);
  EvolutionOptions opt;
  opt.t_end = 1.0;
  opt.save_count = 2;
  opt.dt = 0.02;
  CVector a = evolve_original(u0, kOmega, p, layout, opt).states.back();
  opt.dt = 0.01;
  CVector b = evolve_original(u0, kOmega, p, layout, opt).states.back();
  opt.dt = 0.005;
  CVector c = evolve_original(u0, kOmega, p, layout, opt).states.back();
  double e1 = (a - c).norm();
  double e2 = (b - c).norm();
  CHECK(e2 < e1 / 8.0); // at least cubic gain per halving on this window
  CHECK(e2 <= 1e-8);
}

TEST_CASE("reduced flow conserves every Sobolev norm") {
  BasisLayout layout(kSphere);
  Rng rng(9);
  NormalForm z = random_normal_form(rng, kSphere, 0.4, 0.5);
  CVector v0 = random_state_vector(layout, rng, kSphere.k_max);
  EvolutionOptions opt;
  opt.t_end = 25.0;
  opt.save_count = 26;
  opt.sobolev_orders = {0.5, 1.0, 2.0};
  EvolutionRun run = evolve_reduced(v0, z, layout, opt);
  for (size_t q = 0; q < run.orders.size(); ++q) {
    double base = run.hs[q].front();
    for (double v : run.hs[q]) CHECK(std::abs(v - base) <= 1e-12 * (1.0 + base));
  }
}

TEST_CASE("zero coupling leaves the deviation at roundoff") {
  BasisLayout layout(kSphere);
  Rng rng(11);
  CVector u0 = random_state_vector(layout, rng, 2);
  BlockOperator zero(kSphere, kFreq, kLmax);
  EvolutionOptions opt;
  opt.t_end = 5.0;
  opt.save_count = 11;
  EvolutionRun run = evolve_original(u0, kOmega, zero, layout, opt);
  CorollaryCheck cc = corollary_check(run, 1e-3);
  CHECK(cc.pass);
  CHECK(cc.deviation <= 1e-10);

  NormalForm z = random_normal_form(rng, kSphere, 0.4, 0.3);
  EvolutionRun reduced = evolve_reduced(u0, z, layout, opt);
  CorollaryCheck cr = corollary_check(reduced, 1e-3);
  CHECK(cr.deviation <= 1e-12);
}

TEST_CASE("norm band scales with the coupling size") {
  BasisLayout layout(kSphere);
  Rng rng(13);
  CVector u0 = random_state_vector(layout, rng, 2);
  BlockOperator p = random_operator(rng, kSphere, kFreq, kLmax,
                                    {1.0, 0.8, 2.0, 0.8},
                                    RandomStructure::Hermitian);
  auto deviation = [&](double eps) {
    BlockOperator scaled = p;
    scaled *= Complex(eps, 0.0);
    EvolutionOptions opt;
    opt.t_end = 20.0;
    opt.save_count = 41;
    EvolutionRun run = evolve_original(u0, kOmega, scaled, layout, opt);
    return corollary_check(run, eps).deviation;
  };
  double d2 = deviation(1e-2);
  double d3 = deviation(1e-3);
  CHECK(d3 < d2);
  CHECK(d2 < 0.5);
  CHECK(d3 / d2 == doctest::Approx(0.1).epsilon(0.5));
}
