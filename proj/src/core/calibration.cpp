// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#include "calibration.hpp"

#include <cmath>

#include "regularization.hpp"

namespace kamred {

FittedConstants calibrate(std::uint64_t seed, const CalibrationOptions& opt) {
  FittedConstants out;
  out.seed = seed;
  out.instances = opt.instances;
  Rng rng(seed);
  SphereSpec sphere{2, opt.k_max};
  NormParams p{opt.s, opt.sigma, -opt.beta, 0.0}; // smoothing-order subscript
  RandomProfile prof{1.0, 1.0, opt.s, 0.6};

  auto ratio = [](double lhs, double rhs) { return rhs > 0.0 ? lhs / rhs : 0.0; };

  for (int i = 0; i < opt.instances; ++i) {
    Rng sub = rng.split();
    BlockOperator a = random_operator(sub, sphere, opt.freq_dim, opt.l_max, prof);
    BlockOperator b = random_operator(sub, sphere, opt.freq_dim, opt.l_max, prof);
    StateVector v = random_state(sub, sphere, opt.freq_dim, opt.l_max, prof);

    double na = decay_norm(a, p);
    double nb = decay_norm(b, p);
    double nv = sobolev_norm(v, p);

    // Action and algebra of the decay norm.
    out.action = std::max(out.action, ratio(sobolev_norm(apply(a, v), p), na * nv));
    out.algebra = std::max(out.algebra, ratio(decay_norm(compose(a, b), p), na * nb));

    // Fourier-tail projection at a narrower width.
    {
      double cut = 1.0 + std::floor(sub.uniform(0.0, opt.l_max - 0.5));
      double sigma_in = opt.sigma * sub.uniform(0.55, 0.95);
      NormParams p_in{opt.s, sigma_in, opt.beta, 0.0};
      BlockOperator tail = a - project_fourier(a, cut);
      double bound = std::exp(-(opt.sigma - sigma_in) * cut) /
                     std::pow(opt.sigma - sigma_in, opt.freq_dim) *
                     decay_norm(a, p);
      out.tail = std::max(out.tail, ratio(decay_norm(tail, p_in), bound));
    }

    // Conjugation by powers of the dispersion diagonal.
    {
      NormParams p_up{opt.s + opt.beta, opt.sigma, opt.beta, 0.0};
      BlockOperator conj = scale_by_laplacian(
          scale_by_laplacian(a, opt.beta, Side::Left), -opt.beta, Side::Right);
      out.d_conjugation =
          std::max(out.d_conjugation, ratio(decay_norm(conj, p), decay_norm(a, p_up)));
    }

    // Smoothing-norm algebra <<AB>>_{a+b,s} <= C <<A>>_{a,s+|b|} <<B>>_{b,s+|a|}.
    {
      double oa = 0.4, ob = -0.4;
      NormParams p_ab{opt.s, opt.sigma, oa + ob, 0.0};
      NormParams p_a{opt.s + std::abs(ob), opt.sigma, oa, 0.0};
      NormParams p_b{opt.s + std::abs(oa), opt.sigma, ob, 0.0};
      out.smoothing_algebra =
          std::max(out.smoothing_algebra,
                   ratio(beta_norm(compose(a, b), p_ab),
                         beta_norm(a, p_a) * beta_norm(b, p_b)));
    }

    // Smoothing action gain on phi-independent states.
    {
      double sigma_in = opt.sigma * 0.5;
      StateVector slice(sphere, opt.freq_dim, opt.l_max);
      std::vector<int> zero(opt.freq_dim, 0);
      for (int k = 0; k <= sphere.k_max; ++k)
        slice.set_component(zero, k, v.component(zero, k));
      NormParams p_hs{opt.s, 0.0, 0.0, 0.0};
      NormParams p_hsb{opt.s + opt.beta, 0.0, 0.0, 0.0};
      NormParams p_sm{opt.s, opt.sigma, -opt.beta, 0.0};
      double gain = sobolev_norm(apply(a, slice), p_hsb);
      double s0 = 0.5 * (opt.freq_dim + 1.0);
      double bound = std::pow(opt.sigma - sigma_in, -(s0 + opt.freq_dim)) *
                     beta_norm(a, p_sm) * sobolev_norm(slice, p_hs);
      out.action_gain = std::max(out.action_gain, ratio(gain, bound));
    }

    // Exponential remainder under the smallness gate.
    {
      BlockOperator small = a;
      double nsm = beta_norm(small, p);
      if (nsm > 0.0) small *= Complex(0.25 / nsm, 0.0);
      BlockOperator psi =
          lie_exponential(small, 1e-14, 60) -
          BlockOperator::identity(sphere, opt.freq_dim, opt.l_max);
      out.neumann =
          std::max(out.neumann, ratio(beta_norm(psi, p), beta_norm(small, p)));
    }

    // Order-reducing generator against its source.
    {
      BlockOperator r = random_operator(sub, sphere, opt.freq_dim, opt.l_max, prof,
                                        RandomStructure::HamiltonianDiagonalFree);
      double alpha = 0.5 * (1.0 - opt.beta);
      NormParams p_r{opt.s, opt.sigma, alpha, 0.0};
      NormParams p_g{opt.s, opt.sigma, alpha - 1.0, 0.0};
      BlockOperator gen = build_regularizer(r);
      out.generator =
          std::max(out.generator, ratio(beta_norm(gen, p_g), beta_norm(r, p_r)));
    }
  }

  // Homological growth: worst block ratio over random solves, against the
  // predicted power of the cutoff.
  {
    Rng sub = rng.split();
    SphereSpec small_sphere{2, 4};
    double gamma = 0.05, tau = 3.0, cutoff = 2.0;
    for (int i = 0; i < std::max(10, opt.instances / 5); ++i) {
      NormalForm z = random_normal_form(sub, small_sphere, opt.beta, gamma / 4.0);
      BlockOperator m = random_operator(sub, small_sphere, opt.freq_dim, 2, prof,
                                        RandomStructure::Hamiltonian);
      std::vector<double> omega(opt.freq_dim);
      for (auto& w : omega) w = sub.uniform(0.5, 1.5);
      MelnikovVerdict verdict =
          melnikov_membership(omega, z, gamma, tau, cutoff, opt.beta);
      if (!verdict.member) continue;
      HomologicalSolution sol = solve_homological(omega, z, m, gamma, tau, cutoff);
      double scale = std::pow(cutoff, tau + tau / opt.beta + 1.0) / gamma;
      out.homological_growth = std::max(out.homological_growth, sol.growth / scale);
    }
  }
  return out;
}

} // namespace kamred
