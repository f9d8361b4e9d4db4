// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#include "random_ops.hpp"

#include <cmath>

namespace kamred {

BlockOperator random_operator(Rng& rng, const SphereSpec& sphere, int freq_dim,
                              int l_max, const RandomProfile& profile,
                              RandomStructure structure) {
  BlockOperator out(sphere, freq_dim, l_max);
  auto modes = fourier_ball(freq_dim, l_max);
  bool symmetrized = structure != RandomStructure::Generic;
  for (const auto& l : modes) {
    std::vector<int> nl = negate(l);
    bool self_paired = (nl == l);
    // Structured operators are built from one representative of each +-l pair
    // and completed by the (anti)symmetrization below.
    if (symmetrized && !self_paired && nl < l) continue;
    for (int k = 0; k <= sphere.k_max; ++k) {
      for (int kp = 0; kp <= sphere.k_max; ++kp) {
        if (rng.uniform(0.0, 1.0) > profile.fill) continue;
        int dk = block_dimension(k, sphere.n);
        int dkp = block_dimension(kp, sphere.n);
        double scale = profile.amplitude * std::exp(-profile.sigma_decay * mode_norm(l)) *
                       std::pow(1.0 + std::abs(k - kp), -profile.s_decay);
        Matrix m(dk, dkp);
        for (int r = 0; r < dk; ++r)
          for (int c = 0; c < dkp; ++c) m(r, c) = scale * rng.complex_normal();
        out.add_block(l, k, kp, m);
      }
    }
  }
  switch (structure) {
    case RandomStructure::Generic:
      break;
    case RandomStructure::Hermitian: {
      BlockOperator adj = out.adjoint();
      out += adj;
      out *= Complex(0.5, 0.0);
      break;
    }
    case RandomStructure::Hamiltonian:
    case RandomStructure::HamiltonianDiagonalFree: {
      BlockOperator adj = out.adjoint();
      out -= adj;
      out *= Complex(0.5, 0.0);
      if (structure == RandomStructure::HamiltonianDiagonalFree) {
        std::vector<BlockKey> same;
        for (const auto& [key, m] : out.blocks())
          if (key.k == key.kp) same.push_back(key);
        for (const auto& key : same) out.erase_block(key);
      }
      break;
    }
  }
  out.prune(0.0);
  return out;
}

NormalForm random_normal_form(Rng& rng, const SphereSpec& sphere, double beta,
                              double size_cap) {
  // Blocks shrink like lambda_k^{-beta/2} so the order -beta smoothing norm
  // (which amplifies by the same power) stays under size_cap.
  NormalForm out(sphere);
  for (int k = 0; k <= sphere.k_max; ++k) {
    int dk = block_dimension(k, sphere.n);
    Matrix m(dk, dk);
    for (int r = 0; r < dk; ++r)
      for (int c = 0; c < dk; ++c) m(r, c) = rng.complex_normal();
    m = 0.5 * (m + m.adjoint()).eval();
    double w = std::pow(laplace_eigenvalue_clamped(k, sphere.n), -beta / 2.0);
    double nrm = operator_norm(m);
    if (nrm > 0.0) m *= (0.25 * size_cap * w / nrm) * rng.uniform(0.2, 1.0);
    out.set_block(k, m);
  }
  return out;
}

StateVector random_state(Rng& rng, const SphereSpec& sphere, int freq_dim, int l_max,
                         const RandomProfile& profile) {
  StateVector out(sphere, freq_dim, l_max);
  for (const auto& l : fourier_ball(freq_dim, l_max)) {
    for (int k = 0; k <= sphere.k_max; ++k) {
      if (rng.uniform(0.0, 1.0) > profile.fill) continue;
      int dk = block_dimension(k, sphere.n);
      double scale = profile.amplitude * std::exp(-profile.sigma_decay * mode_norm(l)) *
                     std::pow(1.0 + k, -profile.s_decay);
      CVector v(dk);
      for (int r = 0; r < dk; ++r) v(r) = scale * rng.complex_normal();
      out.set_component(l, k, v);
    }
  }
  return out;
}

} // namespace kamred
