// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#include "assemble.hpp"

#include <cmath>

namespace kamred {

namespace {

// Real theta-profile f_{k,m} with Y_{k,m}(theta,phi) = f_{k,m}(theta) e^{i m phi}.
double theta_profile(int k, int m, double x) {
  int am = std::abs(m);
  double p = legendre_normalized(k, am, x);
  if (m < 0 && am % 2 == 1) p = -p;
  return p;
}

} // namespace

BlockOperator assemble_multiplication(const PotentialSpec& v, const SphereSpec& spec,
                                      int l_max) {
  if (spec.n != 2) fail(ErrorKind::Domain, "multiplication assembly requires n = 2");
  v.validate();

  BlockOperator out(spec, v.freq_dim(), l_max);
  if (v.empty()) return out;

  int deg = v.max_harmonic_degree() + 2 * spec.k_max;
  GaussLegendre gl(deg / 2 + 1);

  // Cache the profiles of the retained basis on the Legendre nodes.
  int nodes = static_cast<int>(gl.nodes.size());
  auto profile_table = [&](int kmax) {
    // table[k][m + k][i]
    std::vector<std::vector<std::vector<double>>> t(kmax + 1);
    for (int k = 0; k <= kmax; ++k) {
      t[k].assign(2 * k + 1, std::vector<double>(nodes));
      for (int m = -k; m <= k; ++m)
        for (int i = 0; i < nodes; ++i)
          t[k][m + k][i] = theta_profile(k, m, gl.nodes[i]);
    }
    return t;
  };
  auto basis = profile_table(std::max(spec.k_max, v.max_harmonic_degree()));

  long long lcap = static_cast<long long>(l_max) * l_max;
  for (const auto& [key, c] : v.coefficients()) {
    if (mode_norm_sq(key.l) > lcap)
      fail(ErrorKind::Domain, "potential mode outside the Fourier truncation");
    int kappa = key.k, mu = key.m;
    if (kappa > static_cast<int>(basis.size()) - 1)
      fail(ErrorKind::Domain, "potential degree exceeds cached table");
    for (int k = 0; k <= spec.k_max; ++k) {
      for (int kp = std::abs(k - kappa); kp <= std::min(spec.k_max, k + kappa); ++kp) {
        if ((k + kp + kappa) % 2 != 0) continue; // parity selection
        Matrix block = Matrix::Zero(2 * k + 1, 2 * kp + 1);
        bool touched = false;
        for (int mp = -kp; mp <= kp; ++mp) {
          int m = mp + mu; // azimuthal selection of the triple product
          if (m < -k || m > k) continue;
          double integral = 0.0;
          for (int i = 0; i < nodes; ++i)
            integral += gl.weights[i] * basis[kappa][mu + kappa][i] *
                        basis[kp][mp + kp][i] * basis[k][m + k][i];
          integral *= 2.0 * M_PI;
          if (integral == 0.0) continue;
          block(m + k, mp + kp) = c * integral;
          touched = true;
        }
        if (touched) out.add_block(key.l, k, kp, block);
      }
    }
  }
  out.prune(0.0);
  return out;
}

BlockOperator assemble_angular_power(double alpha, const SphereSpec& spec,
                                     int freq_dim, int l_max) {
  if (spec.n != 2) fail(ErrorKind::Domain, "angular power requires n = 2");
  if (alpha < 0.0 || alpha >= 0.5)
    fail(ErrorKind::Domain, "angular power exponent must lie in [0, 1/2)");
  BlockOperator out(spec, freq_dim, l_max);
  std::vector<int> zero(freq_dim, 0);
  for (int k = 0; k <= spec.k_max; ++k) {
    Matrix block = Matrix::Zero(2 * k + 1, 2 * k + 1);
    for (int m = -k; m <= k; ++m) {
      if (m == 0) continue;
      double sign = m > 0 ? 1.0 : -1.0;
      block(m + k, m + k) = sign * std::pow(std::abs(m), alpha);
    }
    if (k > 0) out.set_block(zero, k, k, block);
  }
  return out;
}

BlockOperator symmetrized_product(const BlockOperator& a, const BlockOperator& b) {
  BlockOperator ab = compose(a, b);
  BlockOperator ba = compose(b, a);
  double loss = std::max(ab.truncation_loss(), ba.truncation_loss());
  ab += ba;
  ab *= Complex(0.5, 0.0);
  ab.set_truncation_loss(loss);
  ab.prune(0.0);
  return ab;
}

} // namespace kamred
