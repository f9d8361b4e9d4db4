// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#include "spherical.hpp"

#include <cmath>

namespace kamred {

int block_dimension(int k, int n) {
  if (k < 0) fail(ErrorKind::Domain, "eigenspace index must be >= 0");
  if (n < 1) fail(ErrorKind::Domain, "sphere dimension must be >= 1");
  if (k == 0) return 1;
  if (n == 1) return 2; // the circle: cos and sin modes
  if (n == 2) return 2 * k + 1;
  // (2k+n-1) * (k+n-2)! / (k! (n-1)!) evaluated as a product of ratios to
  // stay in integer range for desk-scale k, n.
  long long num = 2LL * k + n - 1;
  long long acc = 1;
  for (int i = 1; i <= n - 2; ++i) {
    acc *= k + i;
    acc /= i;
  }
  long long dim = num * acc / (n - 1);
  return static_cast<int>(dim);
}

double legendre_normalized(int k, int m, double x) {
  if (m < 0 || m > k) fail(ErrorKind::Domain, "legendre_normalized needs 0 <= m <= k");
  // Sectoral seed \bar P_m^m, then upward recurrence in degree.  All in the
  // fully normalized convention, Condon-Shortley phase included.
  double pmm = 1.0 / std::sqrt(4.0 * M_PI);
  if (m > 0) {
    double somx2 = std::sqrt((1.0 - x) * (1.0 + x));
    for (int i = 1; i <= m; ++i)
      pmm *= -std::sqrt((2.0 * i + 1.0) / (2.0 * i)) * somx2;
  }
  if (k == m) return pmm;
  double pmmp1 = x * std::sqrt(2.0 * m + 3.0) * pmm;
  if (k == m + 1) return pmmp1;
  double pkm = 0.0;
  for (int kk = m + 2; kk <= k; ++kk) {
    double a = std::sqrt((4.0 * kk * kk - 1.0) / (static_cast<double>(kk) * kk - static_cast<double>(m) * m));
    double b = std::sqrt(((kk - 1.0) * (kk - 1.0) - static_cast<double>(m) * m) / (4.0 * (kk - 1.0) * (kk - 1.0) - 1.0));
    pkm = a * (x * pmmp1 - b * pmm);
    pmm = pmmp1;
    pmmp1 = pkm;
  }
  return pkm;
}

std::complex<double> sphere_harmonic(int k, int m, double theta, double phi) {
  if (k < 0 || std::abs(m) > k) fail(ErrorKind::Domain, "harmonic order out of range");
  int am = std::abs(m);
  double p = legendre_normalized(k, am, std::cos(theta));
  std::complex<double> e(std::cos(am * phi), std::sin(am * phi));
  std::complex<double> y = p * e;
  if (m < 0) {
    // Y_k^{-m} = (-1)^m conj(Y_k^m)
    y = std::conj(y);
    if (am % 2 == 1) y = -y;
  }
  return y;
}

GaussLegendre::GaussLegendre(int point_count) {
  if (point_count < 1) fail(ErrorKind::Domain, "quadrature needs >= 1 point");
  int n = point_count;
  nodes.resize(n);
  weights.resize(n);
  // Newton iteration from the Chebyshev initial guess; standard and accurate
  // to machine precision for the sizes used here.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0; // keep the rule exactly symmetric
}

SphereQuadrature::SphereQuadrature(int max_degree) : max_degree_(max_degree) {
  if (max_degree < 0) fail(ErrorKind::Domain, "max_degree must be >= 0");
  int n_theta = max_degree / 2 + 1; // exact for polynomials of degree <= 2n-1
  GaussLegendre gl(n_theta);
  theta_.resize(n_theta);
  theta_weight_ = gl.weights;
  for (int i = 0; i < n_theta; ++i) theta_[i] = std::acos(gl.nodes[i]);
  phi_count_ = max_degree + 1;
}

double SphereQuadrature::phi(int j) const {
  return 2.0 * M_PI * j / phi_count_;
}

double SphereQuadrature::phi_weight() const {
  return 2.0 * M_PI / phi_count_;
}

std::complex<double> gaunt_coefficient(const HarmonicIndex& a,
                                       const HarmonicIndex& b,
                                       const HarmonicIndex& c,
                                       const SphereSpec& spec) {
  if (spec.n != 2) fail(ErrorKind::Domain, "gaunt_coefficient requires n = 2");
  // The azimuthal integral of e^{i(m_a+m_b-m_c)phi} is exact on the uniform
  // grid, so the product rule integrates the full triple product exactly.
  SphereQuadrature quad(a.k + b.k + c.k);
  return quad.integrate([&](double theta, double phi) {
    return sphere_harmonic(a.k, a.m, theta, phi) *
           sphere_harmonic(b.k, b.m, theta, phi) *
           std::conj(sphere_harmonic(c.k, c.m, theta, phi));
  });
}

} // namespace kamred
