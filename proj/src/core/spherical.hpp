// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <vector>

#include "error.hpp"

namespace kamred {

// Spectral data of the Laplace-Beltrami operator on the n-sphere, plus the
// concrete harmonic basis machinery for n = 2.  For n != 2 only eigenvalues
// and multiplicities are available; quadrature and matrix assembly insist on
// n = 2.
struct SphereSpec {
  int n = 2;      // sphere dimension
  int k_max = 0;  // largest retained eigenspace index

  void validate() const {
    if (n < 1) fail(ErrorKind::Config, "sphere dimension must be >= 1");
    if (k_max < 0) fail(ErrorKind::Config, "k_max must be >= 0");
  }
};

// Eigenvalue k(k+n-1) of -Laplacian on S^n, exact in integer arithmetic.
inline long long laplace_eigenvalue_int(int k, int n) {
  return static_cast<long long>(k) * (k + n - 1);
}
inline double laplace_eigenvalue(int k, int n) {
  return static_cast<double>(laplace_eigenvalue_int(k, n));
}

// Multiplicity of the k-th eigenspace on S^n: (2k+n-1)(k+n-2)!/(k!(n-1)!).
// For n = 2 this is 2k+1.
int block_dimension(int k, int n);

// Eigenvalue regularized for norm scalings only: max(1, lambda_k).  Keeps
// negative powers of the diagonal operator finite at k = 0 while leaving
// every true eigenvalue >= 1 untouched.
inline double laplace_eigenvalue_clamped(int k, int n) {
  double lam = laplace_eigenvalue(k, n);
  return lam < 1.0 ? 1.0 : lam;
}

// One spherical harmonic within eigenspace k.  For n = 2 the order m runs
// over -k..k and the flattened position inside the block is m + k
// (m-ascending).
struct HarmonicIndex {
  int k = 0;
  int m = 0;
};

inline int harmonic_position(const HarmonicIndex& h, int n) {
  if (n != 2) fail(ErrorKind::Domain, "harmonic flattening defined for n = 2 only");
  if (h.k < 0 || h.m < -h.k || h.m > h.k)
    fail(ErrorKind::Domain, "harmonic order out of range");
  return h.m + h.k;
}

// Normalized associated Legendre function \bar P_k^m(x) with the
// Condon-Shortley phase folded in, so that
//   Y_k^m(theta, phi) = \bar P_k^m(cos theta) e^{i m phi}
// is orthonormal on S^2.  Requires 0 <= m <= k; negative orders go through
// the conjugation rule in sphere_harmonic.
double legendre_normalized(int k, int m, double x);

// Complex spherical harmonic on S^2 (theta colatitude, phi azimuth).
std::complex<double> sphere_harmonic(int k, int m, double theta, double phi);

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
  explicit GaussLegendre(int point_count);
};

// Product quadrature on S^2: Gauss-Legendre in cos(theta) times a uniform
// azimuthal grid.  Exact for band-limited integrands of combined spherical
// degree <= max_degree.
class SphereQuadrature {
public:
  explicit SphereQuadrature(int max_degree);

  int theta_count() const { return static_cast<int>(theta_.size()); }
  int phi_count() const { return phi_count_; }
  int max_degree() const { return max_degree_; }
  double theta(int i) const { return theta_[i]; }
  double theta_weight(int i) const { return theta_weight_[i]; }
  double phi(int j) const;
  double phi_weight() const;

  // Integrates f(theta, phi) over S^2 using the full product rule.
  template <typename F>
  std::complex<double> integrate(F&& f) const {
    std::complex<double> acc = 0.0;
    for (int i = 0; i < theta_count(); ++i) {
      std::complex<double> ring = 0.0;
      for (int j = 0; j < phi_count_; ++j) ring += f(theta_[i], phi(j));
      acc += theta_weight_[i] * ring;
    }
    return acc * phi_weight();
  }

private:
  int max_degree_ = 0;
  int phi_count_ = 0;
  std::vector<double> theta_;
  std::vector<double> theta_weight_;
};

// Triple-product integral over S^2 of Y_a * Y_b * conj(Y_c), computed by
// quadrature exact at combined degree k_a + k_b + k_c.  The building block of
// multiplication-operator matrix elements.
std::complex<double> gaunt_coefficient(const HarmonicIndex& a,
                                       const HarmonicIndex& b,
                                       const HarmonicIndex& c,
                                       const SphereSpec& spec);

} // namespace kamred
