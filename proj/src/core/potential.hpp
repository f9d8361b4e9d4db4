// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <iosfwd>
#include <map>
#include <vector>

#include "error.hpp"

namespace kamred {

// A quasi-periodic potential V(phi, x) given as a finite list of coefficients
// on e^{i l.phi} Y_k^m.  Reality of V requires
//   c(-l, k, -m) = (-1)^m conj(c(l, k, m)),
// and the odd flag additionally forbids even-k support.
class PotentialSpec {
public:
  PotentialSpec() = default;
  explicit PotentialSpec(int freq_dim, bool odd = false)
      : freq_dim_(freq_dim), odd_(odd) {
    if (freq_dim < 1) fail(ErrorKind::Config, "frequency dimension must be >= 1");
  }

  struct Key {
    std::vector<int> l;
    int k = 0;
    int m = 0;
    friend bool operator<(const Key& a, const Key& b) {
      if (a.l != b.l) return a.l < b.l;
      if (a.k != b.k) return a.k < b.k;
      return a.m < b.m;
    }
  };

  int freq_dim() const { return freq_dim_; }
  bool odd() const { return odd_; }
  void set_odd(bool odd) { odd_ = odd; }
  const std::map<Key, std::complex<double>>& coefficients() const { return coeffs_; }
  bool empty() const { return coeffs_.empty(); }

  void set(const std::vector<int>& l, int k, int m, std::complex<double> value);
  std::complex<double> get(const std::vector<int>& l, int k, int m) const;

  // Adds both c(l,k,m) = value and the mirrored coefficient that keeps the
  // potential real-valued.
  void set_real_pair(const std::vector<int>& l, int k, int m,
                     std::complex<double> value);

  int max_harmonic_degree() const;
  double max_mode_norm() const;

  // Largest violation of the reality symmetry (0 for a real potential).
  double reality_defect() const;
  // Enforced invariants; throws on violation.
  void validate(double tol = 1e-12) const;

private:
  int freq_dim_ = 1;
  bool odd_ = false;
  std::map<Key, std::complex<double>> coeffs_;
};

// Text format: one record per line "l_1 .. l_d  k  m  re  im", '#' comments.
// The header line "# freq_dim <d> odd <0|1>" pins the dimensions.
void write_potential(std::ostream& os, const PotentialSpec& v);
PotentialSpec read_potential(std::istream& is);
PotentialSpec load_potential(const std::string& path);
void save_potential(const std::string& path, const PotentialSpec& v);

} // namespace kamred
