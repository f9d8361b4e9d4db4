// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#include "potential.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "block_operator.hpp"

namespace kamred {

void PotentialSpec::set(const std::vector<int>& l, int k, int m,
                        std::complex<double> value) {
  if (static_cast<int>(l.size()) != freq_dim_)
    fail(ErrorKind::Domain, "mode vector has wrong dimension");
  if (k < 0 || std::abs(m) > k) fail(ErrorKind::Domain, "harmonic order out of range");
  if (value == std::complex<double>(0.0, 0.0)) {
    coeffs_.erase(Key{l, k, m});
    return;
  }
  coeffs_[Key{l, k, m}] = value;
}

std::complex<double> PotentialSpec::get(const std::vector<int>& l, int k, int m) const {
  auto it = coeffs_.find(Key{l, k, m});
  return it == coeffs_.end() ? std::complex<double>(0.0, 0.0) : it->second;
}

void PotentialSpec::set_real_pair(const std::vector<int>& l, int k, int m,
                                  std::complex<double> value) {
  set(l, k, m, value);
  double sign = (m % 2 == 0) ? 1.0 : -1.0;
  std::vector<int> nl(l.size());
  for (size_t i = 0; i < l.size(); ++i) nl[i] = -l[i];
  set(nl, k, -m, sign * std::conj(value));
}

int PotentialSpec::max_harmonic_degree() const {
  int deg = 0;
  for (const auto& [key, c] : coeffs_) deg = std::max(deg, key.k);
  return deg;
}

double PotentialSpec::max_mode_norm() const {
  double r = 0.0;
  for (const auto& [key, c] : coeffs_) r = std::max(r, mode_norm(key.l));
  return r;
}

double PotentialSpec::reality_defect() const {
  double defect = 0.0;
  for (const auto& [key, c] : coeffs_) {
    std::vector<int> nl(key.l.size());
    for (size_t i = 0; i < key.l.size(); ++i) nl[i] = -key.l[i];
    double sign = (key.m % 2 == 0) ? 1.0 : -1.0;
    std::complex<double> mirror = get(nl, key.k, -key.m);
    defect = std::max(defect, std::abs(mirror - sign * std::conj(c)));
  }
  return defect;
}

void PotentialSpec::validate(double tol) const {
  if (reality_defect() > tol)
    fail(ErrorKind::Domain, "potential coefficients do not describe a real function");
  if (odd_) {
    for (const auto& [key, c] : coeffs_)
      if (key.k % 2 == 0 && std::abs(c) > tol)
        fail(ErrorKind::Domain, "odd potential has support on even harmonics");
  }
}

void write_potential(std::ostream& os, const PotentialSpec& v) {
  os.precision(17);
  os << "# freq_dim " << v.freq_dim() << " odd " << (v.odd() ? 1 : 0) << '\n';
  for (const auto& [key, c] : v.coefficients()) {
    for (int li : key.l) os << li << ' ';
    os << key.k << ' ' << key.m << ' ' << c.real() << ' ' << c.imag() << '\n';
  }
}

PotentialSpec read_potential(std::istream& is) {
  std::string line;
  int freq_dim = -1;
  bool odd = false;
  PotentialSpec out;
  bool have_spec = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string word;
      while (hs >> word) {
        if (word == "freq_dim") hs >> freq_dim;
        if (word == "odd") {
          int o = 0;
          hs >> o;
          odd = (o != 0);
        }
      }
      continue;
    }
    if (!have_spec) {
      if (freq_dim < 1)
        fail(ErrorKind::Io, "potential file: missing '# freq_dim <d>' header");
      out = PotentialSpec(freq_dim, odd);
      have_spec = true;
    }
    std::istringstream ls(line);
    std::vector<int> l(freq_dim);
    for (int i = 0; i < freq_dim; ++i)
      if (!(ls >> l[i])) fail(ErrorKind::Io, "potential file: malformed record");
    int k = 0, m = 0;
    double re = 0.0, im = 0.0;
    if (!(ls >> k >> m >> re >> im))
      fail(ErrorKind::Io, "potential file: malformed record");
    out.set(l, k, m, {re, im});
  }
  if (!have_spec) {
    if (freq_dim < 1)
      fail(ErrorKind::Io, "potential file: missing '# freq_dim <d>' header");
    out = PotentialSpec(freq_dim, odd);
  }
  return out;
}

PotentialSpec load_potential(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorKind::Io, "cannot open potential file: " + path);
  return read_potential(is);
}

void save_potential(const std::string& path, const PotentialSpec& v) {
  std::ofstream os(path);
  if (!os) fail(ErrorKind::Io, "cannot write potential file: " + path);
  write_potential(os, v);
}

} // namespace kamred
