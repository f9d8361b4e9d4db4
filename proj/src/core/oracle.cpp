// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#include "oracle.hpp"

namespace kamred {

SpaceTimeLayout::SpaceTimeLayout(const SphereSpec& sphere, int freq_dim,
                                 double l_radius)
    : space_(sphere), modes_(fourier_ball(freq_dim, l_radius)) {
  for (size_t i = 0; i < modes_.size(); ++i) index_[modes_[i]] = static_cast<int>(i);
}

int SpaceTimeLayout::mode_index(const std::vector<int>& l) const {
  auto it = index_.find(l);
  return it == index_.end() ? -1 : it->second;
}

Matrix dense_convolution_matrix(const BlockOperator& a, const SpaceTimeLayout& lay) {
  Matrix out = Matrix::Zero(lay.dim(), lay.dim());
  for (int li = 0; li < lay.mode_count(); ++li) {
    for (int pi = 0; pi < lay.mode_count(); ++pi) {
      std::vector<int> diff(lay.mode(li).size());
      for (size_t c = 0; c < diff.size(); ++c) diff[c] = lay.mode(li)[c] - lay.mode(pi)[c];
      if (mode_norm_sq(diff) > static_cast<long long>(a.l_max()) * a.l_max()) continue;
      for (int k = 0; k <= a.k_max(); ++k) {
        for (int kp = 0; kp <= a.k_max(); ++kp) {
          const Matrix* m = a.find_block(BlockKey{diff, k, kp});
          if (!m) continue;
          out.block(lay.offset(li, k), lay.offset(pi, kp), m->rows(), m->cols()) = *m;
        }
      }
    }
  }
  return out;
}

Matrix dense_phase_derivative(const SpaceTimeLayout& lay,
                              const std::vector<double>& omega) {
  Matrix out = Matrix::Zero(lay.dim(), lay.dim());
  int sdim = lay.space().dim();
  for (int li = 0; li < lay.mode_count(); ++li) {
    double wl = 0.0;
    for (size_t c = 0; c < omega.size(); ++c) wl += omega[c] * lay.mode(li)[c];
    for (int i = 0; i < sdim; ++i)
      out(li * sdim + i, li * sdim + i) = Complex(0.0, wl);
  }
  return out;
}

BlockOperator extract_strip(const Matrix& dense, const SpaceTimeLayout& lay,
                            const SphereSpec& sphere, int freq_dim, int l_max_out) {
  BlockOperator out(sphere, freq_dim, l_max_out);
  std::vector<int> zero(freq_dim, 0);
  int zi = lay.mode_index(zero);
  if (zi < 0) fail(ErrorKind::Domain, "layout ball does not contain the zero mode");
  long long cap = static_cast<long long>(l_max_out) * l_max_out;
  for (int li = 0; li < lay.mode_count(); ++li) {
    if (mode_norm_sq(lay.mode(li)) > cap) continue;
    for (int k = 0; k <= sphere.k_max; ++k) {
      for (int kp = 0; kp <= sphere.k_max; ++kp) {
        Matrix block = dense.block(lay.offset(li, k), lay.offset(zi, kp),
                                   lay.space().block_dim(k), lay.space().block_dim(kp));
        if (block.norm() > 0.0) out.set_block(lay.mode(li), k, kp, block);
      }
    }
  }
  return out;
}

BlockOperator dense_compose_oracle(const BlockOperator& a, const BlockOperator& b) {
  a.require_compatible(b);
  double radius = 2.0 * a.l_max();
  SpaceTimeLayout lay(a.sphere(), a.freq_dim(), radius);
  Matrix prod = dense_convolution_matrix(a, lay) * dense_convolution_matrix(b, lay);
  return extract_strip(prod, lay, a.sphere(), a.freq_dim(),
                       static_cast<int>(radius));
}

} // namespace kamred
