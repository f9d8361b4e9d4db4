// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "block_operator.hpp"

namespace kamred {

// Flattening of the space-time basis (l, k, m) over an enlarged Fourier ball,
// used by the dense verification route.  Kept independent of the block
// convolution algebra on purpose: agreement between the two is a checked
// invariant, not an assumption.
class SpaceTimeLayout {
public:
  SpaceTimeLayout(const SphereSpec& sphere, int freq_dim, double l_radius);

  int dim() const { return static_cast<int>(modes_.size()) * space_.dim(); }
  int mode_count() const { return static_cast<int>(modes_.size()); }
  const std::vector<int>& mode(int i) const { return modes_[i]; }
  int mode_index(const std::vector<int>& l) const; // -1 when outside
  const BasisLayout& space() const { return space_; }
  int offset(int mode_idx, int k) const {
    return mode_idx * space_.dim() + space_.offset(k);
  }

private:
  BasisLayout space_;
  std::vector<std::vector<int>> modes_;
  std::map<std::vector<int>, int> index_;
};

// Dense matrix of the convolution action of A on the layout's ball:
// entry ((l,k,m),(p,k',m')) = A_{[k]}^{[k']}(l - p).
Matrix dense_convolution_matrix(const BlockOperator& a, const SpaceTimeLayout& lay);

// Dense diagonal of the phase derivative i(omega . l).
Matrix dense_phase_derivative(const SpaceTimeLayout& lay,
                              const std::vector<double>& omega);

// Reads the exact convolution product off the p = 0 column strip of the dense
// product, for all output modes inside the layout ball.
BlockOperator extract_strip(const Matrix& dense, const SpaceTimeLayout& lay,
                            const SphereSpec& sphere, int freq_dim, int l_max_out);

// Exact full product of two truncated operators via the dense route (output
// Fourier ball large enough to hold every mode).
BlockOperator dense_compose_oracle(const BlockOperator& a, const BlockOperator& b);

} // namespace kamred
