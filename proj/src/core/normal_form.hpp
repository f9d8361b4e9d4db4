// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include "block_operator.hpp"

namespace kamred {

// phi-independent block-diagonal Hermitian operator with cached
// eigendecompositions of every block: mu_{k,j} ascending, U_{[k]} unitary.
class NormalForm {
public:
  NormalForm() = default;
  explicit NormalForm(const SphereSpec& sphere);

  // Checks the operator is phi-independent, block-diagonal and Hermitian
  // within tol, then caches the spectral data.
  static NormalForm from_operator(const BlockOperator& z, double tol);

  const SphereSpec& sphere() const { return sphere_; }
  int k_max() const { return sphere_.k_max; }

  const Matrix& block(int k) const { return blocks_[k]; }
  const Eigen::VectorXd& eigenvalues(int k) const { return mu_[k]; }
  const Matrix& eigenvectors(int k) const { return u_[k]; }

  // Replaces block k (Hermitized) and refreshes its eigendecomposition.
  void set_block(int k, const Matrix& value);

  BlockOperator to_operator(int freq_dim, int l_max) const;

  double max_abs_eigenvalue() const;
  // sup_k <k>^beta max_j |mu_{k,j}|
  double weighted_eigenvalue_sup(double beta) const;
  bool is_zero(double tol = 0.0) const;

  // Largest reconstruction defect || U diag(mu) U* - block ||.
  double eigen_defect() const;

private:
  SphereSpec sphere_;
  std::vector<Matrix> blocks_;
  std::vector<Eigen::VectorXd> mu_;
  std::vector<Matrix> u_;
};

} // namespace kamred
