// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#include "normal_form.hpp"

namespace kamred {

NormalForm::NormalForm(const SphereSpec& sphere) : sphere_(sphere) {
  sphere_.validate();
  blocks_.resize(sphere.k_max + 1);
  mu_.resize(sphere.k_max + 1);
  u_.resize(sphere.k_max + 1);
  for (int k = 0; k <= sphere.k_max; ++k) {
    int dk = block_dimension(k, sphere.n);
    blocks_[k] = Matrix::Zero(dk, dk);
    mu_[k] = Eigen::VectorXd::Zero(dk);
    u_[k] = Matrix::Identity(dk, dk);
  }
}

void NormalForm::set_block(int k, const Matrix& value) {
  int dk = block_dimension(k, sphere_.n);
  if (value.rows() != dk || value.cols() != dk)
    fail(ErrorKind::Domain, "normal-form block has wrong shape");
  Matrix h = 0.5 * (value + value.adjoint()); // scrub roundoff skewness
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success)
    fail(ErrorKind::Numeric, "eigendecomposition of a normal-form block failed");
  blocks_[k] = std::move(h);
  mu_[k] = es.eigenvalues();
  u_[k] = es.eigenvectors();
}

NormalForm NormalForm::from_operator(const BlockOperator& z, double tol) {
  if (!structure_check(z, Structure::NormalForm, tol))
    fail(ErrorKind::Domain, "operator is not in normal form within tolerance");
  NormalForm out(z.sphere());
  std::vector<int> zero(z.freq_dim(), 0);
  for (int k = 0; k <= z.k_max(); ++k) {
    if (const Matrix* m = z.find_block(BlockKey{zero, k, k})) out.set_block(k, *m);
  }
  return out;
}

BlockOperator NormalForm::to_operator(int freq_dim, int l_max) const {
  BlockOperator out(sphere_, freq_dim, l_max);
  std::vector<int> zero(freq_dim, 0);
  for (int k = 0; k <= sphere_.k_max; ++k) {
    if (blocks_[k].norm() > 0.0) out.set_block(zero, k, k, blocks_[k]);
  }
  return out;
}

double NormalForm::max_abs_eigenvalue() const {
  double best = 0.0;
  for (const auto& mu : mu_)
    if (mu.size() > 0) best = std::max(best, mu.cwiseAbs().maxCoeff());
  return best;
}

double NormalForm::weighted_eigenvalue_sup(double beta) const {
  double best = 0.0;
  for (int k = 0; k <= sphere_.k_max; ++k) {
    if (mu_[k].size() == 0) continue;
    double w = std::pow(std::max(1.0, static_cast<double>(k)), beta);
    best = std::max(best, w * mu_[k].cwiseAbs().maxCoeff());
  }
  return best;
}

bool NormalForm::is_zero(double tol) const {
  for (const auto& b : blocks_)
    if (b.norm() > tol) return false;
  return true;
}

double NormalForm::eigen_defect() const {
  double best = 0.0;
  for (int k = 0; k <= sphere_.k_max; ++k) {
    Matrix rebuilt = u_[k] * mu_[k].asDiagonal() * u_[k].adjoint();
    best = std::max(best, (rebuilt - blocks_[k]).cwiseAbs().maxCoeff());
  }
  return best;
}

} // namespace kamred
