// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#include "evolution.hpp"

#include <cmath>

namespace kamred {

double hs_norm(const CVector& u, const BasisLayout& layout, double s) {
  double acc = 0.0;
  for (int k = 0; k <= layout.sphere().k_max; ++k) {
    double w = std::pow(std::max(1.0, static_cast<double>(k)), 2.0 * s);
    acc += w * u.segment(layout.offset(k), layout.block_dim(k)).squaredNorm();
  }
  return std::sqrt(acc);
}

namespace {

void record(EvolutionRun& run, const BasisLayout& layout, double t, const CVector& u) {
  run.times.push_back(t);
  run.l2.push_back(u.norm());
  for (size_t i = 0; i < run.orders.size(); ++i)
    run.hs[i].push_back(hs_norm(u, layout, run.orders[i]));
  run.states.push_back(u);
}

// Dense Fourier evaluator with per-mode matrices cached once.
class FrozenEvaluator {
public:
  FrozenEvaluator(const BlockOperator& p, const BasisLayout& layout,
                  const std::vector<double>& omega)
      : omega_(omega) {
    std::map<std::vector<int>, Matrix> dense;
    for (const auto& [key, m] : p.blocks()) {
      auto [it, inserted] = dense.try_emplace(
          key.l, Matrix::Zero(layout.dim(), layout.dim()));
      it->second.block(layout.offset(key.k), layout.offset(key.kp), m.rows(),
                       m.cols()) += m;
    }
    for (auto& [l, m] : dense) modes_.emplace_back(l, std::move(m));
  }

  Matrix at_time(double t, int dim) const {
    Matrix out = Matrix::Zero(dim, dim);
    for (const auto& [l, m] : modes_) {
      double arg = 0.0;
      for (size_t i = 0; i < omega_.size(); ++i) arg += l[i] * omega_[i] * t;
      out += Complex(std::cos(arg), std::sin(arg)) * m;
    }
    return out;
  }

private:
  std::vector<double> omega_;
  std::vector<std::pair<std::vector<int>, Matrix>> modes_;
};

} // namespace

EvolutionRun evolve_original(const CVector& u0, const std::vector<double>& omega,
                             const BlockOperator& perturbation,
                             const BasisLayout& layout, const EvolutionOptions& opt) {
  if (u0.size() != layout.dim())
    fail(ErrorKind::Domain, "initial state length does not match the basis");
  EvolutionRun run;
  run.frame = "original";
  run.orders = opt.sobolev_orders;
  run.hs.resize(run.orders.size());

  const SphereSpec& sphere = layout.sphere();
  double lam_max = std::max(1.0, laplace_eigenvalue(sphere.k_max, sphere.n));
  double dt = opt.dt > 0.0 ? opt.dt : 0.1 / lam_max;
  long long steps = std::max<long long>(1, static_cast<long long>(std::ceil(opt.t_end / dt)));
  dt = opt.t_end / static_cast<double>(steps);
  run.dt_used = dt;

  Eigen::VectorXd dsq(layout.dim());
  for (int k = 0; k <= sphere.k_max; ++k)
    dsq.segment(layout.offset(k), layout.block_dim(k))
        .setConstant(laplace_eigenvalue(k, sphere.n));

  FrozenEvaluator eval(perturbation, layout, omega);
  const double c1 = 0.5 - std::sqrt(3.0) / 6.0;
  const double c2 = 0.5 + std::sqrt(3.0) / 6.0;
  const double w4 = std::sqrt(3.0) / 12.0;

  long long save_stride =
      std::max<long long>(1, steps / std::max(1, opt.save_count - 1));

  CVector u = u0;
  record(run, layout, 0.0, u);
  for (long long step = 0; step < steps; ++step) {
    double t = step * dt;
    // Two-point Gauss Magnus: exactly unitary per step for Hermitian H(t).
    Matrix h1 = -eval.at_time(t + c1 * dt, layout.dim());
    Matrix h2 = -eval.at_time(t + c2 * dt, layout.dim());
    h1 += dsq.asDiagonal();
    h2 += dsq.asDiagonal();
    Matrix g = 0.5 * dt * (h1 + h2) +
               Complex(0.0, 1.0) * (w4 * dt * dt) * (h2 * h1 - h1 * h2);
    Eigen::SelfAdjointEigenSolver<Matrix> es(g);
    if (es.info() != Eigen::Success)
      fail(ErrorKind::Numeric, "propagator eigendecomposition failed");
    CVector phases(layout.dim());
    for (int i = 0; i < layout.dim(); ++i) {
      double th = es.eigenvalues()(i);
      phases(i) = Complex(std::cos(th), std::sin(th));
    }
    u = es.eigenvectors() * (phases.asDiagonal() * (es.eigenvectors().adjoint() * u));
    if (!u.allFinite()) fail(ErrorKind::Numeric, "state became non-finite");
    if ((step + 1) % save_stride == 0 || step + 1 == steps)
      record(run, layout, (step + 1) * dt, u);
  }
  return run;
}

EvolutionRun evolve_reduced(const CVector& v0, const NormalForm& z,
                            const BasisLayout& layout, const EvolutionOptions& opt) {
  if (v0.size() != layout.dim())
    fail(ErrorKind::Domain, "initial state length does not match the basis");
  EvolutionRun run;
  run.frame = "reduced";
  run.orders = opt.sobolev_orders;
  run.hs.resize(run.orders.size());
  run.dt_used = opt.t_end / std::max(1, opt.save_count - 1);

  const SphereSpec& sphere = layout.sphere();
  int save_count = std::max(2, opt.save_count);
  for (int si = 0; si < save_count; ++si) {
    double t = opt.t_end * si / (save_count - 1);
    CVector v(layout.dim());
    for (int k = 0; k <= sphere.k_max; ++k) {
      const Matrix& u = z.eigenvectors(k);
      const Eigen::VectorXd& mu = z.eigenvalues(k);
      double lam = laplace_eigenvalue(k, sphere.n);
      CVector seg = u.adjoint() * v0.segment(layout.offset(k), layout.block_dim(k));
      for (int j = 0; j < seg.size(); ++j) {
        double th = (lam + mu(j)) * t;
        seg(j) *= Complex(std::cos(th), std::sin(th));
      }
      v.segment(layout.offset(k), layout.block_dim(k)) = u * seg;
    }
    record(run, layout, t, v);
  }
  return run;
}

CorollaryCheck corollary_check(const EvolutionRun& run, double epsilon,
                               int order_index) {
  CorollaryCheck out;
  if (run.hs.empty() || run.hs[order_index].empty())
    fail(ErrorKind::Domain, "evolution run has no recorded norms");
  const auto& series = run.hs[order_index];
  double base = series.front();
  if (base <= 0.0) fail(ErrorKind::Domain, "initial state has zero norm");
  for (double v : series)
    out.deviation = std::max(out.deviation, std::abs(v / base - 1.0));
  out.c_fit = epsilon > 0.0 ? out.deviation / epsilon : 0.0;
  out.pass = out.deviation < 1.0;
  return out;
}

} // namespace kamred
