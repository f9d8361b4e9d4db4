// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#include "kam.hpp"

#include <cmath>
#include <sstream>

namespace kamred {

void KamConfig::validate() const {
  std::ostringstream os;
  if (n < 1) fail(ErrorKind::Config, "n: sphere dimension must be >= 1");
  if (d < 1) fail(ErrorKind::Config, "d: frequency count must be >= 1");
  if (alpha < 0.0 || alpha >= 0.5)
    fail(ErrorKind::Config, "alpha: must lie in [0, 1/2)");
  if (s <= 0.5 * (d + n)) {
    os << "s: Sobolev index must exceed (d+n)/2 = " << 0.5 * (d + n);
    fail(ErrorKind::Config, os.str());
  }
  if (sigma <= 0.0) fail(ErrorKind::Config, "sigma: analyticity width must be > 0");
  if (static_cast<double>(l_max) * sigma > 30.0)
    fail(ErrorKind::Config, "l_max * sigma exceeds 30; analytic weights would overflow");
  if (gamma <= 0.0 || gamma > 0.125)
    fail(ErrorKind::Config, "gamma: must lie in (0, 1/8]");
  if (effective_nu() < 1.0 - alpha - 1e-12)
    fail(ErrorKind::Config, "nu: must be >= 1 - alpha");
  if (tau >= 0.0 && tau <= tau_lower_bound()) {
    os << "tau: must exceed d + 2(n-1)tau0/beta + 2 = " << tau_lower_bound();
    fail(ErrorKind::Config, os.str());
  }
  if (chi <= 1.0 || chi >= 2.0) fail(ErrorKind::Config, "chi: must lie in (1, 2)");
  if (k0 < 1) fail(ErrorKind::Config, "k0: initial cutoff must be >= 1");
  if (k_max < 0) fail(ErrorKind::Config, "k_max: must be >= 0");
  if (l_max < 0) fail(ErrorKind::Config, "l_max: must be >= 0");
  if (epsilon < 0.0) fail(ErrorKind::Config, "epsilon: must be >= 0");
  if (max_steps < 1) fail(ErrorKind::Config, "max_steps: must be >= 1");
  if (stop_tol <= 0.0) fail(ErrorKind::Config, "stop_tol: must be > 0");
}

HomologicalSolution solve_homological(const std::vector<double>& omega,
                                      const NormalForm& z, const BlockOperator& m,
                                      double gamma, double tau, double cutoff) {
  HomologicalSolution out;
  out.s = BlockOperator(m.sphere(), m.freq_dim(), m.l_max());
  out.r = BlockOperator(m.sphere(), m.freq_dim(), m.l_max());
  out.min_divisor = std::numeric_limits<double>::infinity();
  double threshold = 2.0 * gamma / std::pow(std::max(1.0, cutoff), tau);
  double cut2 = cutoff * cutoff;
  int n = m.sphere().n;

  for (const auto& [key, block] : m.blocks()) {
    if (static_cast<double>(mode_norm_sq(key.l)) > cut2) {
      out.r.set_block(key.l, key.k, key.kp, block);
      continue;
    }
    bool zero_mode = (mode_norm_sq(key.l) == 0);
    if (zero_mode && key.k == key.kp) continue; // stays in Diag M
    double x = 0.0;
    for (size_t i = 0; i < omega.size(); ++i) x += omega[i] * key.l[i];

    const Matrix& uk = z.eigenvectors(key.k);
    const Matrix& ukp = z.eigenvectors(key.kp);
    const Eigen::VectorXd& muk = z.eigenvalues(key.k);
    const Eigen::VectorXd& mukp = z.eigenvalues(key.kp);
    double lk = laplace_eigenvalue(key.k, n);
    double lkp = laplace_eigenvalue(key.kp, n);

    Matrix rotated = uk.adjoint() * block * ukp;
    for (int j = 0; j < rotated.rows(); ++j) {
      for (int jp = 0; jp < rotated.cols(); ++jp) {
        double divisor = -x + lk + muk(j) - lkp - mukp(jp);
        double mag = std::abs(divisor);
        if (mag < threshold) {
          std::ostringstream os;
          os << "resonant divisor " << divisor << " below threshold " << threshold
             << " at " << ResonanceTuple{key.l, key.k, key.kp, j, jp}.describe();
          fail(ErrorKind::Numeric, os.str());
        }
        out.min_divisor = std::min(out.min_divisor, mag);
        rotated(j, jp) = Complex(0.0, 1.0) * rotated(j, jp) / divisor;
      }
    }
    Matrix s_block = uk * rotated * ukp.adjoint();
    double mnorm = operator_norm(block);
    if (mnorm > 0.0)
      out.growth = std::max(out.growth, operator_norm(s_block) / mnorm);
    out.s.set_block(key.l, key.k, key.kp, std::move(s_block));
  }
  return out;
}

BlockOperator homological_residual(const std::vector<double>& omega,
                                   const NormalForm& z, const BlockOperator& m,
                                   const HomologicalSolution& sol) {
  BlockOperator w = laplacian_power(m.sphere(), m.freq_dim(), m.l_max(), 1.0);
  w += z.to_operator(m.freq_dim(), m.l_max());
  BlockOperator res = Complex(-1.0, 0.0) * phi_derivative(sol.s, omega);
  res += Complex(0.0, 1.0) * commutator(w, sol.s);
  res += m;
  res -= diag_part(m);
  res -= sol.r;
  res.prune(0.0);
  return res;
}

KamStepResult kam_step(const std::vector<double>& omega, const NormalForm& z,
                       const BlockOperator& m, double cutoff, double sigma,
                       double sigma_next, const KamConfig& cfg,
                       const MelnikovVerdict* verdict, double series_constant) {
  KamStepResult out;
  StepRecord& rec = out.record;
  rec.cutoff = cutoff;
  rec.sigma = sigma;
  rec.sigma_next = sigma_next;

  MelnikovVerdict local;
  if (verdict == nullptr) {
    local = melnikov_membership(omega, z, cfg.gamma, cfg.effective_tau(), cutoff,
                                cfg.beta());
    verdict = &local;
  }
  if (!verdict->hypothesis_ok)
    fail(ErrorKind::Domain,
         "normal form too large for the non-resonance hypothesis (needs <= gamma/4)");
  if (!verdict->member)
    fail(ErrorKind::Numeric,
         "frequency excluded by the non-resonance condition at " +
             verdict->nearest.describe());
  rec.member = true;
  rec.melnikov_margin = verdict->min_margin;

  NormParams p_now = cfg.norm_params(sigma);
  NormParams p_next = cfg.norm_params(sigma_next);
  rec.eps_before = beta_norm(m, p_now) / cfg.gamma;

  HomologicalSolution sol =
      solve_homological(omega, z, m, cfg.gamma, cfg.effective_tau(), cutoff);
  rec.min_divisor = sol.min_divisor;
  rec.growth = sol.growth;
  rec.tail_size = beta_norm(sol.r, p_next);
  rec.generator_size = beta_norm(sol.s, p_next);

  // Enforced smallness gate for the exponential series (run-time fitted
  // constant); the worst-case envelope value is recorded as a diagnostic.
  rec.series_gate = series_constant * rec.generator_size;
  double a_exp = 2.0 * cfg.effective_tau() + cfg.n * cfg.effective_tau() / cfg.beta() +
                 cfg.n + 2.0 * cfg.d + 1.0;
  rec.envelope_gate = std::pow(cutoff, std::min(a_exp, 300.0)) * rec.eps_before *
                      series_constant;
  if (!(rec.series_gate <= 0.5))
    fail(ErrorKind::Numeric, "homological generator too large for the step");

  BlockOperator residual = homological_residual(omega, z, m, sol);
  rec.residual = decay_norm(residual, p_now);

  SeriesStats exp_stats;
  out.phi = lie_exponential(sol.s, cfg.lie_tol, cfg.lie_max_terms, &exp_stats);

  // Z_next = Z + i Diag M (Hermitian because M is Hamiltonian).
  out.z_next = z;
  std::vector<int> zero(m.freq_dim(), 0);
  for (int k = 0; k <= m.k_max(); ++k) {
    if (const Matrix* mk = m.find_block(BlockKey{zero, k, k})) {
      Matrix add = Complex(0.0, 1.0) * (*mk);
      out.z_next.set_block(k, z.block(k) + 0.5 * (add + add.adjoint()));
    }
  }

  // Exact conjugation route for the new remainder:
  //   e^S L e^{-S} - (omega.d_phi - iD^2) = -i Z_next + M_next.
  SeriesStats conj_stats;
  BlockOperator z_op = z.to_operator(m.freq_dim(), m.l_max());
  BlockOperator total = conjugate_operator(omega, z_op, m, sol.s, cfg.lie_tol,
                                           cfg.lie_max_terms, &conj_stats);
  rec.lie_terms = std::max(exp_stats.terms, conj_stats.terms);
  out.m_next = total + Complex(0.0, 1.0) * out.z_next.to_operator(m.freq_dim(), m.l_max());
  out.m_next.prune(0.0);
  rec.truncation_loss = std::max(conj_stats.truncation_loss,
                                 exp_stats.truncation_loss);
  rec.hamiltonian_defect = structure_defect(out.m_next, Structure::Hamiltonian);

  rec.eps_after = beta_norm(out.m_next, p_next) / cfg.gamma;
  rec.z_size = beta_norm(out.z_next.to_operator(m.freq_dim(), m.l_max()),
                         cfg.norm_params(0.0)) /
               cfg.gamma;
  return out;
}

KamResult kam_iterate(const std::vector<double>& omega, const NormalForm& z0,
                      const BlockOperator& m0, const KamConfig& cfg, double sigma0,
                      double series_constant) {
  cfg.validate();
  if (sigma0 < 0.0) sigma0 = cfg.sigma / 2.0;

  KamResult out;
  out.z_final = z0;
  out.phi_total = BlockOperator::identity(m0.sphere(), m0.freq_dim(), m0.l_max());
  out.history.outcome = "max_steps";

  NormParams p0 = cfg.norm_params(sigma0);
  double eps0 = beta_norm(m0, p0) / cfg.gamma;
  if (eps0 > cfg.theta_star) {
    std::ostringstream os;
    os << "starting remainder too large: gamma^-1 <<M_0>> = " << eps0 << " > "
       << cfg.theta_star;
    fail(ErrorKind::Numeric, os.str());
  }
  std::vector<int> g0_witness;
  if (!in_diophantine_g0(omega, cfg.gamma, cfg.tau0(), cfg.g0_l_check, &g0_witness)) {
    out.history.outcome = "excised";
    // Pure phase resonance: blame the (l, k, k) = (l, 0, 0) divisor.
    out.history.excision = ResonanceTuple{g0_witness, 0, 0, 0, 0};
    out.history.final_eps = eps0;
    out.history.sigma_final = sigma0;
    return out;
  }

  BlockOperator m = m0;
  double sigma = sigma0;
  double eps = eps0;
  for (int k = 0; k < cfg.max_steps; ++k) {
    if (eps < cfg.stop_tol) {
      out.history.outcome = "converged";
      break;
    }
    double cutoff = std::pow(4.0, k) * cfg.k0;
    double sigma_next = (1.0 - std::pow(2.0, -k - 3.0)) * sigma;

    MelnikovVerdict verdict = melnikov_membership(
        omega, out.z_final, cfg.gamma, cfg.effective_tau(), cutoff, cfg.beta());
    if (!verdict.hypothesis_ok)
      fail(ErrorKind::Numeric,
           "normal form outgrew the non-resonance hypothesis during iteration");
    if (!verdict.member) {
      out.history.outcome = "excised";
      out.history.excision = verdict.nearest;
      break;
    }

    KamStepResult step = kam_step(omega, out.z_final, m, cutoff, sigma, sigma_next,
                                  cfg, &verdict, series_constant);
    step.record.index = k;
    out.history.steps.push_back(step.record);
    out.z_final = std::move(step.z_next);
    m = std::move(step.m_next);
    out.phi_total = compose(step.phi, out.phi_total);
    sigma = sigma_next;
    eps = step.record.eps_after;
  }
  if (out.history.outcome == "max_steps" && eps < cfg.stop_tol)
    out.history.outcome = "converged";

  out.history.final_eps = eps;
  out.history.sigma_final = sigma;
  out.history.final_eigenvalue_sup = out.z_final.weighted_eigenvalue_sup(cfg.beta());
  return out;
}

} // namespace kamred
