// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#include "regularization.hpp"

#include <sstream>

namespace kamred {

BlockOperator build_regularizer(const BlockOperator& r, double diag_tol) {
  int n = r.sphere().n;
  BlockOperator out(r.sphere(), r.freq_dim(), r.l_max());
  for (const auto& [key, m] : r.blocks()) {
    if (key.k == key.kp) {
      if (m.cwiseAbs().maxCoeff() > diag_tol) {
        std::ostringstream os;
        os << "perturbation is not diagonal-free at block k = " << key.k;
        fail(ErrorKind::Domain, os.str());
      }
      continue;
    }
    double gap = laplace_eigenvalue(key.k, n) - laplace_eigenvalue(key.kp, n);
    out.set_block(key.l, key.k, key.kp, (Complex(0.0, 1.0) / gap) * m);
  }
  return out;
}

double interior_defect(const BlockOperator& a, double k_frac, double l_frac) {
  double kcap = a.k_max() * k_frac;
  double lcap2 = (a.l_max() * l_frac) * (a.l_max() * l_frac);
  double best = 0.0;
  for (const auto& [key, m] : a.blocks()) {
    if (key.k > kcap || key.kp > kcap) continue;
    if (static_cast<double>(mode_norm_sq(key.l)) > lcap2 + 1e-9) continue;
    best = std::max(best, operator_norm(m));
  }
  return best;
}

RegularizedSystem regularize(const std::vector<double>& omega, const BlockOperator& r,
                             const BlockOperator& r_prime, const NormParams& p,
                             const RegularizeOptions& opt) {
  r.require_compatible(r_prime);
  double scale = 1.0 + r.max_block_frobenius() + r_prime.max_block_frobenius();
  if (!structure_check(r, Structure::Hamiltonian, opt.structure_tol * scale))
    fail(ErrorKind::Domain, "unbounded perturbation must be Hamiltonian");
  if (!structure_check(r_prime, Structure::Hamiltonian, opt.structure_tol * scale))
    fail(ErrorKind::Domain, "smoothing perturbation must be Hamiltonian");

  RegularizedSystem out;
  BlockOperator gen = build_regularizer(r, opt.diag_tol * scale);

  // Norm bookkeeping: the generator and inputs are measured at the incoming
  // width, the remainder at half width (the width handed to the iteration).
  double alpha = 1.0 - (p.beta + 1.0) / 2.0; // beta = 1 - 2 alpha
  NormParams p_gen{p.s, 0.75 * p.sigma, alpha - 1.0, p.gamma};
  NormParams p_half{p.s, 0.5 * p.sigma, -p.beta, p.gamma}; // smoothing order -beta

  out.diag.r_norm = beta_norm(r, NormParams{p.s, p.sigma, alpha, p.gamma});
  out.diag.r_prime_norm = beta_norm(r_prime, NormParams{p.s, p.sigma, -p.beta, p.gamma});
  out.diag.generator_norm = beta_norm(gen, p_gen);

  double gen_size = decay_norm(gen, NormParams{p.s, p.sigma});
  if (gen_size > opt.smallness_limit) {
    std::ostringstream os;
    os << "regularizing generator too large for the exponential series: "
       << gen_size << " > " << opt.smallness_limit;
    fail(ErrorKind::Numeric, os.str());
  }

  // Exact homological identity of the generator on the truncation.
  {
    BlockOperator res = r + laplacian_bracket(gen);
    out.diag.generator_residual = res.max_block_frobenius();
  }

  BlockOperator perturbation = r + r_prime;
  BlockOperator empty_z(r.sphere(), r.freq_dim(), r.l_max());
  // The dispersion diagonal amplifies series-truncation error in the
  // conjugation identity, so the series run tighter than the target defect.
  double series_tol =
      opt.tol / (1.0 + laplace_eigenvalue(r.k_max(), r.sphere().n));
  SeriesStats stats;
  BlockOperator total = conjugate_operator(omega, empty_z, perturbation, gen,
                                           series_tol, opt.max_terms, &stats);
  out.diag.lie_terms = stats.terms;

  BlockOperator diag = diag_part(total);
  out.z_op = Complex(0.0, 1.0) * diag;
  out.z = NormalForm::from_operator(out.z_op, opt.structure_tol * scale);
  out.z_op = out.z.to_operator(r.freq_dim(), r.l_max()); // Hermitized blocks
  out.m = total - diag;
  out.m.prune(0.0);
  out.generator = gen;
  SeriesStats exp_stats;
  out.transform = lie_exponential(gen, series_tol, opt.max_terms, &exp_stats);

  out.diag.z_norm = beta_norm(out.z_op, NormParams{p.s, 0.0, -p.beta, p.gamma});
  out.diag.m_norm = beta_norm(out.m, p_half);
  out.diag.truncation_loss =
      std::max(stats.truncation_loss, out.transform.truncation_loss());

  // Independent verification of the conjugation on the interior window:
  //   T G T^{-1} = omega.d_phi + T (omega.d_phi T^{-1}) + T (-iD^2 + R + R') T^{-1}.
  {
    BlockOperator t_inv =
        lie_exponential(Complex(-1.0, 0.0) * gen, series_tol, opt.max_terms);
    BlockOperator dsq = laplacian_power(r.sphere(), r.freq_dim(), r.l_max(), 1.0);
    BlockOperator g_bounded = Complex(0.0, -1.0) * dsq + perturbation;
    BlockOperator direct = compose(out.transform, compose(g_bounded, t_inv));
    direct += compose(out.transform, phi_derivative(t_inv, omega));
    BlockOperator expected =
        Complex(0.0, -1.0) * dsq + Complex(0.0, -1.0) * out.z_op + out.m;
    BlockOperator defect = direct - expected;
    out.diag.conjugacy_defect =
        interior_defect(defect, opt.interior_fraction, opt.interior_fraction);
  }

  return out;
}

} // namespace kamred
