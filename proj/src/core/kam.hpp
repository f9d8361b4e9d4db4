// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "lie.hpp"
#include "melnikov.hpp"
#include "normal_form.hpp"

namespace kamred {

// All scalar parameters of the reduction scheme.
struct KamConfig {
  int n = 2;              // sphere dimension
  int d = 2;              // number of forcing frequencies
  double s = 2.5;         // Sobolev index, > (d+n)/2
  double sigma = 1.0;     // analyticity width of the assembled data
  double alpha = 0.3;     // order of the unbounded perturbation, in [0, 1/2)
  double nu = -1.0;       // extra smoothness; < 0 means the default 1 - alpha
  double gamma = 0.05;    // small-divisor weight
  double tau = -1.0;      // divisor exponent; < 0 means lower bound + 0.5
  double chi = 1.5;       // convergence-envelope exponent, in (1, 2)
  int k0 = 1;             // initial Fourier cutoff of the iteration
  int k_max = 8;          // eigenspace truncation
  int l_max = 4;          // Fourier truncation
  double epsilon = 1e-3;  // perturbation size
  int max_steps = 6;
  double stop_tol = 1e-12;   // on gamma^{-1} <<M_k>>
  double theta_star = 0.25;  // admissible starting size gamma^{-1} <<M_0>>
  double lie_tol = 1e-14;
  int lie_max_terms = 80;
  double structure_tol = 1e-9;
  double g0_l_check = 48.0;  // scan radius for the diophantine base set

  double beta() const { return 1.0 - 2.0 * alpha; }
  double tau0() const { return d + 1.0; }
  double tau_lower_bound() const {
    return d + 2.0 * (n - 1) * tau0() / beta() + 2.0;
  }
  double effective_nu() const { return nu < 0.0 ? 1.0 - alpha : nu; }
  double effective_tau() const { return tau < 0.0 ? tau_lower_bound() + 0.5 : tau; }
  SphereSpec sphere() const { return SphereSpec{n, k_max}; }
  // Norm parameters for the smoothing remainders: order subscript -beta, so
  // the weight amplifies by D^{+beta} on both sides.
  NormParams norm_params(double sigma_now) const {
    return NormParams{s, sigma_now, -beta(), gamma};
  }

  // Throws a Config error naming the offending field.
  void validate() const;
};

// Blockwise solution of the homological equation
//   -omega.d_phi S + i[D^2 + Z, S] + M = Diag M + R
// with S supported on |l| <= cutoff, R carrying the |l| > cutoff tail of M.
struct HomologicalSolution {
  BlockOperator s;
  BlockOperator r;
  double min_divisor = 0.0;
  double growth = 0.0; // worst block-norm ratio ||S block|| / ||M block||
};

HomologicalSolution solve_homological(const std::vector<double>& omega,
                                      const NormalForm& z, const BlockOperator& m,
                                      double gamma, double tau, double cutoff);

// Residual of the homological identity, evaluated with independent generic
// operator routines (derivative, composition, projection).
BlockOperator homological_residual(const std::vector<double>& omega,
                                   const NormalForm& z, const BlockOperator& m,
                                   const HomologicalSolution& sol);

struct StepRecord {
  int index = 0;
  double cutoff = 0.0; // K_k
  double sigma = 0.0, sigma_next = 0.0;
  double eps_before = 0.0, eps_after = 0.0; // gamma^{-1} <<M>> at sigma, sigma_next
  double z_size = 0.0;                      // gamma^{-1} <<Z_next>>
  double generator_size = 0.0;              // <<S>>
  double min_divisor = 0.0;
  double growth = 0.0;
  double residual = 0.0;           // decay norm of the homological residual
  double tail_size = 0.0;          // <<R>>
  double series_gate = 0.0;        // enforced smallness: c_fit * <<S>>
  double envelope_gate = 0.0;      // the worst-case envelope value, diagnostic only
  int lie_terms = 0;
  double truncation_loss = 0.0;
  double hamiltonian_defect = 0.0; // structure defect of M_next
  bool member = false;
  double melnikov_margin = 0.0;
};

struct KamStepResult {
  NormalForm z_next;
  BlockOperator m_next;
  BlockOperator phi; // e^S
  StepRecord record;
};

// One reduction step at cutoff K: solves the homological equation, checks the
// series smallness gate, conjugates by e^S and splits the new normal form.
// 'verdict' may carry a precomputed membership check; when null the check is
// performed here.  series_constant is the run-time fitted constant of the
// exponential smallness gate.
KamStepResult kam_step(const std::vector<double>& omega, const NormalForm& z,
                       const BlockOperator& m, double cutoff, double sigma,
                       double sigma_next, const KamConfig& cfg,
                       const MelnikovVerdict* verdict = nullptr,
                       double series_constant = 1.0);

struct KamHistory {
  std::vector<StepRecord> steps;
  std::string outcome; // converged | excised | max_steps
  ResonanceTuple excision;
  double final_eps = 0.0;
  double final_eigenvalue_sup = 0.0; // sup <k>^beta |mu|
  double sigma_final = 0.0;
};

struct KamResult {
  NormalForm z_final;
  BlockOperator phi_total; // Phi_k o ... o Phi_1 on the truncation
  KamHistory history;
};

// Full iteration with the schedules K_k = 4^k K_0 and
// sigma_{k+1} = (1 - 2^{-k-3}) sigma_k, starting from sigma0 (default
// cfg.sigma / 2, the width left over by the regularization step).
KamResult kam_iterate(const std::vector<double>& omega, const NormalForm& z0,
                      const BlockOperator& m0, const KamConfig& cfg,
                      double sigma0 = -1.0, double series_constant = 1.0);

} // namespace kamred
