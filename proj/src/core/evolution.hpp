// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "normal_form.hpp"

namespace kamred {

struct EvolutionOptions {
  double t_end = 10.0;
  double dt = -1.0;        // < 0: 0.1 / lambda_{k_max}
  int save_count = 101;    // states recorded on a uniform grid incl. endpoints
  std::vector<double> sobolev_orders = {1.0};
};

struct EvolutionRun {
  std::string frame;                    // "original" | "reduced"
  double dt_used = 0.0;
  std::vector<double> times;
  std::vector<double> l2;               // per saved time
  std::vector<std::vector<double>> hs;  // [order index][saved time]
  std::vector<double> orders;
  std::vector<CVector> states;          // flattened coefficients per saved time
};

// Sobolev norm of a flattened phi-independent coefficient vector:
// sqrt( sum_k <k>^{2s} ||u_{[k]}||^2 ).
double hs_norm(const CVector& u, const BasisLayout& layout, double s);

// Integrates  du/dt = i (D^2 - P(omega t)) u  on the truncated basis, where P
// is the Hermitian phi-dependent perturbation (size included).  Uses a
// fourth-order two-point Magnus stepper whose per-step map is exactly
// unitary, so L^2 is conserved up to roundoff for Hermitian generators.
EvolutionRun evolve_original(const CVector& u0, const std::vector<double>& omega,
                             const BlockOperator& perturbation,
                             const BasisLayout& layout, const EvolutionOptions& opt);

// Blockwise exact evolution of  dv/dt = i (D^2 + Z) v : every block norm is
// conserved exactly (up to roundoff) since the generators are Hermitian.
EvolutionRun evolve_reduced(const CVector& v0, const NormalForm& z,
                            const BasisLayout& layout, const EvolutionOptions& opt);

struct CorollaryCheck {
  double deviation = 0.0; // max_t | ||u(t)||_{s'} / ||u_0||_{s'} - 1 |
  double c_fit = 0.0;     // deviation / epsilon
  bool pass = false;      // deviation < 1 (nondegenerate band)
};

CorollaryCheck corollary_check(const EvolutionRun& run, double epsilon,
                               int order_index = 0);

} // namespace kamred
