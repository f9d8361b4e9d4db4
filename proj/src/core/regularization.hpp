// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "lie.hpp"
#include "normal_form.hpp"

namespace kamred {

// Order-reducing generator for a diagonal-free Hamiltonian perturbation:
//   A_{[k]}^{[k']}(l) = i R_{[k]}^{[k']}(l) / (lambda_k - lambda_k'),  k != k',
// zero on the diagonal.  Solves R + [A, -iD^2] = 0 exactly on the truncation.
BlockOperator build_regularizer(const BlockOperator& r, double diag_tol = 1e-12);

struct RegularizedSystem {
  NormalForm z;             // new normal-form correction (Hermitian, diagonal)
  BlockOperator z_op;       // the same as an operator
  BlockOperator m;          // Hamiltonian smoothing remainder, M_{[k]}^{[k]}(0) = 0
  BlockOperator transform;  // T = e^A = Id + F
  BlockOperator generator;  // A

  struct Diagnostics {
    double r_norm = 0.0;          // <<R>>_{alpha,s+nu,sigma}
    double r_prime_norm = 0.0;    // <<R'>>_{-beta,s,sigma}
    double generator_norm = 0.0;  // <<A>>_{alpha-1,s+nu,sigma}
    double z_norm = 0.0;          // <<Z>>_{-beta,s}
    double m_norm = 0.0;          // <<M>>_{-beta,s,sigma/2}
    double conjugacy_defect = 0.0; // interior defect of the independent check
    double generator_residual = 0.0; // || R + [A,-iD^2] ||
    double truncation_loss = 0.0;
    int lie_terms = 0;
  } diag;
};

struct RegularizeOptions {
  double tol = 1e-12;
  int max_terms = 60;
  double diag_tol = 1e-11;
  double structure_tol = 1e-10;
  double smallness_limit = 0.5; // cap on the generator decay norm
  double interior_fraction = 0.5;
};

// Conjugates  omega.d_phi - iD^2 + R + R'  by e^A into
// omega.d_phi - i(D^2 + Z) + M  with Z in normal form and M a Hamiltonian
// smoothing remainder, and verifies the identity through an independent
// composition route on the interior of the truncation.
RegularizedSystem regularize(const std::vector<double>& omega, const BlockOperator& r,
                             const BlockOperator& r_prime, const NormParams& p,
                             const RegularizeOptions& opt = {});

// Largest block operator norm over the interior window
// k, k' <= k_max * k_frac, |l| <= l_max * l_frac.
double interior_defect(const BlockOperator& a, double k_frac, double l_frac);

} // namespace kamred
