// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "block_operator.hpp"
#include "potential.hpp"

namespace kamred {

// Hermitian block matrix of the multiplication operator u -> V(phi, x) u on
// the truncated basis: entry ((k,m), (k',m')) of mode l is
//   sum_{kappa,mu} c(l,kappa,mu) * Integral Y_{kappa,mu} Y_{k',m'} conj(Y_{k,m}).
// Requires n = 2 and a real-valued potential.
BlockOperator assemble_multiplication(const PotentialSpec& v, const SphereSpec& spec,
                                      int l_max);

// Diagonal phi-independent operator with entry sign(m)|m|^alpha at (k, m):
// the fractional power of the axial angular momentum.  Requires n = 2 and
// 0 <= alpha < 1/2.
BlockOperator assemble_angular_power(double alpha, const SphereSpec& spec,
                                     int freq_dim, int l_max);

// Hermitian symmetrization (A B + B A) / 2; the unbounded perturbation
// W (-i d_phi)^alpha enters the reducibility pipeline through this product,
// which keeps the generator Hamiltonian.
BlockOperator symmetrized_product(const BlockOperator& a, const BlockOperator& b);

} // namespace kamred
