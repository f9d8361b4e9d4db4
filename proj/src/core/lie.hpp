// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "block_operator.hpp"

namespace kamred {

struct SeriesStats {
  int terms = 0;
  double last_term = 0.0;
  double truncation_loss = 0.0;
};

// exp(A) = Id + sum_{p>=1} A^p / p!, truncated when the p-th term drops below
// tol in block Frobenius size.  Fails if the terms have not fallen under tol
// within max_terms or start growing persistently.
BlockOperator lie_exponential(const BlockOperator& a, double tol, int max_terms,
                              SeriesStats* stats = nullptr);

// [S, -i D^2] evaluated exactly blockwise: block (l,k,k') times i(lambda_k -
// lambda_k').  Avoids forming the unbounded diagonal in a product.
BlockOperator laplacian_bracket(const BlockOperator& s);

// Full transformed perturbation
//   e^S ( omega.d_phi - i(D^2 + Z) + M ) e^{-S}  -  ( omega.d_phi - i D^2 )
// via the Lie series, with the derivative term handled as the symbol
// derivative of S.  Z must be phi-independent block-diagonal (pass an empty
// operator for Z = 0).
BlockOperator conjugate_operator(const std::vector<double>& omega,
                                 const BlockOperator& z, const BlockOperator& m,
                                 const BlockOperator& s, double tol, int max_terms,
                                 SeriesStats* stats = nullptr);

} // namespace kamred
