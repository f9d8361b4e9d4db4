// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#include "lie.hpp"

namespace kamred {

namespace {

// Shared adaptive summation: out += sum_p scale_p(term), terms produced by
// next(term, p).  Stops once the term size falls below tol.
void sum_series(BlockOperator& out, BlockOperator term, double tol, int max_terms,
                const std::function<BlockOperator(const BlockOperator&, int)>& next,
                SeriesStats* stats) {
  double loss = 0.0;
  double prev = term.max_block_frobenius();
  int grow_streak = 0;
  int p = 1;
  for (;; ++p) {
    double size = term.max_block_frobenius();
    if (stats) {
      stats->terms = p;
      stats->last_term = size;
    }
    out += term;
    loss = std::max(loss, term.truncation_loss());
    if (size < tol) break;
    if (p >= max_terms)
      fail(ErrorKind::Numeric, "Lie series did not reach tolerance within max_terms");
    if (size > prev) {
      if (++grow_streak >= 5 && size > 1e3)
        fail(ErrorKind::Numeric, "Lie series terms are growing; argument too large");
    } else {
      grow_streak = 0;
    }
    prev = size;
    term = next(term, p);
    // Dropping far-below-tolerance blocks keeps high-order terms from
    // filling the whole truncation; the discarded mass per term stays orders
    // of magnitude under the stopping tolerance.
    term.prune(tol * 1e-4);
  }
  if (stats) stats->truncation_loss = loss;
  out.add_truncation_loss(loss);
}

} // namespace

BlockOperator lie_exponential(const BlockOperator& a, double tol, int max_terms,
                              SeriesStats* stats) {
  BlockOperator out = BlockOperator::identity(a.sphere(), a.freq_dim(), a.l_max());
  if (a.empty()) {
    if (stats) *stats = SeriesStats{0, 0.0, 0.0};
    return out;
  }
  sum_series(out, a, tol, max_terms,
             [&](const BlockOperator& term, int p) {
               BlockOperator t = compose(term, a);
               t *= Complex(1.0 / (p + 1), 0.0);
               double l = std::max(term.truncation_loss(), t.truncation_loss());
               t.set_truncation_loss(l);
               return t;
             },
             stats);
  return out;
}

BlockOperator laplacian_bracket(const BlockOperator& s) {
  BlockOperator out(s.sphere(), s.freq_dim(), s.l_max());
  int n = s.sphere().n;
  for (const auto& [key, m] : s.blocks()) {
    double gap = laplace_eigenvalue(key.k, n) - laplace_eigenvalue(key.kp, n);
    if (gap == 0.0) continue;
    out.set_block(key.l, key.k, key.kp, Complex(0.0, gap) * m);
  }
  return out;
}

BlockOperator conjugate_operator(const std::vector<double>& omega,
                                 const BlockOperator& z, const BlockOperator& m,
                                 const BlockOperator& s, double tol, int max_terms,
                                 SeriesStats* stats) {
  m.require_compatible(s);
  BlockOperator bounded = m; // -iZ + M, the phi-dependent bounded part
  if (!z.empty()) {
    z.require_compatible(m);
    bounded += Complex(0.0, -1.0) * z;
  }
  // Seed of the single Lie series: ad_S of the full generator,
  //   ad_S(-iD^2) + ad_S(-iZ + M) + ad_S(omega.d_phi).
  BlockOperator seed = laplacian_bracket(s);
  seed += commutator(s, bounded);
  seed -= phi_derivative(s, omega);
  seed.prune(0.0);

  BlockOperator out = bounded;
  if (seed.empty()) {
    if (stats) *stats = SeriesStats{0, 0.0, 0.0};
    return out;
  }
  sum_series(out, seed, tol, max_terms,
             [&](const BlockOperator& term, int p) {
               BlockOperator t = commutator(s, term);
               t *= Complex(1.0 / (p + 1), 0.0);
               double l = std::max(term.truncation_loss(), t.truncation_loss());
               t.set_truncation_loss(l);
               return t;
             },
             stats);
  return out;
}

} // namespace kamred
