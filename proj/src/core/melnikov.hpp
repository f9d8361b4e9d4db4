// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <limits>

#include "normal_form.hpp"

namespace kamred {

// Identifies the divisor omega.l + lambda_k + mu_{k,j} - lambda_k' - mu_{k',j'}.
// k or k' beyond the retained truncation are represented with j = 0 and zero
// eigenvalue shift.
struct ResonanceTuple {
  std::vector<int> l;
  int k = -1, kp = -1, j = -1, jp = -1;
  bool valid() const { return k >= 0; }
  std::string describe() const;
};

struct MelnikovVerdict {
  bool member = true;
  bool hypothesis_ok = true;   // block-diagonal size against gamma/4
  double hypothesis_value = 0.0;
  double threshold = 0.0;      // 2 gamma / K^tau
  double min_margin = std::numeric_limits<double>::infinity();
  ResonanceTuple nearest;      // tuple achieving min_margin among scanned ones
};

// Diophantine base condition |omega.l| >= 4 gamma / |l|^{tau0} for all
// 0 < |l| <= l_check.
bool in_diophantine_g0(const std::vector<double>& omega, double gamma, double tau0,
                       double l_check, std::vector<int>* witness = nullptr);

// beta-weighted size 2 sup_k lambda_k^{-beta/2} max_j |mu_{k,j}| of a
// phi-independent block-diagonal operator (its smoothing norm, exactly).
double normal_form_beta_norm(const NormalForm& z, double beta);

// Second-order non-resonance scan.  Precomputes eigenvalue-difference tables
// so that repeated membership checks (Monte-Carlo sampling) stay cheap; the
// pruning only ever skips divisors that are provably above threshold, so the
// verdict matches an exhaustive scan.
class MelnikovScan {
public:
  MelnikovScan(const NormalForm& z, double gamma, double tau, double scan_radius,
               int freq_dim, double beta);

  MelnikovVerdict check(const std::vector<double>& omega) const;

  double threshold() const { return threshold_; }
  double scan_radius() const { return radius_; }

private:
  struct EigsDiff {
    double value;
    int j, jp;
  };
  struct Pair {
    int k, kp;
    long long gap; // lambda_k - lambda_k'
  };

  const NormalForm* z_;
  int freq_dim_;
  int n_;
  int k_max_;
  double gamma_, tau_, radius_, beta_, threshold_;
  double mu_bound_ = 0.0; // sup |mu|
  std::vector<std::vector<int>> modes_;
  std::vector<std::vector<EigsDiff>> same_block_diffs_; // per k, sorted by value
  std::map<long long, std::vector<Pair>> pairs_by_gap_; // off-diagonal candidates
};

// One-call membership check (hypothesis gate included).
MelnikovVerdict melnikov_membership(const std::vector<double>& omega,
                                    const NormalForm& z, double gamma, double tau,
                                    double scan_radius, double beta);

} // namespace kamred
