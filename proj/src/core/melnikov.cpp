// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#include "melnikov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kamred {

std::string ResonanceTuple::describe() const {
  std::ostringstream os;
  os << "l=(";
  for (size_t i = 0; i < l.size(); ++i) os << (i ? "," : "") << l[i];
  os << ") k=" << k << " k'=" << kp << " j=" << j << " j'=" << jp;
  return os.str();
}

bool in_diophantine_g0(const std::vector<double>& omega, double gamma, double tau0,
                       double l_check, std::vector<int>* witness) {
  int d = static_cast<int>(omega.size());
  for (const auto& l : fourier_ball(d, l_check)) {
    long long n2 = mode_norm_sq(l);
    if (n2 == 0) continue;
    double x = 0.0;
    for (int i = 0; i < d; ++i) x += omega[i] * l[i];
    double bound = 4.0 * gamma / std::pow(std::sqrt(static_cast<double>(n2)), tau0);
    if (std::abs(x) < bound) {
      if (witness) *witness = l;
      return false;
    }
  }
  return true;
}

double normal_form_beta_norm(const NormalForm& z, double beta) {
  // Smoothing norm of order -beta: both sides carry D^{+beta}, so the
  // weights amplify with the eigenvalue.
  double best = 0.0;
  for (int k = 0; k <= z.k_max(); ++k) {
    const auto& mu = z.eigenvalues(k);
    if (mu.size() == 0) continue;
    double w = std::pow(laplace_eigenvalue_clamped(k, z.sphere().n), beta / 2.0);
    best = std::max(best, w * mu.cwiseAbs().maxCoeff());
  }
  return 2.0 * best;
}

MelnikovScan::MelnikovScan(const NormalForm& z, double gamma, double tau,
                           double scan_radius, int freq_dim, double beta)
    : z_(&z),
      freq_dim_(freq_dim),
      n_(z.sphere().n),
      k_max_(z.k_max()),
      gamma_(gamma),
      tau_(tau),
      radius_(scan_radius),
      beta_(beta) {
  threshold_ = 2.0 * gamma / std::pow(std::max(1.0, scan_radius), tau);
  modes_ = fourier_ball(freq_dim, scan_radius);

  same_block_diffs_.resize(k_max_ + 1);
  for (int k = 0; k <= k_max_; ++k) {
    const auto& mu = z.eigenvalues(k);
    mu_bound_ = std::max(mu_bound_, mu.size() ? mu.cwiseAbs().maxCoeff() : 0.0);
    auto& diffs = same_block_diffs_[k];
    for (int j = 0; j < mu.size(); ++j)
      for (int jp = 0; jp < mu.size(); ++jp)
        diffs.push_back({mu(j) - mu(jp), j, jp});
    std::sort(diffs.begin(), diffs.end(),
              [](const EigsDiff& a, const EigsDiff& b) { return a.value < b.value; });
  }

  // Off-diagonal candidates.  A divisor can only come near zero when the
  // integer eigenvalue gap lies within |omega.l| + O(1) of zero, and the
  // separation property |lambda_k - lambda_k'| >= k + k' caps both indices by
  // the gap itself, so the table below is complete for this scan radius.
  double gap_cap = 1.5 * std::sqrt(static_cast<double>(freq_dim)) * scan_radius + 8.0;
  int k_cap = static_cast<int>(std::ceil(gap_cap));
  for (int k = 0; k <= k_cap; ++k) {
    for (int kp = 0; kp <= k_cap; ++kp) {
      if (k == kp) continue;
      long long gap = laplace_eigenvalue_int(k, n_) - laplace_eigenvalue_int(kp, n_);
      if (std::abs(static_cast<double>(gap)) > gap_cap) continue;
      pairs_by_gap_[gap].push_back({k, kp, gap});
    }
  }
}

MelnikovVerdict MelnikovScan::check(const std::vector<double>& omega) const {
  MelnikovVerdict out;
  out.threshold = threshold_;
  out.hypothesis_value = normal_form_beta_norm(*z_, beta_);
  out.hypothesis_ok = out.hypothesis_value <= gamma_ / 4.0;

  auto consider = [&](double divisor, const std::vector<int>& l, int k, int kp,
                      int j, int jp) {
    double margin = std::abs(divisor);
    if (margin < out.min_margin) {
      out.min_margin = margin;
      out.nearest = ResonanceTuple{l, k, kp, j, jp};
    }
    if (margin < threshold_) out.member = false;
  };

  for (const auto& l : modes_) {
    bool zero_mode = (mode_norm_sq(l) == 0);
    double x = 0.0;
    for (int i = 0; i < freq_dim_; ++i) x += omega[i] * l[i];

    if (!zero_mode) {
      // k = k' <= k_max: nearest eigenvalue difference to -x per block.
      for (int k = 0; k <= k_max_; ++k) {
        const auto& diffs = same_block_diffs_[k];
        if (diffs.empty()) continue;
        auto it = std::lower_bound(
            diffs.begin(), diffs.end(), -x,
            [](const EigsDiff& a, double v) { return a.value < v; });
        for (auto cand : {it, it == diffs.begin() ? diffs.end() : std::prev(it)}) {
          if (cand == diffs.end()) continue;
          consider(x + cand->value, l, k, k, cand->j, cand->jp);
        }
      }
      // k = k' beyond the truncation (zero shift), and j = j' anywhere.
      consider(x, l, k_max_ + 1, k_max_ + 1, 0, 0);
    }

    // k != k': integer gaps near -x.  Anything outside the +-3 window is at
    // least ~2.5 - sup|mu| away from resonance, far above threshold.
    long long center = static_cast<long long>(std::llround(-x));
    for (long long delta = center - 3; delta <= center + 3; ++delta) {
      auto it = pairs_by_gap_.find(delta);
      if (it == pairs_by_gap_.end()) continue;
      for (const auto& pr : it->second) {
        if (zero_mode && pr.k == pr.kp) continue; // (0,k,k) excluded
        const Eigen::VectorXd* mu_k = pr.k <= k_max_ ? &z_->eigenvalues(pr.k) : nullptr;
        const Eigen::VectorXd* mu_kp =
            pr.kp <= k_max_ ? &z_->eigenvalues(pr.kp) : nullptr;
        int dk = mu_k ? static_cast<int>(mu_k->size()) : 1;
        int dkp = mu_kp ? static_cast<int>(mu_kp->size()) : 1;
        double base = x + static_cast<double>(pr.gap);
        for (int j = 0; j < dk; ++j) {
          double mkj = mu_k ? (*mu_k)(j) : 0.0;
          for (int jp = 0; jp < dkp; ++jp) {
            double mkpjp = mu_kp ? (*mu_kp)(jp) : 0.0;
            consider(base + mkj - mkpjp, l, pr.k, pr.kp, j, jp);
          }
        }
      }
    }
  }
  return out;
}

MelnikovVerdict melnikov_membership(const std::vector<double>& omega,
                                    const NormalForm& z, double gamma, double tau,
                                    double scan_radius, double beta) {
  MelnikovScan scan(z, gamma, tau, scan_radius, static_cast<int>(omega.size()), beta);
  return scan.check(omega);
}

} // namespace kamred
