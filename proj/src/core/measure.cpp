// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#include "measure.hpp"

#include <cmath>

namespace kamred {

WilsonInterval wilson_interval(int successes, int trials) {
  WilsonInterval out;
  if (trials <= 0) return out;
  double z = 1.959963984540054; // 95%
  double n = trials;
  double p = successes / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (p + z2 / (2.0 * n)) / denom;
  double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  out.fraction = p;
  out.low = std::max(0.0, center - half);
  out.high = std::min(1.0, center + half);
  return out;
}

MeasureReport estimate_excised_measure(const NormalForm& z, const MeasureParams& mp,
                                       bool keep_samples) {
  MeasureReport out;
  MelnikovScan scan(z, mp.gamma, mp.tau, mp.cutoff, mp.freq_dim, mp.beta);
  out.threshold = scan.threshold();
  out.hypothesis_ok = normal_form_beta_norm(z, mp.beta) <= mp.gamma / 4.0;
  if (!out.hypothesis_ok)
    fail(ErrorKind::Domain,
         "normal form too large for the non-resonance hypothesis (needs <= gamma/4)");

  Rng rng(mp.seed);
  out.sampled = mp.samples;
  for (int i = 0; i < mp.samples; ++i) {
    std::vector<double> omega(mp.freq_dim);
    for (auto& w : omega) w = rng.uniform(0.5, 1.5);
    MelnikovVerdict verdict = scan.check(omega);
    MeasureSample sample;
    sample.omega = omega;
    sample.excised = !verdict.member;
    sample.margin = verdict.min_margin;
    sample.blame = verdict.nearest;
    if (sample.excised) {
      ++out.excised;
      ++out.histogram[verdict.nearest.describe()];
    }
    if (keep_samples) out.samples.push_back(std::move(sample));
  }
  out.fraction = wilson_interval(out.excised, out.sampled);
  out.bound_exponent =
      -mp.tau + mp.freq_dim + 2.0 * (mp.n - 1) * mp.tau0 / mp.beta + 1.0;
  out.bound_value = mp.gamma * std::pow(mp.cutoff, out.bound_exponent);
  out.fitted_constant =
      out.bound_value > 0.0 ? out.fraction.fraction / out.bound_value : 0.0;
  return out;
}

SublevelResult sublevel_check(const std::vector<std::vector<double>>& grid,
                              const std::vector<double>& values, double lip_lower,
                              double eta, double slack) {
  if (grid.size() != values.size() || grid.empty())
    fail(ErrorKind::Domain, "sublevel check needs one value per grid point");
  SublevelResult out;
  size_t count = grid.size();
  double extent = 0.0;
  for (size_t i = 0; i < count; ++i) {
    for (size_t j = i + 1; j < count; ++j) {
      double dist = 0.0;
      for (size_t c = 0; c < grid[i].size(); ++c) {
        double dv = grid[i][c] - grid[j][c];
        dist += dv * dv;
      }
      dist = std::sqrt(dist);
      extent = std::max(extent, dist);
      if (dist == 0.0) continue;
      out.observed_lip =
          std::max(out.observed_lip, std::abs(values[i] - values[j]) / dist);
    }
  }
  int below = 0;
  for (double v : values)
    if (std::abs(v) <= eta) ++below;
  out.fraction = static_cast<double>(below) / static_cast<double>(count);
  // Diameter bound: the sublevel set of a function with Lipschitz slope at
  // least a has diameter at most 2 eta / a.
  if (extent <= 0.0) extent = 1.0;
  out.bound = std::min(1.0, (2.0 * eta / lip_lower) / extent) * (1.0 + slack) +
              1.0 / static_cast<double>(count);
  if (out.observed_lip < lip_lower) {
    out.conclusive = false; // grid never attains the claimed slope
    return out;
  }
  out.conclusive = true;
  out.pass = out.fraction <= out.bound;
  return out;
}

} // namespace kamred
