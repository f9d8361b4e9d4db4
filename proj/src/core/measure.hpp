// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "melnikov.hpp"
#include "rng.hpp"

namespace kamred {

struct WilsonInterval {
  double fraction = 0.0;
  double low = 0.0;
  double high = 0.0;
};

// 95% Wilson score interval for a binomial proportion.
WilsonInterval wilson_interval(int successes, int trials);

struct MeasureParams {
  double gamma = 0.05;
  double tau = 10.5;
  double cutoff = 4.0; // K
  double beta = 1.0;
  double tau0 = 3.0;   // d + 1
  int n = 2;
  int freq_dim = 2;
  int samples = 20000;
  std::uint64_t seed = 1;
};

struct MeasureSample {
  std::vector<double> omega;
  bool excised = false;
  double margin = 0.0;
  ResonanceTuple blame;
};

struct MeasureReport {
  int sampled = 0;
  int excised = 0;
  WilsonInterval fraction;
  double bound_exponent = 0.0; // -tau + d + 2(n-1) tau0/beta + 1
  double bound_value = 0.0;    // gamma * K^exponent
  double fitted_constant = 0.0; // fraction / bound_value
  std::map<std::string, int> histogram; // excision count per blaming tuple
  std::vector<MeasureSample> samples;   // in sampling order (CSV contract)
  bool hypothesis_ok = true;
  double threshold = 0.0;
};

// Fraction of uniform samples of the frequency box [1/2,3/2]^d that fail the
// second-order non-resonance condition, with the minimal-margin tuple blamed
// for each failure.
MeasureReport estimate_excised_measure(const NormalForm& z, const MeasureParams& mp,
                                       bool keep_samples = true);

struct SublevelResult {
  bool conclusive = false;
  bool pass = false;
  double fraction = 0.0;      // grid fraction with |f| <= eta
  double bound = 0.0;         // (eta / a) * (1 + slack)
  double observed_lip = 0.0;  // largest difference quotient on the grid
};

// Checks the sublevel estimate meas{|f| <= eta} <= (eta/a) meas(O) on a
// scalar table over a frequency grid.  Inconclusive when the grid never
// exhibits the claimed Lipschitz lower bound.
SublevelResult sublevel_check(const std::vector<std::vector<double>>& grid,
                              const std::vector<double>& values, double lip_lower,
                              double eta, double slack = 0.05);

} // namespace kamred
