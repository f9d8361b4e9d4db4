// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "kam.hpp"
#include "random_ops.hpp"

namespace kamred {

// Run-time fitted constants of the norm inequalities the scheme relies on.
// Each one is the worst observed ratio over a batch of random instances at a
// small truncation; they are reported, reused as smallness gates, and checked
// for stability across seeds, never asserted a priori.
struct FittedConstants {
  double action = 0.0;            // ||A z|| <= C |A| ||z||
  double algebra = 0.0;           // |A B| <= C |A| |B|
  double tail = 0.0;              // Fourier-tail projection bound
  double d_conjugation = 0.0;     // |D^b A D^-b|_{s} <= C |A|_{s+b}
  double smoothing_algebra = 0.0; // <<AB>>_{a+b} <= C <<A>>_a <<B>>_b
  double action_gain = 0.0;       // smoothing action on states
  double neumann = 0.0;           // <<e^A - Id>> <= C <<A>>
  double generator = 0.0;         // regularizer norm over input norm
  double homological_growth = 0.0; // ||S block|| over ||M block|| vs K^tau/gamma
  std::uint64_t seed = 0;
  int instances = 0;
};

struct CalibrationOptions {
  int instances = 40;
  int k_max = 4;
  int l_max = 2;
  int freq_dim = 2;
  double s = 2.5;
  double sigma = 0.5;
  double beta = 0.4;
};

FittedConstants calibrate(std::uint64_t seed, const CalibrationOptions& opt = {});

} // namespace kamred
