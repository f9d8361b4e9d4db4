// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "block_operator.hpp"
#include "normal_form.hpp"
#include "rng.hpp"

namespace kamred {

enum class RandomStructure { Generic, Hermitian, Hamiltonian, HamiltonianDiagonalFree };

struct RandomProfile {
  double amplitude = 1.0;
  double sigma_decay = 0.5;  // e^{-sigma_decay |l|} per mode
  double s_decay = 2.0;      // <k-k'>^{-s_decay} off-diagonal decay
  double fill = 1.0;         // probability a block is populated
};

// Random truncated operator with prescribed structure and decay profile.
BlockOperator random_operator(Rng& rng, const SphereSpec& sphere, int freq_dim,
                              int l_max, const RandomProfile& profile,
                              RandomStructure structure = RandomStructure::Generic);

// Random phi-independent block-diagonal Hermitian operator whose beta-weighted
// size stays below the given cap.
NormalForm random_normal_form(Rng& rng, const SphereSpec& sphere, double beta,
                              double size_cap);

// Random state with the same decay profile semantics.
StateVector random_state(Rng& rng, const SphereSpec& sphere, int freq_dim, int l_max,
                         const RandomProfile& profile);

} // namespace kamred
