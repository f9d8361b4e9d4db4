// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

#include "kam.hpp"

namespace kamred {

// Everything a batch run needs, read from a single structured text file of
// "key = value" lines ('#' comments).  Flags never override the physics; the
// CLI only selects stages and paths.
struct RunConfig {
  KamConfig kam;

  std::string potential_v_path;
  std::string potential_w_path;
  std::vector<std::vector<double>> omegas; // explicit frequency vectors

  std::uint64_t seed = 1;

  // evolution stage
  double evolve_t = 50.0;
  double evolve_dt = -1.0; // < 0: automatic
  std::vector<double> evolve_orders = {1.0};
  int evolve_u0_kmax = 2;
  int evolve_save_count = 201;

  // measure stage
  int measure_samples = 20000;
  double measure_tau = 10.5;
  double measure_beta = 1.0; // exponent weight used by the scan
  std::vector<double> measure_cutoffs = {4.0, 8.0};

  std::vector<std::string> stages = {"assemble", "regularize", "reduce",
                                     "measure", "evolve", "report"};

  std::string base_dir; // directory of the config file, for relative paths

  void validate() const;
  std::string resolve_path(const std::string& rel) const;
};

RunConfig parse_run_config(const std::string& text, const std::string& base_dir);
RunConfig load_run_config(const std::string& path);

} // namespace kamred
