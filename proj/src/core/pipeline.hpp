// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>

#include "assemble.hpp"
#include "calibration.hpp"
#include "config.hpp"
#include "evolution.hpp"
#include "measure.hpp"
#include "regularization.hpp"

namespace kamred {

// Assembled matrices of one run.  r / r_prime are the generator-form
// perturbations (Hamiltonian, size included); hermitian_perturbation is the
// physical Hermitian operator driving the time integration.
struct AssembledSystem {
  BlockOperator v_op;       // multiplication by V
  BlockOperator w_op;       // multiplication by W
  BlockOperator angular;    // (-i d_phi)^alpha, diagonal
  BlockOperator symmetrized; // (W P + P W)/2
  BlockOperator r;          // i epsilon (W P + P W)/2
  BlockOperator r_prime;    // i epsilon V
  BlockOperator hermitian_perturbation; // epsilon ((W P + P W)/2 + V)
};

struct CheckResult {
  std::string id;
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
};

// Orchestrates assemble -> regularize -> reduce -> measure -> evolve ->
// report over one output directory.  Stages may be run individually; later
// stages reload what they need from the directory when the in-memory cache is
// cold.
class Pipeline {
public:
  Pipeline(RunConfig cfg, std::string out_dir);

  void run_stage(const std::string& name);
  void run_selected(); // cfg.stages in canonical order
  const RunConfig& config() const { return cfg_; }
  const std::string& out_dir() const { return out_dir_; }

  // Stage results, loading from disk if needed.
  const AssembledSystem& assembled();
  const RegularizedSystem& regularized();

private:
  void stage_assemble();
  void stage_regularize();
  void stage_reduce();
  void stage_measure();
  void stage_evolve();
  void stage_report();

  RunConfig cfg_;
  std::string out_dir_;
  std::optional<AssembledSystem> assembled_;
  std::optional<RegularizedSystem> regularized_;
  std::optional<FittedConstants> constants_;
  struct Reduction {
    std::vector<double> omega;
    KamResult result;
  };
  std::vector<Reduction> reductions_;

  const FittedConstants& constants();
  void load_reductions_if_needed();
};

// Invariant suites of every module at small truncation; the backbone of the
// selfcheck subcommand.
std::vector<CheckResult> selfcheck_suite(std::uint64_t seed = 7);

// Writes the selfcheck matrix as JSON (optional) and returns overall pass.
bool run_selfcheck(const std::string& json_path_or_empty, std::string* summary);

} // namespace kamred
