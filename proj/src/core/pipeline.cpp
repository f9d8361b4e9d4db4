// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#include "pipeline.hpp"

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lie.hpp"
#include "oracle.hpp"

namespace kamred {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string timestamp_utc() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream os(path);
  if (!os) fail(ErrorKind::Io, "cannot write " + path);
  os << j.dump(2) << '\n';
}

json read_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorKind::Io, "cannot read " + path);
  json j;
  is >> j;
  return j;
}

void dump_operator_file(const std::string& path, const BlockOperator& op) {
  std::ofstream os(path);
  if (!os) fail(ErrorKind::Io, "cannot write " + path);
  write_operator(os, op);
}

json check_json(const CheckResult& c) {
  return json{{"id", c.id}, {"pass", c.pass}, {"value", c.value},
              {"threshold", c.threshold}};
}

// Max block norm over keys with k + k' even (parity selection of odd
// potentials).
double even_parity_mass(const BlockOperator& a) {
  double best = 0.0;
  for (const auto& [key, m] : a.blocks())
    if ((key.k + key.kp) % 2 == 0) best = std::max(best, operator_norm(m));
  return best;
}

CVector seeded_initial_state(const BasisLayout& layout, int support_kmax,
                             std::uint64_t seed) {
  Rng rng(seed ^ 0x5eedu);
  CVector u0 = CVector::Zero(layout.dim());
  for (int k = 0; k <= support_kmax; ++k)
    for (int i = 0; i < layout.block_dim(k); ++i)
      u0(layout.offset(k) + i) = rng.complex_normal();
  double nrm = u0.norm();
  if (nrm == 0.0) u0(0) = 1.0;
  else u0 /= nrm;
  return u0;
}

json omega_json(const std::vector<double>& w) {
  json out = json::array();
  for (double v : w) out.push_back(v);
  return out;
}

} // namespace

Pipeline::Pipeline(RunConfig cfg, std::string out_dir)
    : cfg_(std::move(cfg)), out_dir_(std::move(out_dir)) {
  cfg_.validate();
  if (cfg_.omegas.empty())
    fail(ErrorKind::Config, "omega: at least one frequency vector is required");
  fs::create_directories(out_dir_);
}

const FittedConstants& Pipeline::constants() {
  if (!constants_) constants_ = calibrate(cfg_.seed);
  return *constants_;
}

const AssembledSystem& Pipeline::assembled() {
  if (!assembled_) stage_assemble();
  return *assembled_;
}

const RegularizedSystem& Pipeline::regularized() {
  if (!regularized_) stage_regularize();
  return *regularized_;
}

void Pipeline::run_stage(const std::string& name) {
  if (name == "assemble") stage_assemble();
  else if (name == "regularize") stage_regularize();
  else if (name == "reduce") stage_reduce();
  else if (name == "measure") stage_measure();
  else if (name == "evolve") stage_evolve();
  else if (name == "report") stage_report();
  else fail(ErrorKind::Config, "unknown stage '" + name + "'");
}

void Pipeline::run_selected() {
  const char* order[] = {"assemble", "regularize", "reduce",
                         "measure", "evolve", "report"};
  for (const char* st : order)
    for (const auto& sel : cfg_.stages)
      if (sel == st) run_stage(st);
}

void Pipeline::stage_assemble() {
  const KamConfig& kc = cfg_.kam;
  SphereSpec sphere = kc.sphere();
  AssembledSystem sys;

  PotentialSpec v(kc.d), w(kc.d);
  if (!cfg_.potential_v_path.empty())
    v = load_potential(cfg_.resolve_path(cfg_.potential_v_path));
  if (!cfg_.potential_w_path.empty())
    w = load_potential(cfg_.resolve_path(cfg_.potential_w_path));
  if (v.freq_dim() != kc.d || w.freq_dim() != kc.d)
    fail(ErrorKind::Config, "potential frequency dimension does not match d");

  sys.v_op = assemble_multiplication(v, sphere, kc.l_max);
  sys.w_op = assemble_multiplication(w, sphere, kc.l_max);
  sys.angular = assemble_angular_power(kc.alpha, sphere, kc.d, kc.l_max);
  sys.symmetrized = symmetrized_product(sys.w_op, sys.angular);
  sys.r = Complex(0.0, kc.epsilon) * sys.symmetrized;
  sys.r_prime = Complex(0.0, kc.epsilon) * sys.v_op;
  sys.hermitian_perturbation =
      Complex(kc.epsilon, 0.0) * (sys.symmetrized + sys.v_op);

  NormParams p_r{kc.s + kc.effective_nu(), kc.sigma, kc.alpha, kc.gamma};
  NormParams p_rp{kc.s, kc.sigma, -kc.beta(), kc.gamma};

  std::vector<CheckResult> checks;
  double herm_v = structure_defect(sys.v_op, Structure::Hermitian);
  double herm_w = structure_defect(sys.w_op, Structure::Hermitian);
  checks.push_back({"multiplication-hermitian", std::max(herm_v, herm_w) <= 1e-12,
                    std::max(herm_v, herm_w), 1e-12});
  double par_v = v.odd() ? even_parity_mass(sys.v_op) : 0.0;
  double par_w = w.odd() ? even_parity_mass(sys.w_op) : 0.0;
  checks.push_back({"parity-vanishing", std::max(par_v, par_w) <= 1e-10,
                    std::max(par_v, par_w), 1e-10});
  double ham_r = structure_defect(sys.r, Structure::Hamiltonian);
  double ham_rp = structure_defect(sys.r_prime, Structure::Hamiltonian);
  checks.push_back({"generator-form-hamiltonian", std::max(ham_r, ham_rp) <= 1e-12,
                    std::max(ham_r, ham_rp), 1e-12});
  double diag_free = diag_part(sys.r).max_block_frobenius();
  checks.push_back({"unbounded-part-diagonal-free", diag_free <= 1e-12, diag_free,
                    1e-12});

  json j;
  j["stage"] = "assemble";
  j["meta"]["generated_at"] = timestamp_utc();
  j["potentials"] = {{"v", cfg_.potential_v_path},
                     {"w", cfg_.potential_w_path},
                     {"v_odd", v.odd()},
                     {"w_odd", w.odd()}};
  j["norms"] = {{"r_weighted", beta_norm(sys.r, p_r)},
                {"r_prime_weighted", beta_norm(sys.r_prime, p_rp)},
                {"v_decay", decay_norm(sys.v_op, NormParams{kc.s, kc.sigma})},
                {"w_decay", decay_norm(sys.w_op, NormParams{kc.s, kc.sigma})}};
  j["truncation_loss"] = sys.symmetrized.truncation_loss();
  j["checks"] = json::array();
  for (const auto& c : checks) j["checks"].push_back(check_json(c));

  dump_operator_file(out_dir_ + "/v_op.txt", sys.v_op);
  dump_operator_file(out_dir_ + "/w_op.txt", sys.w_op);
  dump_operator_file(out_dir_ + "/angular.txt", sys.angular);
  dump_operator_file(out_dir_ + "/r.txt", sys.r);
  dump_operator_file(out_dir_ + "/r_prime.txt", sys.r_prime);
  write_json_file(out_dir_ + "/assemble.json", j);

  assembled_ = std::move(sys);
}

void Pipeline::stage_regularize() {
  const AssembledSystem& sys = assembled();
  const KamConfig& kc = cfg_.kam;
  NormParams p{kc.s, kc.sigma, kc.beta(), kc.gamma};
  RegularizeOptions opt;
  opt.tol = kc.lie_tol;
  opt.max_terms = kc.lie_max_terms;

  json j;
  j["stage"] = "regularize";
  j["meta"]["generated_at"] = timestamp_utc();
  j["per_omega"] = json::array();

  bool first = true;
  for (const auto& omega : cfg_.omegas) {
    RegularizedSystem reg = regularize(omega, sys.r, sys.r_prime, p, opt);
    json jo;
    jo["omega"] = omega_json(omega);
    jo["norms"] = {{"r", reg.diag.r_norm},
                   {"r_prime", reg.diag.r_prime_norm},
                   {"generator", reg.diag.generator_norm},
                   {"z", reg.diag.z_norm},
                   {"m", reg.diag.m_norm}};
    jo["generator_residual"] = reg.diag.generator_residual;
    jo["conjugacy_defect"] = reg.diag.conjugacy_defect;
    jo["truncation_loss"] = reg.diag.truncation_loss;
    jo["lie_terms"] = reg.diag.lie_terms;
    json checks = json::array();
    checks.push_back(check_json({"generator-identity",
                                 reg.diag.generator_residual <= 1e-12 *
                                     (1.0 + sys.r.max_block_frobenius()),
                                 reg.diag.generator_residual, 1e-12}));
    checks.push_back(check_json({"regularized-conjugacy-interior",
                                 reg.diag.conjugacy_defect <= 10.0 * opt.tol,
                                 reg.diag.conjugacy_defect, 10.0 * opt.tol}));
    double mham = structure_defect(reg.m, Structure::Hamiltonian);
    checks.push_back(check_json({"remainder-hamiltonian", mham <= 1e-10, mham, 1e-10}));
    double mdiag = diag_part(reg.m).max_block_frobenius();
    checks.push_back(
        check_json({"remainder-diagonal-zero", mdiag <= 1e-12, mdiag, 1e-12}));
    jo["checks"] = checks;
    j["per_omega"].push_back(jo);

    if (first) {
      dump_operator_file(out_dir_ + "/reg_z.txt",
                         reg.z.to_operator(kc.d, kc.l_max));
      dump_operator_file(out_dir_ + "/reg_m.txt", reg.m);
      dump_operator_file(out_dir_ + "/reg_transform.txt", reg.transform);
      regularized_ = std::move(reg);
      first = false;
    }
  }
  write_json_file(out_dir_ + "/regularize.json", j);
}

void Pipeline::load_reductions_if_needed() {
  if (!reductions_.empty()) return;
  const AssembledSystem& sys = assembled();
  const KamConfig& kc = cfg_.kam;
  NormParams p{kc.s, kc.sigma, kc.beta(), kc.gamma};
  RegularizeOptions opt;
  opt.tol = kc.lie_tol;
  opt.max_terms = kc.lie_max_terms;
  for (const auto& omega : cfg_.omegas) {
    RegularizedSystem reg = regularize(omega, sys.r, sys.r_prime, p, opt);
    KamResult res = kam_iterate(omega, reg.z, reg.m, kc, -1.0,
                                std::max(1.0, constants().neumann));
    if (!regularized_) regularized_ = reg;
    reductions_.push_back({omega, std::move(res)});
  }
}

void Pipeline::stage_reduce() {
  reductions_.clear();
  load_reductions_if_needed();
  const KamConfig& kc = cfg_.kam;
  const FittedConstants& fc = constants();

  json j;
  j["stage"] = "reduce";
  j["meta"]["generated_at"] = timestamp_utc();
  j["fitted_constants"] = {{"action", fc.action},
                           {"algebra", fc.algebra},
                           {"tail", fc.tail},
                           {"d_conjugation", fc.d_conjugation},
                           {"smoothing_algebra", fc.smoothing_algebra},
                           {"action_gain", fc.action_gain},
                           {"neumann", fc.neumann},
                           {"generator", fc.generator},
                           {"homological_growth", fc.homological_growth},
                           {"seed", fc.seed},
                           {"instances", fc.instances}};
  j["per_omega"] = json::array();

  BasisLayout layout(kc.sphere());
  for (size_t i = 0; i < reductions_.size(); ++i) {
    const auto& red = reductions_[i];
    const KamResult& res = red.result;
    json jo;
    jo["omega"] = omega_json(red.omega);
    jo["outcome"] = res.history.outcome;
    if (res.history.outcome == "excised")
      jo["excision"] = res.history.excision.describe();
    jo["final_eps"] = res.history.final_eps;
    jo["sigma_final"] = res.history.sigma_final;
    jo["eigenvalue_sup_weighted"] = res.history.final_eigenvalue_sup;

    json steps = json::array();
    for (const auto& st : res.history.steps) {
      steps.push_back({{"index", st.index},
                       {"cutoff", st.cutoff},
                       {"sigma", st.sigma},
                       {"sigma_next", st.sigma_next},
                       {"eps_before", st.eps_before},
                       {"eps_after", st.eps_after},
                       {"z_size", st.z_size},
                       {"generator_size", st.generator_size},
                       {"min_divisor", st.min_divisor},
                       {"growth", st.growth},
                       {"residual", st.residual},
                       {"tail_size", st.tail_size},
                       {"series_gate", st.series_gate},
                       {"envelope_gate", st.envelope_gate},
                       {"lie_terms", st.lie_terms},
                       {"truncation_loss", st.truncation_loss},
                       {"hamiltonian_defect", st.hamiltonian_defect},
                       {"melnikov_margin", st.melnikov_margin}});
    }
    jo["steps"] = steps;

    // Final eigenvalues per eigenspace.
    json mus = json::array();
    for (int k = 0; k <= kc.k_max; ++k) {
      json row = json::array();
      const auto& mu = res.z_final.eigenvalues(k);
      for (int q = 0; q < mu.size(); ++q) row.push_back(mu(q));
      mus.push_back(row);
    }
    jo["final_eigenvalues"] = mus;

    json checks = json::array();
    if (res.history.outcome != "excised") {
      // Unitarity of the composed transformation at sampled phases.
      Rng rng(cfg_.seed ^ (0xabcdu + i));
      double worst = 0.0;
      for (int trial = 0; trial < 4; ++trial) {
        std::vector<double> phi(kc.d);
        for (auto& x : phi) x = trial == 0 ? 0.0 : rng.uniform(0.0, 2.0 * M_PI);
        Matrix u = res.phi_total.evaluate_at(phi, layout);
        worst = std::max(worst,
                         operator_norm(Matrix(u.adjoint() * u -
                                              Matrix::Identity(u.rows(), u.cols()))));
      }
      checks.push_back(check_json({"transformation-unitarity", worst <= 1e-8,
                                   worst, 1e-8}));
      double mu_c = res.history.final_eigenvalue_sup /
                    std::max(1e-300, kc.epsilon * kc.gamma);
      checks.push_back(check_json(
          {"eigenvalue-decay-constant", mu_c <= 100.0, mu_c, 100.0}));
      NormParams p_quarter{kc.s, kc.sigma / 4.0, -kc.beta(), kc.gamma};
      BlockOperator dev = res.phi_total - BlockOperator::identity(res.phi_total.sphere(),
                                                                  kc.d, kc.l_max);
      jo["transform_deviation"] = beta_norm(dev, p_quarter);
    }
    jo["checks"] = checks;
    j["per_omega"].push_back(jo);

    // Per-step CSV.
    std::ostringstream name;
    name << out_dir_ << "/steps_" << i << ".csv";
    std::ofstream cs(name.str());
    cs.precision(17);
    cs << "step,cutoff,sigma,eps_before,eps_after,generator_size,min_divisor,"
          "residual,tail_size,truncation_loss\n";
    for (const auto& st : res.history.steps)
      cs << st.index << ',' << st.cutoff << ',' << st.sigma << ',' << st.eps_before
         << ',' << st.eps_after << ',' << st.generator_size << ',' << st.min_divisor
         << ',' << st.residual << ',' << st.tail_size << ',' << st.truncation_loss
         << '\n';
  }
  if (!reductions_.empty())
    dump_operator_file(out_dir_ + "/phi_total_0.txt", reductions_[0].result.phi_total);
  write_json_file(out_dir_ + "/reduce.json", j);
}

void Pipeline::stage_measure() {
  const KamConfig& kc = cfg_.kam;
  NormalForm zero(SphereSpec{kc.n, kc.k_max});

  json j;
  j["stage"] = "measure";
  j["meta"]["generated_at"] = timestamp_utc();
  j["per_cutoff"] = json::array();

  std::vector<MeasureReport> reports;
  for (double cutoff : cfg_.measure_cutoffs) {
    MeasureParams mp;
    mp.gamma = kc.gamma;
    mp.tau = cfg_.measure_tau;
    mp.cutoff = cutoff;
    mp.beta = cfg_.measure_beta;
    mp.tau0 = kc.tau0();
    mp.n = kc.n;
    mp.freq_dim = kc.d;
    mp.samples = cfg_.measure_samples;
    mp.seed = cfg_.seed;
    MeasureReport rep = estimate_excised_measure(zero, mp, true);

    json jc;
    jc["cutoff"] = cutoff;
    jc["sampled"] = rep.sampled;
    jc["excised"] = rep.excised;
    jc["fraction"] = rep.fraction.fraction;
    jc["ci_low"] = rep.fraction.low;
    jc["ci_high"] = rep.fraction.high;
    jc["threshold"] = rep.threshold;
    jc["bound_exponent"] = rep.bound_exponent;
    jc["bound_value"] = rep.bound_value;
    jc["fitted_constant"] = rep.fitted_constant;
    jc["histogram"] = json(rep.histogram);
    j["per_cutoff"].push_back(jc);

    std::ostringstream name;
    name << out_dir_ << "/measure_samples_K" << cutoff << ".csv";
    std::ofstream cs(name.str());
    cs.precision(17);
    cs << "omega,excised,margin,blame\n";
    for (const auto& s : rep.samples) {
      for (size_t c = 0; c < s.omega.size(); ++c)
        cs << (c ? " " : "") << s.omega[c];
      cs << ',' << (s.excised ? 1 : 0) << ',' << s.margin << ','
         << (s.excised ? s.blame.describe() : "") << '\n';
    }
    reports.push_back(std::move(rep));
  }

  json checks = json::array();
  if (reports.size() >= 2) {
    const MeasureReport& a = reports[0];
    const MeasureReport& b = reports[1];
    double k_ratio = cfg_.measure_cutoffs[1] / cfg_.measure_cutoffs[0];
    double exponent = -a.bound_exponent; // decay rate in K
    double predicted_drop = std::pow(k_ratio, exponent) / 4.0; // slack factor 4
    double allowed = a.fraction.fraction / std::max(predicted_drop, 1e-12) +
                     (a.fraction.high - a.fraction.low) +
                     (b.fraction.high - b.fraction.low);
    bool pass = b.fraction.fraction <= allowed;
    checks.push_back(check_json({"excision-scaling-in-cutoff", pass,
                                 b.fraction.fraction, allowed}));
  }
  j["checks"] = checks;
  write_json_file(out_dir_ + "/measure.json", j);
}

void Pipeline::stage_evolve() {
  const KamConfig& kc = cfg_.kam;
  const AssembledSystem& sys = assembled();
  load_reductions_if_needed();
  const RegularizedSystem& reg = regularized();
  const Reduction& red = reductions_.front();

  BasisLayout layout(kc.sphere());
  CVector u0 = seeded_initial_state(layout, cfg_.evolve_u0_kmax, cfg_.seed);

  EvolutionOptions opt;
  opt.dt = cfg_.evolve_dt;
  opt.sobolev_orders = cfg_.evolve_orders;
  opt.save_count = cfg_.evolve_save_count;

  json j;
  j["stage"] = "evolve";
  j["meta"]["generated_at"] = timestamp_utc();
  j["omega"] = omega_json(red.omega);
  j["outcome"] = red.result.history.outcome;

  // Norm band at two horizons.
  opt.t_end = cfg_.evolve_t / 2.0;
  EvolutionRun half = evolve_original(u0, red.omega, sys.hermitian_perturbation,
                                      layout, opt);
  opt.t_end = cfg_.evolve_t;
  EvolutionRun full = evolve_original(u0, red.omega, sys.hermitian_perturbation,
                                      layout, opt);
  CorollaryCheck band_half = corollary_check(half, kc.epsilon);
  CorollaryCheck band_full = corollary_check(full, kc.epsilon);

  double l2_drift = 0.0;
  for (double v : full.l2) l2_drift = std::max(l2_drift, std::abs(v - full.l2.front()));

  json checks = json::array();
  checks.push_back(check_json({"l2-conservation", l2_drift <= 1e-8, l2_drift, 1e-8}));
  checks.push_back(check_json({"norm-band-nondegenerate", band_full.pass,
                               band_full.deviation, 1.0}));
  double stability = band_half.c_fit > 0.0 ? band_full.c_fit / band_half.c_fit
                                           : (band_full.c_fit > 0.0 ? 1e9 : 1.0);
  bool stable = stability <= 2.0 && stability >= 0.5;
  checks.push_back(check_json({"norm-band-horizon-stability", stable, stability, 2.0}));
  j["band"] = {{"horizon_half", cfg_.evolve_t / 2.0},
               {"horizon_full", cfg_.evolve_t},
               {"c_fit_half", band_half.c_fit},
               {"c_fit_full", band_full.c_fit},
               {"deviation_half", band_half.deviation},
               {"deviation_full", band_full.deviation}};

  // Conjugacy against the reduced flow over [0, 10] when the reduction
  // converged.
  if (red.result.history.outcome != "excised") {
    BlockOperator phi_full_op = compose(red.result.phi_total, reg.transform);
    EvolutionOptions copt = opt;
    copt.t_end = std::min(10.0, cfg_.evolve_t);
    copt.save_count = 51;
    EvolutionRun orig = evolve_original(u0, red.omega, sys.hermitian_perturbation,
                                        layout, copt);
    std::vector<double> phi0(kc.d, 0.0);
    CVector v0 = phi_full_op.evaluate_at(phi0, layout) * u0;
    EvolutionRun reduced = evolve_reduced(v0, red.result.z_final, layout, copt);
    double worst = 0.0;
    for (size_t i = 0; i < orig.times.size(); ++i) {
      std::vector<double> phi(kc.d);
      for (int c = 0; c < kc.d; ++c) phi[c] = red.omega[c] * orig.times[i];
      CVector mapped = phi_full_op.evaluate_at(phi, layout) * orig.states[i];
      worst = std::max(worst, (mapped - reduced.states[i]).norm());
    }
    checks.push_back(check_json({"dynamics-conjugacy", worst <= 1e-6, worst, 1e-6}));
    j["conjugacy"] = {{"horizon", copt.t_end}, {"max_l2_difference", worst}};

    std::ofstream cs(out_dir_ + "/conjugacy.csv");
    cs.precision(17);
    cs << "t,l2_difference\n";
    for (size_t i = 0; i < orig.times.size(); ++i) {
      std::vector<double> phi(kc.d);
      for (int c = 0; c < kc.d; ++c) phi[c] = red.omega[c] * orig.times[i];
      CVector mapped = phi_full_op.evaluate_at(phi, layout) * orig.states[i];
      cs << orig.times[i] << ',' << (mapped - reduced.states[i]).norm() << '\n';
    }
  }

  auto write_series = [&](const std::string& path, const EvolutionRun& run) {
    std::ofstream cs(path);
    cs.precision(17);
    cs << "t,l2";
    for (double s : run.orders) cs << ",h" << s;
    cs << '\n';
    for (size_t i = 0; i < run.times.size(); ++i) {
      cs << run.times[i] << ',' << run.l2[i];
      for (size_t q = 0; q < run.orders.size(); ++q) cs << ',' << run.hs[q][i];
      cs << '\n';
    }
  };
  write_series(out_dir_ + "/evolve_original.csv", full);
  {
    EvolutionOptions ropt = opt;
    CVector v0r = u0;
    EvolutionRun reduced_long = evolve_reduced(v0r, red.result.z_final, layout, ropt);
    write_series(out_dir_ + "/evolve_reduced.csv", reduced_long);
    double drift = 0.0;
    for (size_t q = 0; q < reduced_long.orders.size(); ++q)
      for (double v : reduced_long.hs[q])
        drift = std::max(drift, std::abs(v - reduced_long.hs[q].front()));
    checks.push_back(
        check_json({"reduced-flow-conservation", drift <= 1e-10, drift, 1e-10}));
  }

  j["dt_used"] = full.dt_used;
  j["checks"] = checks;
  write_json_file(out_dir_ + "/evolve.json", j);
}

void Pipeline::stage_report() {
  json j;
  j["schema_version"] = 1;
  j["meta"]["generated_at"] = timestamp_utc();
  j["config"] = {{"n", cfg_.kam.n},
                 {"d", cfg_.kam.d},
                 {"alpha", cfg_.kam.alpha},
                 {"beta", cfg_.kam.beta()},
                 {"s", cfg_.kam.s},
                 {"sigma", cfg_.kam.sigma},
                 {"gamma", cfg_.kam.gamma},
                 {"tau", cfg_.kam.effective_tau()},
                 {"chi", cfg_.kam.chi},
                 {"k0", cfg_.kam.k0},
                 {"k_max", cfg_.kam.k_max},
                 {"l_max", cfg_.kam.l_max},
                 {"epsilon", cfg_.kam.epsilon},
                 {"seed", cfg_.seed}};
  const char* stages[] = {"assemble", "regularize", "reduce", "measure", "evolve"};
  json all_checks = json::array();
  for (const char* st : stages) {
    std::string path = out_dir_ + "/" + st + ".json";
    if (!fs::exists(path)) continue;
    json stage = read_json_file(path);
    json meta = stage.contains("meta") ? stage["meta"] : json::object();
    stage.erase("meta");
    j["stages"][st] = stage;
    auto collect = [&](const json& holder) {
      if (!holder.contains("checks")) return;
      for (const auto& c : holder["checks"]) {
        json cc = c;
        cc["stage"] = st;
        all_checks.push_back(cc);
      }
    };
    collect(stage);
    for (const char* arr : {"per_omega", "per_cutoff"})
      if (stage.contains(arr))
        for (const auto& item : stage[arr]) collect(item);
  }
  j["checks"] = all_checks;
  bool ok = true;
  for (const auto& c : all_checks) ok = ok && c["pass"].get<bool>();
  j["all_checks_pass"] = ok;
  write_json_file(out_dir_ + "/report.json", j);
}

} // namespace kamred
