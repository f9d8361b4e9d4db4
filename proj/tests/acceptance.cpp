// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance gate for the engine: every criterion below runs at its stated
// tolerance and prints one pass/fail line.  The binary exits with the number
// of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "assemble.hpp"
#include "calibration.hpp"
#include "config.hpp"
#include "evolution.hpp"
#include "measure.hpp"
#include "oracle.hpp"
#include "oracles.hpp"
#include "regularization.hpp"

using namespace kamred;

namespace {

int g_failures = 0;

double now_seconds() {
  static auto start = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

void report(int index, const std::string& name, bool pass,
            const std::string& detail, double seconds) {
  std::printf("[%2d] %s  %-28s %s  (%.1f s)\n", index, pass ? "PASS" : "FAIL",
              name.c_str(), detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof(buf), f, args);
  va_end(args);
  return buf;
}

// ---------------------------------------------------------------------------
// Golden run machinery (shared by several criteria).

struct GoldenRun {
  RunConfig cfg;
  BlockOperator v_op, w_op, angular, symmetrized;
  BlockOperator r, r_prime, hermitian;
  RegularizedSystem reg;
  KamResult kam;
};

GoldenRun build_golden(double epsilon_scale) {
  GoldenRun g;
  g.cfg = load_run_config(std::string(KAMRED_SOURCE_ROOT) + "/configs/golden.cfg");
  KamConfig kc = g.cfg.kam;
  kc.epsilon *= epsilon_scale;
  SphereSpec sphere = kc.sphere();

  PotentialSpec v = load_potential(g.cfg.resolve_path(g.cfg.potential_v_path));
  PotentialSpec w = load_potential(g.cfg.resolve_path(g.cfg.potential_w_path));
  g.v_op = assemble_multiplication(v, sphere, kc.l_max);
  g.w_op = assemble_multiplication(w, sphere, kc.l_max);
  g.angular = assemble_angular_power(kc.alpha, sphere, kc.d, kc.l_max);
  g.symmetrized = symmetrized_product(g.w_op, g.angular);
  g.r = Complex(0.0, kc.epsilon) * g.symmetrized;
  g.r_prime = Complex(0.0, kc.epsilon) * g.v_op;
  g.hermitian = Complex(kc.epsilon, 0.0) * (g.symmetrized + g.v_op);

  NormParams p{kc.s, kc.sigma, kc.beta(), kc.gamma};
  RegularizeOptions opt;
  opt.tol = kc.lie_tol;
  opt.max_terms = kc.lie_max_terms;
  g.reg = regularize(g.cfg.omegas[0], g.r, g.r_prime, p, opt);
  g.kam = kam_iterate(g.cfg.omegas[0], g.reg.z, g.reg.m, kc);
  g.cfg.kam = kc;
  return g;
}

std::vector<double> kept_frequency(Rng& rng, const NormalForm& z, double gamma,
                                   double tau, double cutoff, double beta, int d) {
  for (int tries = 0; tries < 500; ++tries) {
    std::vector<double> omega;
    for (int c = 0; c < d; ++c) omega.push_back(rng.uniform(0.5, 1.5));
    if (melnikov_membership(omega, z, gamma, tau, cutoff, beta).member)
      return omega;
  }
  std::fprintf(stderr, "no admissible frequency found\n");
  std::exit(2);
}

// ---------------------------------------------------------------------------

void criterion_homological_residual() {
  double t0 = now_seconds();
  SphereSpec sphere{2, 6};
  int d = 2, l_max = 3;
  double gamma = 0.05, tau = 19.5, beta = 0.4, cutoff = 3.0;
  NormParams p{2.5, 0.4, beta, 0.0};
  RandomProfile prof{0.5, 0.8, 2.0, 0.4};
  Rng rng(1001);
  double worst_rel = 0.0;
  for (int i = 0; i < 50; ++i) {
    Rng sub = rng.split();
    NormalForm z = random_normal_form(sub, sphere, beta, gamma / 4.0);
    BlockOperator m = random_operator(sub, sphere, d, l_max, prof,
                                      RandomStructure::Hamiltonian);
    std::vector<double> omega = kept_frequency(sub, z, gamma, tau, cutoff, beta, d);
    HomologicalSolution sol = solve_homological(omega, z, m, gamma, tau, cutoff);
    double res = decay_norm(homological_residual(omega, z, m, sol), p);
    worst_rel = std::max(worst_rel, res / (1.0 + decay_norm(m, p)));
  }
  double el = now_seconds() - t0;
  bool pass = worst_rel <= 1e-10 && el < 30.0;
  report(1, "homological-residual",
         pass, fmt("worst=%.2e cap=1e-10 runtime=%.1fs<30s", worst_rel, el), el);
}

void criterion_generator_identity() {
  double t0 = now_seconds();
  SphereSpec sphere{2, 6};
  RandomProfile prof{1.0, 0.8, 2.0, 0.4};
  Rng rng(1002);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    Rng sub = rng.split();
    BlockOperator r = random_operator(sub, sphere, 2, 3, prof,
                                      RandomStructure::HamiltonianDiagonalFree);
    BlockOperator gen = build_regularizer(r);
    double res = (r + laplacian_bracket(gen)).max_block_frobenius();
    worst = std::max(worst, res / (1.0 + r.max_block_frobenius()));
  }
  report(2, "generator-identity", worst <= 1e-12,
         fmt("worst_rel=%.2e cap=1e-12", worst), now_seconds() - t0);
}

void criterion_convergence(const GoldenRun& golden) {
  double t0 = now_seconds();
  const auto& steps = golden.kam.history.steps;
  bool enough_steps = steps.size() >= 4;

  // Regression of log(-log(eps_k / eps_0)) against k over completed steps.
  double slope = 0.0;
  int points = 0;
  if (!steps.empty()) {
    double eps0 = steps.front().eps_before;
    std::vector<double> xs, ys;
    for (size_t k = 0; k < steps.size(); ++k) {
      double ratio = steps[k].eps_after / eps0;
      if (ratio <= 0.0 || ratio >= 1.0) continue;
      xs.push_back(static_cast<double>(k + 1));
      ys.push_back(std::log(-std::log(ratio)));
    }
    points = static_cast<int>(xs.size());
    if (points >= 2) {
      double mx = 0, my = 0;
      for (int i = 0; i < points; ++i) {
        mx += xs[i];
        my += ys[i];
      }
      mx /= points;
      my /= points;
      double num = 0, den = 0;
      for (int i = 0; i < points; ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
      }
      slope = num / den;
    }
  }
  double target = std::log(golden.cfg.kam.chi);
  bool slope_ok = points >= 2 && std::abs(slope - target) <= 0.2 * target;

  // Halving the starting size: ratio of the step-2 relative remainders.
  GoldenRun halved = build_golden(0.5);
  double factor = 0.0;
  bool halving_ok = false;
  if (steps.size() >= 2 && halved.kam.history.steps.size() >= 2) {
    double rho_full = steps[1].eps_after / steps[0].eps_before;
    double rho_half = halved.kam.history.steps[1].eps_after /
                      halved.kam.history.steps[0].eps_before;
    factor = rho_full / rho_half;
    halving_ok = factor >= 2.0 * (1.0 - 1e-3) && factor <= 8.0 * (1.0 + 1e-3);
  }

  bool pass = enough_steps && slope_ok && halving_ok;
  report(3, "golden-convergence", pass,
         fmt("steps=%zu(>=4:%s) slope=%.3f target=%.3f+-20%%(%s) halving=%.2f([2,8]:%s)",
             steps.size(), enough_steps ? "ok" : "FAIL", slope, target,
             slope_ok ? "ok" : "FAIL", factor, halving_ok ? "ok" : "FAIL"),
         now_seconds() - t0);
}

void criterion_unitarity(const GoldenRun& golden) {
  double t0 = now_seconds();
  const KamConfig& kc = golden.cfg.kam;
  BasisLayout layout(kc.sphere());
  BlockOperator phi_full = compose(golden.kam.phi_total, golden.reg.transform);
  Rng rng(1004);
  double worst = 0.0;
  for (int t = 0; t < 6; ++t) {
    std::vector<double> phi(kc.d);
    for (auto& x : phi) x = (t == 0) ? 0.0 : rng.uniform(0.0, 2.0 * M_PI);
    Matrix u = phi_full.evaluate_at(phi, layout);
    worst = std::max(worst, operator_norm(Matrix(u.adjoint() * u -
                                                 Matrix::Identity(u.rows(),
                                                                  u.cols()))));
  }
  report(4, "transformation-unitarity", worst <= 1e-8,
         fmt("defect=%.2e cap=1e-8", worst), now_seconds() - t0);
}

void criterion_conjugacy(const GoldenRun& golden) {
  double t0 = now_seconds();
  const KamConfig& kc = golden.cfg.kam;
  BasisLayout layout(kc.sphere());
  Rng rng(golden.cfg.seed ^ 0x5eedu);
  CVector u0 = CVector::Zero(layout.dim());
  for (int k = 0; k <= golden.cfg.evolve_u0_kmax; ++k)
    for (int i = 0; i < layout.block_dim(k); ++i)
      u0(layout.offset(k) + i) = rng.complex_normal();
  u0 /= u0.norm();

  EvolutionOptions opt;
  opt.t_end = 10.0;
  opt.save_count = 51;
  opt.dt = 0.005;
  EvolutionRun orig = evolve_original(u0, golden.cfg.omegas[0], golden.hermitian,
                                      layout, opt);
  // Integrator tolerance 1e-9, certified by step halving.
  EvolutionOptions half = opt;
  half.dt = opt.dt / 2.0;
  EvolutionRun orig2 = evolve_original(u0, golden.cfg.omegas[0], golden.hermitian,
                                       layout, half);
  double integ_err = 0.0;
  for (size_t i = 0; i < orig.states.size(); ++i)
    integ_err = std::max(integ_err, (orig.states[i] - orig2.states[i]).norm());

  BlockOperator phi_full = compose(golden.kam.phi_total, golden.reg.transform);
  std::vector<double> phi0(kc.d, 0.0);
  CVector v0 = phi_full.evaluate_at(phi0, layout) * u0;
  EvolutionRun reduced = evolve_reduced(v0, golden.kam.z_final, layout, opt);
  double worst = 0.0;
  for (size_t i = 0; i < orig.times.size(); ++i) {
    std::vector<double> phi(kc.d);
    for (int c = 0; c < kc.d; ++c) phi[c] = golden.cfg.omegas[0][c] * orig.times[i];
    CVector mapped = phi_full.evaluate_at(phi, layout) * orig2.states[i];
    worst = std::max(worst, (mapped - reduced.states[i]).norm());
  }
  bool pass = worst <= 1e-6 && integ_err <= 1e-9;
  report(5, "dynamics-conjugacy", pass,
         fmt("max_diff=%.2e cap=1e-6 integrator_err=%.1e<=1e-9", worst, integ_err),
         now_seconds() - t0);
}

void criterion_norm_band(const GoldenRun& golden) {
  double t0 = now_seconds();
  const KamConfig& kc = golden.cfg.kam;
  BasisLayout layout(kc.sphere());
  Rng rng(golden.cfg.seed ^ 0x5eedu);
  CVector u0 = CVector::Zero(layout.dim());
  for (int k = 0; k <= golden.cfg.evolve_u0_kmax; ++k)
    for (int i = 0; i < layout.block_dim(k); ++i)
      u0(layout.offset(k) + i) = rng.complex_normal();
  u0 /= u0.norm();

  EvolutionOptions opt;
  opt.dt = golden.cfg.evolve_dt;
  opt.sobolev_orders = {1.0};
  opt.save_count = 201;
  opt.t_end = 50.0;
  EvolutionRun run50 = evolve_original(u0, golden.cfg.omegas[0], golden.hermitian,
                                       layout, opt);
  opt.t_end = 100.0;
  EvolutionRun run100 = evolve_original(u0, golden.cfg.omegas[0], golden.hermitian,
                                        layout, opt);
  CorollaryCheck c50 = corollary_check(run50, kc.epsilon);
  CorollaryCheck c100 = corollary_check(run100, kc.epsilon);
  double stability = c50.c_fit > 0.0 ? c100.c_fit / c50.c_fit : 1.0;
  bool pass = c100.pass && stability <= 2.0 && stability >= 0.5;
  report(6, "sobolev-norm-band", pass,
         fmt("C50=%.3f C100=%.3f stability=%.2f (within 2x)", c50.c_fit,
             c100.c_fit, stability),
         now_seconds() - t0);
}

void criterion_parity(const GoldenRun& golden) {
  double t0 = now_seconds();
  double worst = 0.0;
  for (const BlockOperator* op : {&golden.v_op, &golden.w_op, &golden.symmetrized}) {
    for (const auto& [key, m] : op->blocks())
      if ((key.k + key.kp) % 2 == 0) worst = std::max(worst, operator_norm(m));
  }
  report(7, "odd-parity-vanishing", worst <= 1e-10,
         fmt("even-coupling mass=%.2e cap=1e-10", worst), now_seconds() - t0);
}

void criterion_separation() {
  double t0 = now_seconds();
  long long worst = 1LL << 60;
  for (int n : {2, 3}) {
    for (int k = 0; k <= 64; ++k)
      for (int kp = 0; kp <= 64; ++kp) {
        if (k == kp) continue;
        long long gap = std::llabs(laplace_eigenvalue_int(k, n) -
                                   laplace_eigenvalue_int(kp, n));
        worst = std::min(worst, gap - (k + kp));
      }
  }
  report(8, "eigenvalue-separation", worst >= 0,
         fmt("min(gap-(k+k'))=%lld (exact integers)", worst), now_seconds() - t0);
}

void criterion_measure_scaling() {
  double t0 = now_seconds();
  SphereSpec sphere{2, 8};
  NormalForm zero(sphere);
  auto run = [&](double cutoff) {
    MeasureParams mp;
    mp.gamma = 0.05;
    mp.tau = 10.5;
    mp.cutoff = cutoff;
    mp.beta = 1.0;
    mp.tau0 = 3.0;
    mp.n = 2;
    mp.freq_dim = 2;
    mp.samples = 20000;
    mp.seed = 4242;
    return estimate_excised_measure(zero, mp, false);
  };
  MeasureReport r4 = run(4.0);
  MeasureReport r8 = run(8.0);
  // Predicted decay exponent of the excised measure in the cutoff.
  double exponent = -r4.bound_exponent; // = tau - d - 2(n-1)tau0/beta - 1 = 1.5
  double required_drop = std::pow(2.0, exponent) / 4.0; // slack factor 4
  double allowed = r4.fraction.fraction / std::max(required_drop, 1e-12) +
                   (r4.fraction.high - r4.fraction.low) +
                   (r8.fraction.high - r8.fraction.low);
  double el = now_seconds() - t0;
  bool pass = r8.fraction.fraction <= allowed && el < 120.0;
  report(9, "excised-measure-scaling", pass,
         fmt("f4=%.2e f8=%.2e allowed=%.2e exp=%.2f runtime=%.1fs<120s",
             r4.fraction.fraction, r8.fraction.fraction, allowed, exponent, el),
         el);
}

void criterion_eigenvalue_decay(const GoldenRun& golden) {
  double t0 = now_seconds();
  const KamConfig& kc = golden.cfg.kam;
  double lhs = golden.kam.z_final.weighted_eigenvalue_sup(kc.beta());
  double cap = 100.0 * kc.epsilon * kc.gamma; // single pinned constant C = 100
  report(10, "eigenvalue-decay", lhs <= cap,
         fmt("sup <k>^b|mu|=%.2e cap=100*eps*gamma=%.2e C_fit=%.3g", lhs, cap,
             lhs / (kc.epsilon * kc.gamma)),
         now_seconds() - t0);
}

void criterion_appendix_suite() {
  double t0 = now_seconds();
  CalibrationOptions co;
  co.instances = 100;
  FittedConstants c1 = calibrate(303, co);
  FittedConstants c2 = calibrate(909, co);

  auto stable = [](double a, double b) {
    if (a <= 0.0 || b <= 0.0 || !std::isfinite(a) || !std::isfinite(b))
      return false;
    double r = a / b;
    return r >= 0.5 && r <= 2.0;
  };
  struct Row {
    const char* name;
    double a, b;
  };
  std::vector<Row> rows = {
      {"action", c1.action, c2.action},
      {"algebra", c1.algebra, c2.algebra},
      {"tail", c1.tail, c2.tail},
      {"d_conjugation", c1.d_conjugation, c2.d_conjugation},
      {"smoothing_algebra", c1.smoothing_algebra, c2.smoothing_algebra},
      {"action_gain", c1.action_gain, c2.action_gain},
      {"neumann", c1.neumann, c2.neumann},
  };
  bool pass = true;
  std::string detail;
  for (const auto& row : rows) {
    bool ok = stable(row.a, row.b);
    pass = pass && ok;
    detail += fmt("%s=%.3g/%.3g ", row.name, row.a, row.b);
  }

  // Block-diagonal eigenvalue bound: exact constant one on random instances.
  {
    Rng rng(404);
    SphereSpec sphere{2, 6};
    double beta = 0.4;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      NormalForm z = random_normal_form(rng, sphere, beta, rng.uniform(0.05, 0.5));
      double lhs = z.weighted_eigenvalue_sup(beta);
      double rhs = normal_form_beta_norm(z, beta);
      if (rhs > 0.0) worst = std::max(worst, lhs / rhs);
    }
    bool ok = worst <= 1.0 + 1e-12;
    pass = pass && ok;
    detail += fmt("eig_bound=%.3f<=1 ", worst);
  }

  // Algebra constant at the larger truncation named by the invariant.
  {
    Rng rng(505);
    SphereSpec sphere{2, 6};
    NormParams p{2.5, 0.4, 0.0, 0.0};
    RandomProfile prof{1.0, 0.8, 2.5, 0.3};
    double fit = 0.0;
    for (int i = 0; i < 100; ++i) {
      BlockOperator a = random_operator(rng, sphere, 2, 3, prof);
      BlockOperator b = random_operator(rng, sphere, 2, 3, prof);
      double denom = decay_norm(a, p) * decay_norm(b, p);
      if (denom > 0.0)
        fit = std::max(fit, decay_norm(compose(a, b), p) / denom);
    }
    bool ok = fit > 0.0 && fit <= 10.0;
    pass = pass && ok;
    detail += fmt("algebra63=%.2f", fit);
  }
  report(11, "norm-inequality-suite", pass, detail, now_seconds() - t0);
}

void criterion_dense_equivalence() {
  double t0 = now_seconds();
  SphereSpec sphere{2, 3};
  int d = 2, l_max = 2;
  Rng rng(1212);
  RandomProfile prof{0.8, 0.7, 2.0, 0.8};
  double worst = 0.0;

  // Products and commutators against the enlarged-ball dense route.
  for (int trial = 0; trial < 5; ++trial) {
    BlockOperator a = random_operator(rng, sphere, d, l_max, prof);
    BlockOperator b = random_operator(rng, sphere, d, l_max, prof);
    BlockOperator prod = compose(a, b);
    BlockOperator oracle = dense_compose_oracle(a, b);
    for (const auto& l : fourier_ball(d, l_max))
      for (int k = 0; k <= sphere.k_max; ++k)
        for (int kp = 0; kp <= sphere.k_max; ++kp)
          worst = std::max(worst,
                           (prod.block(l, k, kp) - oracle.block(l, k, kp)).norm());
    BlockOperator comm = commutator(a, b);
    BlockOperator ba = dense_compose_oracle(b, a);
    for (const auto& l : fourier_ball(d, l_max))
      for (int k = 0; k <= sphere.k_max; ++k)
        for (int kp = 0; kp <= sphere.k_max; ++kp) {
          Matrix expect = oracle.block(l, k, kp) - ba.block(l, k, kp);
          worst = std::max(worst, (comm.block(l, k, kp) - expect).norm());
        }
  }

  // Conjugation, phase-independent generator: dense algebra is exact.
  {
    std::vector<double> omega{0.93, 1.17};
    NormalForm z = random_normal_form(rng, sphere, 0.4, 0.2);
    BlockOperator zop = z.to_operator(d, l_max);
    BlockOperator m = random_operator(rng, sphere, d, l_max, {0.3, 0.8, 2.0, 0.7},
                                      RandomStructure::Hamiltonian);
    BlockOperator s0 = random_operator(rng, sphere, d, 0, {0.1, 0.0, 2.0, 0.9},
                                       RandomStructure::Hamiltonian);
    BlockOperator s(sphere, d, l_max);
    std::vector<int> zero{0, 0};
    for (const auto& [key, blk] : s0.blocks()) s.set_block(zero, key.k, key.kp, blk);
    BlockOperator p = conjugate_operator(omega, zop, m, s, 1e-15, 60);

    SpaceTimeLayout lay(sphere, d, l_max);
    Matrix g = testing::dense_generator(lay, omega, &zop, &m);
    Matrix sd = dense_convolution_matrix(s, lay);
    // exp of the phase-block-diagonal dense matrix through its own series.
    Matrix e = Matrix::Identity(lay.dim(), lay.dim());
    Matrix term = e;
    for (int q = 1; q < 40; ++q) {
      term = Matrix((term * sd) / q);
      e += term;
      if (term.norm() < 1e-16) break;
    }
    Matrix einv = Matrix::Identity(lay.dim(), lay.dim());
    term = einv;
    Matrix msd = -sd;
    for (int q = 1; q < 40; ++q) {
      term = Matrix((term * msd) / q);
      einv += term;
      if (term.norm() < 1e-16) break;
    }
    Matrix expect = e * g * einv - testing::dense_generator(lay, omega, nullptr,
                                                            nullptr);
    Matrix got = dense_convolution_matrix(p, lay);
    int zi = lay.mode_index(zero);
    int sdim = lay.space().dim();
    worst = std::max(worst, (expect - got)
                                .block(0, zi * sdim, lay.dim(), sdim)
                                .cwiseAbs()
                                .maxCoeff());
  }

  // Conjugation, nilpotent single-mode generator: the series terminates and
  // the window below keeps every contribution.
  {
    std::vector<double> omega{0.91, 1.17};
    NormalForm z = random_normal_form(rng, sphere, 0.4, 0.2);
    BlockOperator zop = z.to_operator(d, l_max);
    BlockOperator m_small = random_operator(rng, sphere, d, 1, {0.4, 0.6, 2.0, 0.8},
                                            RandomStructure::Hamiltonian);
    BlockOperator m(sphere, d, l_max);
    for (const auto& [key, blk] : m_small.blocks())
      m.set_block(key.l, key.k, key.kp, blk);
    BlockOperator s(sphere, d, l_max);
    Matrix sb(block_dimension(1, 2), block_dimension(3, 2));
    for (int r = 0; r < sb.rows(); ++r)
      for (int c = 0; c < sb.cols(); ++c) sb(r, c) = 0.25 * rng.complex_normal();
    s.set_block({1, 0}, 1, 3, sb);
    BlockOperator p = conjugate_operator(omega, zop, m, s, 1e-16, 60);

    SpaceTimeLayout lay(sphere, d, 4.0);
    auto embed = [&](const BlockOperator& op) {
      BlockOperator out(sphere, d, 4);
      for (const auto& [key, blk] : op.blocks())
        out.set_block(key.l, key.k, key.kp, blk);
      return out;
    };
    BlockOperator zop4 = embed(zop), m4 = embed(m), s4 = embed(s);
    Matrix g = testing::dense_generator(lay, omega, &zop4, &m4);
    Matrix sd = dense_convolution_matrix(s4, lay);
    Matrix id = Matrix::Identity(lay.dim(), lay.dim());
    Matrix expect = (id + sd) * g * (id - sd) -
                    testing::dense_generator(lay, omega, nullptr, nullptr);
    std::vector<int> zero{0, 0};
    int zi = lay.mode_index(zero);
    int sdim = lay.space().dim();
    BasisLayout space(sphere);
    for (int li = 0; li < lay.mode_count(); ++li) {
      if (mode_norm_sq(lay.mode(li)) > static_cast<long long>(l_max) * l_max)
        continue;
      Matrix window = expect.block(li * sdim, zi * sdim, sdim, sdim);
      Matrix got = Matrix::Zero(sdim, sdim);
      for (int k = 0; k <= sphere.k_max; ++k)
        for (int kp = 0; kp <= sphere.k_max; ++kp) {
          Matrix blk = p.block(lay.mode(li), k, kp);
          got.block(space.offset(k), space.offset(kp), blk.rows(), blk.cols()) =
              blk;
        }
      worst = std::max(worst, (window - got).cwiseAbs().maxCoeff());
    }
  }

  report(12, "dense-oracle-equivalence", worst <= 1e-10,
         fmt("worst=%.2e cap=1e-10 at (k,l)=(3,2)", worst), now_seconds() - t0);
}

} // namespace

int main() {
  std::printf("kamred acceptance suite\n");
  double t0 = now_seconds();

  criterion_homological_residual();
  criterion_generator_identity();

  GoldenRun golden = build_golden(1.0);
  criterion_convergence(golden);
  criterion_unitarity(golden);
  criterion_conjugacy(golden);
  criterion_norm_band(golden);
  criterion_parity(golden);
  criterion_separation();
  criterion_measure_scaling();
  criterion_eigenvalue_decay(golden);
  criterion_appendix_suite();
  criterion_dense_equivalence();

  std::printf("acceptance: %d criteria failed (total %.1f s)\n", g_failures,
              now_seconds() - t0);
  return g_failures;
}
