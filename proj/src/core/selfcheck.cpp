// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

#include "oracle.hpp"
#include "pipeline.hpp"
#include "regularization.hpp"

namespace kamred {

namespace {

// Exhaustive non-resonance verdict without any localization shortcuts.
bool melnikov_exhaustive(const std::vector<double>& omega, const NormalForm& z,
                         double gamma, double tau, double cutoff, int k_box) {
  double threshold = 2.0 * gamma / std::pow(std::max(1.0, cutoff), tau);
  int n = z.sphere().n;
  for (const auto& l : fourier_ball(static_cast<int>(omega.size()), cutoff)) {
    bool zero_mode = mode_norm_sq(l) == 0;
    double x = 0.0;
    for (size_t c = 0; c < omega.size(); ++c) x += omega[c] * l[c];
    for (int k = 0; k <= k_box; ++k) {
      for (int kp = 0; kp <= k_box; ++kp) {
        if (zero_mode && k == kp) continue;
        double base = x + laplace_eigenvalue(k, n) - laplace_eigenvalue(kp, n);
        int dk = k <= z.k_max() ? block_dimension(k, n) : 1;
        int dkp = kp <= z.k_max() ? block_dimension(kp, n) : 1;
        for (int j = 0; j < dk; ++j) {
          double mj = k <= z.k_max() ? z.eigenvalues(k)(j) : 0.0;
          for (int jp = 0; jp < dkp; ++jp) {
            double mjp = kp <= z.k_max() ? z.eigenvalues(kp)(jp) : 0.0;
            if (std::abs(base + mj - mjp) < threshold) return false;
          }
        }
      }
    }
  }
  return true;
}

} // namespace

std::vector<CheckResult> selfcheck_suite(std::uint64_t seed) {
  std::vector<CheckResult> out;
  Rng rng(seed);

  // Eigenvalue separation, exact integers.
  {
    long long worst = 1LL << 60;
    for (int k = 0; k <= 64; ++k)
      for (int kp = 0; kp <= 64; ++kp) {
        if (k == kp) continue;
        long long gap = std::llabs(laplace_eigenvalue_int(k, 2) -
                                   laplace_eigenvalue_int(kp, 2));
        worst = std::min(worst, gap - (k + kp));
      }
    out.push_back({"separation-gap", worst >= 0, static_cast<double>(worst), 0.0});
  }

  // Orthonormality of the quadrature basis.
  {
    int kq = 6;
    SphereQuadrature quad(2 * kq);
    double defect = 0.0;
    for (int k = 0; k <= kq; ++k)
      for (int m = -k; m <= k; ++m)
        for (int k2 = 0; k2 <= kq; ++k2)
          for (int m2 = -k2; m2 <= k2; ++m2) {
            Complex g = quad.integrate([&](double th, double ph) {
              return sphere_harmonic(k, m, th, ph) *
                     std::conj(sphere_harmonic(k2, m2, th, ph));
            });
            double expect = (k == k2 && m == m2) ? 1.0 : 0.0;
            defect = std::max(defect, std::abs(g - expect));
          }
    out.push_back({"orthonormality-gram", defect <= 1e-10, defect, 1e-10});
  }

  // Pointwise parity of the harmonics.
  {
    double defect = 0.0;
    for (int k = 0; k <= 5; ++k)
      for (int m = -k; m <= k; ++m)
        for (int t = 0; t < 6; ++t) {
          double th = rng.uniform(0.05, M_PI - 0.05);
          double ph = rng.uniform(0.0, 2.0 * M_PI);
          Complex a = sphere_harmonic(k, m, M_PI - th, ph + M_PI);
          Complex b = sphere_harmonic(k, m, th, ph);
          if (k % 2 == 1) b = -b;
          defect = std::max(defect, std::abs(a - b));
        }
    out.push_back({"harmonic-parity", defect <= 1e-12, defect, 1e-12});
  }

  SphereSpec sphere{2, 4};
  int freq_dim = 2, l_max = 2;
  RandomProfile prof{0.8, 0.8, 2.0, 0.7};

  // Order-reducing generator identity.
  {
    Rng sub = rng.split();
    BlockOperator r = random_operator(sub, sphere, freq_dim, l_max, prof,
                                      RandomStructure::HamiltonianDiagonalFree);
    BlockOperator gen = build_regularizer(r);
    double res = (r + laplacian_bracket(gen)).max_block_frobenius();
    double rel = res / (1.0 + r.max_block_frobenius());
    out.push_back({"generator-identity", rel <= 1e-12, rel, 1e-12});
  }

  // Homological residual on a random instance.
  {
    Rng sub = rng.split();
    double gamma = 0.05, tau = 3.0, cutoff = 2.0;
    NormalForm z = random_normal_form(sub, sphere, 0.4, gamma / 4.0);
    BlockOperator m = random_operator(sub, sphere, freq_dim, l_max, prof,
                                      RandomStructure::Hamiltonian);
    std::vector<double> omega;
    MelnikovVerdict verdict;
    do {
      omega.clear();
      for (int c = 0; c < freq_dim; ++c) omega.push_back(sub.uniform(0.5, 1.5));
      verdict = melnikov_membership(omega, z, gamma, tau, cutoff, 0.4);
    } while (!verdict.member);
    HomologicalSolution sol = solve_homological(omega, z, m, gamma, tau, cutoff);
    NormParams p{2.5, 0.4, 0.4, 0.0};
    double res = decay_norm(homological_residual(omega, z, m, sol), p);
    double cap = 1e-10 * (1.0 + decay_norm(m, p));
    out.push_back({"homological-residual", res <= cap, res, cap});
  }

  // Hamiltonian closure under commutators and the phase derivative.
  {
    Rng sub = rng.split();
    BlockOperator a = random_operator(sub, sphere, freq_dim, l_max, prof,
                                      RandomStructure::Hamiltonian);
    BlockOperator b = random_operator(sub, sphere, freq_dim, l_max, prof,
                                      RandomStructure::Hamiltonian);
    std::vector<double> omega{0.9, 1.1};
    double defect = structure_defect(commutator(a, b), Structure::Hamiltonian);
    defect = std::max(defect,
                      structure_defect(phi_derivative(a, omega), Structure::Hamiltonian));
    out.push_back({"hamiltonian-closure", defect <= 1e-12, defect, 1e-12});
  }

  // Dense equivalence of the convolution product.
  {
    Rng sub = rng.split();
    SphereSpec sp{2, 3};
    BlockOperator a = random_operator(sub, sp, freq_dim, 2, prof);
    BlockOperator b = random_operator(sub, sp, freq_dim, 2, prof);
    BlockOperator prod = compose(a, b);
    BlockOperator oracle = dense_compose_oracle(a, b);
    double defect = 0.0;
    for (const auto& [key, m] : prod.blocks())
      defect = std::max(defect, (m - oracle.block(key.l, key.k, key.kp)).norm());
    for (const auto& [key, m] : oracle.blocks()) {
      if (mode_norm_sq(key.l) > static_cast<long long>(prod.l_max()) * prod.l_max())
        continue;
      defect = std::max(defect, (m - prod.block(key.l, key.k, key.kp)).norm());
    }
    out.push_back({"dense-product-equivalence", defect <= 1e-10, defect, 1e-10});
  }

  // Pruned non-resonance scan against the exhaustive oracle.
  {
    Rng sub = rng.split();
    double gamma = 0.1, tau = 2.0, cutoff = 3.0;
    NormalForm z = random_normal_form(sub, sphere, 0.4, gamma / 4.0);
    MelnikovScan scan(z, gamma, tau, cutoff, freq_dim, 0.4);
    int k_box = static_cast<int>(std::ceil(1.5 * std::sqrt(2.0) * cutoff + 8.0));
    int mismatches = 0;
    for (int t = 0; t < 40; ++t) {
      std::vector<double> omega;
      for (int c = 0; c < freq_dim; ++c) omega.push_back(sub.uniform(0.5, 1.5));
      bool fast = scan.check(omega).member;
      bool slow = melnikov_exhaustive(omega, z, gamma, tau, cutoff, k_box);
      if (fast != slow) ++mismatches;
    }
    out.push_back({"melnikov-scan-oracle", mismatches == 0,
                   static_cast<double>(mismatches), 0.0});
  }

  // Unitarity of the exponential of a phase-independent Hamiltonian
  // generator (the case with no Fourier-tail loss).
  {
    Rng sub = rng.split();
    BlockOperator s = random_operator(sub, sphere, freq_dim, 0,
                                      {0.4, 0.0, 2.0, 0.9},
                                      RandomStructure::Hamiltonian);
    BlockOperator s_emb(sphere, freq_dim, l_max);
    std::vector<int> zero(freq_dim, 0);
    for (const auto& [key, blk] : s.blocks())
      s_emb.set_block(zero, key.k, key.kp, blk);
    BlockOperator phi = lie_exponential(s_emb, 1e-15, 60);
    BasisLayout layout(sphere);
    double worst = 0.0;
    for (int t = 0; t < 3; ++t) {
      std::vector<double> ph{sub.uniform(0.0, 2 * M_PI), sub.uniform(0.0, 2 * M_PI)};
      Matrix u = phi.evaluate_at(ph, layout);
      worst = std::max(worst, operator_norm(Matrix(
                                  u.adjoint() * u - Matrix::Identity(u.rows(), u.cols()))));
    }
    out.push_back({"exponential-unitarity", worst <= 1e-8, worst, 1e-8});
  }

  // Eigenvalues of a normal form against its weighted size.
  {
    Rng sub = rng.split();
    double beta = 0.4;
    NormalForm z = random_normal_form(sub, sphere, beta, 0.3);
    BlockOperator zop = z.to_operator(freq_dim, l_max);
    double lhs = z.weighted_eigenvalue_sup(beta);
    double rhs = beta_norm(zop, NormParams{2.5, 0.4, -beta, 0.0});
    out.push_back({"normal-form-eigen-bound", lhs <= rhs * (1.0 + 1e-12), lhs, rhs});
  }

  // Reduced flow conserves every block norm.
  {
    Rng sub = rng.split();
    NormalForm z = random_normal_form(sub, sphere, 0.4, 0.3);
    BasisLayout layout(sphere);
    CVector v0(layout.dim());
    for (int i = 0; i < v0.size(); ++i) v0(i) = sub.complex_normal();
    EvolutionOptions opt;
    opt.t_end = 5.0;
    opt.save_count = 11;
    EvolutionRun run = evolve_reduced(v0, z, layout, opt);
    double drift = 0.0;
    for (double v : run.l2) drift = std::max(drift, std::abs(v - run.l2.front()));
    out.push_back({"reduced-flow-conservation", drift <= 1e-12 * v0.norm(), drift,
                   1e-12});
  }

  // Fractional angular momentum spot values.
  {
    SphereSpec sp{2, 3};
    BlockOperator p04 = assemble_angular_power(0.4, sp, freq_dim, 1);
    std::vector<int> zero(freq_dim, 0);
    double v22 = p04.block(zero, 2, 2)(4, 4).real();   // m = 2
    double v3m2 = assemble_angular_power(0.0, sp, freq_dim, 1)
                      .block(zero, 3, 3)(1, 1).real(); // m = -2, alpha = 0
    double d1 = std::abs(v22 - std::pow(2.0, 0.4));
    double d2 = std::abs(v3m2 + 1.0);
    out.push_back({"angular-power-values", std::max(d1, d2) <= 1e-14,
                   std::max(d1, d2), 1e-14});
  }

  return out;
}

bool run_selfcheck(const std::string& json_path_or_empty, std::string* summary) {
  std::vector<CheckResult> checks = selfcheck_suite();
  bool ok = true;
  std::ostringstream os;
  nlohmann::json j;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    ok = ok && c.pass;
    os << (c.pass ? "PASS" : "FAIL") << "  " << c.id << "  value=" << c.value
       << " threshold=" << c.threshold << '\n';
    j["checks"].push_back({{"id", c.id},
                           {"pass", c.pass},
                           {"value", c.value},
                           {"threshold", c.threshold}});
  }
  j["all_pass"] = ok;
  if (!json_path_or_empty.empty()) {
    std::ofstream f(json_path_or_empty);
    if (!f) fail(ErrorKind::Io, "cannot write " + json_path_or_empty);
    f << j.dump(2) << '\n';
  }
  if (summary) *summary = os.str();
  return ok;
}

} // namespace kamred
