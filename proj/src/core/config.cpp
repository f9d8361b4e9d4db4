// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#include "config.hpp"

#include <fstream>
#include <sstream>

namespace kamred {

namespace {

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    size_t used = 0;
    double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    fail(ErrorKind::Config, key + ": expected a number, got '" + v + "'");
  }
}

int to_int(const std::string& key, const std::string& v) {
  double x = to_double(key, v);
  int i = static_cast<int>(x);
  if (static_cast<double>(i) != x)
    fail(ErrorKind::Config, key + ": expected an integer, got '" + v + "'");
  return i;
}

} // namespace

void RunConfig::validate() const {
  kam.validate();
  for (const auto& omega : omegas) {
    if (static_cast<int>(omega.size()) != kam.d)
      fail(ErrorKind::Config, "omega: frequency vector length must equal d");
    for (double w : omega)
      if (w < 0.5 || w > 1.5)
        fail(ErrorKind::Config, "omega: components must lie in [1/2, 3/2]");
  }
  if (evolve_t <= 0.0) fail(ErrorKind::Config, "evolve_t: must be > 0");
  if (evolve_u0_kmax < 0 || evolve_u0_kmax > kam.k_max)
    fail(ErrorKind::Config, "evolve_u0_kmax: must lie in [0, k_max]");
  if (measure_samples < 1) fail(ErrorKind::Config, "measure_samples: must be >= 1");
  if (measure_tau <= 0.0) fail(ErrorKind::Config, "measure_tau: must be > 0");
  for (double c : measure_cutoffs)
    if (c < 1.0) fail(ErrorKind::Config, "measure_k: cutoffs must be >= 1");
  for (const auto& st : stages) {
    if (st != "assemble" && st != "regularize" && st != "reduce" &&
        st != "measure" && st != "evolve" && st != "report")
      fail(ErrorKind::Config, "stages: unknown stage '" + st + "'");
  }
}

std::string RunConfig::resolve_path(const std::string& rel) const {
  if (rel.empty() || rel.front() == '/') return rel;
  if (base_dir.empty()) return rel;
  return base_dir + "/" + rel;
}

RunConfig parse_run_config(const std::string& text, const std::string& base_dir) {
  RunConfig out;
  out.base_dir = base_dir;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (!tokens(line).empty()) {
        std::ostringstream os;
        os << "config line " << lineno << ": expected 'key = value'";
        fail(ErrorKind::Config, os.str());
      }
      continue;
    }
    auto keys = tokens(line.substr(0, eq));
    auto vals = tokens(line.substr(eq + 1));
    if (keys.size() != 1) {
      std::ostringstream os;
      os << "config line " << lineno << ": expected a single key";
      fail(ErrorKind::Config, os.str());
    }
    const std::string& key = keys[0];
    auto one = [&]() -> const std::string& {
      if (vals.size() != 1)
        fail(ErrorKind::Config, key + ": expected a single value");
      return vals[0];
    };

    if (key == "n") out.kam.n = to_int(key, one());
    else if (key == "d") out.kam.d = to_int(key, one());
    else if (key == "s") out.kam.s = to_double(key, one());
    else if (key == "sigma") out.kam.sigma = to_double(key, one());
    else if (key == "alpha") out.kam.alpha = to_double(key, one());
    else if (key == "nu") out.kam.nu = to_double(key, one());
    else if (key == "gamma") out.kam.gamma = to_double(key, one());
    else if (key == "tau") out.kam.tau = to_double(key, one());
    else if (key == "chi") out.kam.chi = to_double(key, one());
    else if (key == "k0") out.kam.k0 = to_int(key, one());
    else if (key == "k_max") out.kam.k_max = to_int(key, one());
    else if (key == "l_max") out.kam.l_max = to_int(key, one());
    else if (key == "epsilon") out.kam.epsilon = to_double(key, one());
    else if (key == "max_steps") out.kam.max_steps = to_int(key, one());
    else if (key == "stop_tol") out.kam.stop_tol = to_double(key, one());
    else if (key == "theta_star") out.kam.theta_star = to_double(key, one());
    else if (key == "seed") out.seed = static_cast<std::uint64_t>(to_double(key, one()));
    else if (key == "potential_v") out.potential_v_path = one();
    else if (key == "potential_w") out.potential_w_path = one();
    else if (key == "omega") {
      std::vector<double> w;
      for (const auto& v : vals) w.push_back(to_double(key, v));
      out.omegas.push_back(std::move(w));
    } else if (key == "evolve_t") out.evolve_t = to_double(key, one());
    else if (key == "evolve_dt") out.evolve_dt = to_double(key, one());
    else if (key == "evolve_orders") {
      out.evolve_orders.clear();
      for (const auto& v : vals) out.evolve_orders.push_back(to_double(key, v));
    } else if (key == "evolve_u0_kmax") out.evolve_u0_kmax = to_int(key, one());
    else if (key == "evolve_save_count") out.evolve_save_count = to_int(key, one());
    else if (key == "measure_samples") out.measure_samples = to_int(key, one());
    else if (key == "measure_tau") out.measure_tau = to_double(key, one());
    else if (key == "measure_beta") out.measure_beta = to_double(key, one());
    else if (key == "measure_k") {
      out.measure_cutoffs.clear();
      for (const auto& v : vals) out.measure_cutoffs.push_back(to_double(key, v));
    } else if (key == "stages") {
      out.stages = vals;
    } else {
      fail(ErrorKind::Config, "unknown config key '" + key + "'");
    }
  }
  out.validate();
  return out;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorKind::Io, "cannot open config file: " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  std::string dir = ".";
  auto slash = path.find_last_of('/');
  if (slash != std::string::npos) dir = path.substr(0, slash);
  return parse_run_config(buf.str(), dir);
}

} // namespace kamred
