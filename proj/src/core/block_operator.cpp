// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#include "block_operator.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace kamred {

std::vector<std::vector<int>> fourier_ball(int freq_dim, double radius) {
  if (freq_dim < 1) fail(ErrorKind::Domain, "frequency dimension must be >= 1");
  std::vector<std::vector<int>> out;
  if (radius < 0.0) return out;
  long long r2 = static_cast<long long>(std::floor(radius * radius + 1e-9));
  int r = static_cast<int>(std::floor(radius + 1e-9));
  std::vector<int> cur(freq_dim, 0);
  // Depth-first over coordinates, keeping the running squared norm.
  auto rec = [&](auto&& self, int pos, long long acc) -> void {
    if (pos == freq_dim) {
      out.push_back(cur);
      return;
    }
    for (int v = -r; v <= r; ++v) {
      long long next = acc + static_cast<long long>(v) * v;
      if (next > r2) continue;
      cur[pos] = v;
      self(self, pos + 1, next);
    }
    cur[pos] = 0;
  };
  rec(rec, 0, 0);
  return out;
}

BlockOperator BlockOperator::identity(const SphereSpec& sphere, int freq_dim, int l_max) {
  BlockOperator out(sphere, freq_dim, l_max);
  std::vector<int> zero(freq_dim, 0);
  for (int k = 0; k <= sphere.k_max; ++k) {
    int dk = block_dimension(k, sphere.n);
    out.set_block(zero, k, k, Matrix::Identity(dk, dk));
  }
  return out;
}

BlockOperator BlockOperator::diagonal(const SphereSpec& sphere, int freq_dim, int l_max,
                                      const std::vector<double>& values) {
  if (static_cast<int>(values.size()) != sphere.k_max + 1)
    fail(ErrorKind::Domain, "diagonal needs one value per retained eigenspace");
  BlockOperator out(sphere, freq_dim, l_max);
  std::vector<int> zero(freq_dim, 0);
  for (int k = 0; k <= sphere.k_max; ++k) {
    int dk = block_dimension(k, sphere.n);
    out.set_block(zero, k, k, values[k] * Matrix::Identity(dk, dk));
  }
  return out;
}

const Matrix* BlockOperator::find_block(const BlockKey& key) const {
  auto it = blocks_.find(key);
  return it == blocks_.end() ? nullptr : &it->second;
}

Matrix BlockOperator::block(const std::vector<int>& l, int k, int kp) const {
  if (const Matrix* m = find_block(BlockKey{l, k, kp})) return *m;
  return Matrix::Zero(block_dimension(k, sphere_.n), block_dimension(kp, sphere_.n));
}

void BlockOperator::check_key(const std::vector<int>& l, int k, int kp,
                              const Matrix& m) const {
  if (static_cast<int>(l.size()) != freq_dim_)
    fail(ErrorKind::Domain, "mode vector has wrong dimension");
  if (mode_norm_sq(l) > static_cast<long long>(l_max_) * l_max_)
    fail(ErrorKind::Domain, "mode outside the Fourier truncation");
  if (k < 0 || kp < 0 || k > sphere_.k_max || kp > sphere_.k_max)
    fail(ErrorKind::Domain, "eigenspace index outside the truncation");
  if (m.rows() != block_dimension(k, sphere_.n) ||
      m.cols() != block_dimension(kp, sphere_.n))
    fail(ErrorKind::Domain, "block shape does not match (d_k, d_k')");
}

void BlockOperator::set_block(const std::vector<int>& l, int k, int kp, Matrix m) {
  check_key(l, k, kp, m);
  blocks_[BlockKey{l, k, kp}] = std::move(m);
}

void BlockOperator::add_block(const std::vector<int>& l, int k, int kp, const Matrix& m) {
  check_key(l, k, kp, m);
  auto [it, inserted] = blocks_.try_emplace(BlockKey{l, k, kp}, m);
  if (!inserted) it->second += m;
}

void BlockOperator::prune(double tol) {
  for (auto it = blocks_.begin(); it != blocks_.end();) {
    if (it->second.norm() <= tol)
      it = blocks_.erase(it);
    else
      ++it;
  }
}

void BlockOperator::require_compatible(const BlockOperator& other) const {
  if (sphere_.n != other.sphere_.n || sphere_.k_max != other.sphere_.k_max ||
      freq_dim_ != other.freq_dim_ || l_max_ != other.l_max_)
    fail(ErrorKind::Domain, "incompatible operator truncations");
}

BlockOperator& BlockOperator::operator+=(const BlockOperator& other) {
  require_compatible(other);
  for (const auto& [key, m] : other.blocks_) {
    auto [it, inserted] = blocks_.try_emplace(key, m);
    if (!inserted) it->second += m;
  }
  return *this;
}

BlockOperator& BlockOperator::operator-=(const BlockOperator& other) {
  require_compatible(other);
  for (const auto& [key, m] : other.blocks_) {
    auto [it, inserted] = blocks_.try_emplace(key, -m);
    if (!inserted) it->second -= m;
  }
  return *this;
}

BlockOperator& BlockOperator::operator*=(Complex scalar) {
  for (auto& [key, m] : blocks_) m *= scalar;
  return *this;
}

BlockOperator BlockOperator::adjoint() const {
  BlockOperator out(sphere_, freq_dim_, l_max_);
  for (const auto& [key, m] : blocks_)
    out.set_block(negate(key.l), key.kp, key.k, m.adjoint());
  return out;
}

double BlockOperator::max_block_frobenius() const {
  double best = 0.0;
  for (const auto& [key, m] : blocks_) best = std::max(best, m.norm());
  return best;
}

Matrix BlockOperator::evaluate_at(const std::vector<double>& phi,
                                  const BasisLayout& layout) const {
  if (static_cast<int>(phi.size()) != freq_dim_)
    fail(ErrorKind::Domain, "phase vector has wrong dimension");
  Matrix out = Matrix::Zero(layout.dim(), layout.dim());
  for (const auto& [key, m] : blocks_) {
    double arg = 0.0;
    for (int i = 0; i < freq_dim_; ++i) arg += key.l[i] * phi[i];
    Complex phase(std::cos(arg), std::sin(arg));
    out.block(layout.offset(key.k), layout.offset(key.kp), m.rows(), m.cols()) +=
        phase * m;
  }
  return out;
}

BlockOperator compose(const BlockOperator& a, const BlockOperator& b) {
  a.require_compatible(b);
  BlockOperator out(a.sphere(), a.freq_dim(), a.l_max());
  long long cap = static_cast<long long>(a.l_max()) * a.l_max();
  // Group the right factor by its row eigenspace so each left block only
  // meets compatible partners.
  std::vector<std::vector<const std::pair<const BlockKey, Matrix>*>> by_row(
      b.k_max() + 1);
  for (const auto& entry : b.blocks()) by_row[entry.first.k].push_back(&entry);
  double discarded = 0.0;
  for (const auto& [ka, ma] : a.blocks()) {
    for (const auto* entry : by_row[ka.kp]) {
      const BlockKey& kb = entry->first;
      const Matrix& mb = entry->second;
      std::vector<int> l = add_modes(ka.l, kb.l);
      if (mode_norm_sq(l) <= cap) {
        out.add_block(l, ka.k, kb.kp, ma * mb);
      } else {
        // Discarded tail: report an upper gauge of its operator-norm mass
        // without forming the product.
        discarded = std::max(discarded, ma.norm() * mb.norm());
      }
    }
  }
  out.set_truncation_loss(discarded);
  return out;
}

BlockOperator commutator(const BlockOperator& a, const BlockOperator& b) {
  BlockOperator ab = compose(a, b);
  BlockOperator ba = compose(b, a);
  double loss = std::max(ab.truncation_loss(), ba.truncation_loss());
  ab -= ba;
  ab.set_truncation_loss(loss);
  return ab;
}

BlockOperator scale_by_laplacian(const BlockOperator& a, double exponent, Side side) {
  BlockOperator out(a.sphere(), a.freq_dim(), a.l_max());
  for (const auto& [key, m] : a.blocks()) {
    int k = (side == Side::Left) ? key.k : key.kp;
    double factor = std::pow(laplace_eigenvalue_clamped(k, a.sphere().n), exponent / 2.0);
    out.set_block(key.l, key.k, key.kp, factor * m);
  }
  return out;
}

BlockOperator project_fourier(const BlockOperator& a, double cutoff) {
  BlockOperator out(a.sphere(), a.freq_dim(), a.l_max());
  double c2 = cutoff * cutoff;
  for (const auto& [key, m] : a.blocks())
    if (static_cast<double>(mode_norm_sq(key.l)) < c2)
      out.set_block(key.l, key.k, key.kp, m);
  return out;
}

BlockOperator diag_part(const BlockOperator& a) {
  BlockOperator out(a.sphere(), a.freq_dim(), a.l_max());
  std::vector<int> zero(a.freq_dim(), 0);
  for (int k = 0; k <= a.k_max(); ++k) {
    if (const Matrix* m = a.find_block(BlockKey{zero, k, k}))
      out.set_block(zero, k, k, *m);
  }
  return out;
}

BlockOperator phi_derivative(const BlockOperator& a, const std::vector<double>& omega) {
  if (static_cast<int>(omega.size()) != a.freq_dim())
    fail(ErrorKind::Domain, "frequency vector has wrong dimension");
  BlockOperator out(a.sphere(), a.freq_dim(), a.l_max());
  for (const auto& [key, m] : a.blocks()) {
    double wl = 0.0;
    for (int i = 0; i < a.freq_dim(); ++i) wl += omega[i] * key.l[i];
    if (wl == 0.0 && mode_norm_sq(key.l) == 0) continue;
    out.set_block(key.l, key.k, key.kp, Complex(0.0, wl) * m);
  }
  return out;
}

BlockOperator laplacian_power(const SphereSpec& sphere, int freq_dim, int l_max,
                              double power) {
  std::vector<double> values(sphere.k_max + 1);
  for (int k = 0; k <= sphere.k_max; ++k)
    values[k] = std::pow(laplace_eigenvalue(k, sphere.n), power);
  return BlockOperator::diagonal(sphere, freq_dim, l_max, values);
}

double structure_defect(const BlockOperator& a, Structure kind) {
  double defect = 0.0;
  switch (kind) {
    case Structure::Hermitian:
    case Structure::Hamiltonian: {
      double sign = (kind == Structure::Hermitian) ? 1.0 : -1.0;
      for (const auto& [key, m] : a.blocks()) {
        Matrix mirror = a.block(negate(key.l), key.kp, key.k);
        defect = std::max(defect,
                          (m - sign * mirror.adjoint()).cwiseAbs().maxCoeff());
      }
      break;
    }
    case Structure::BlockDiagonal: {
      for (const auto& [key, m] : a.blocks())
        if (key.k != key.kp) defect = std::max(defect, m.cwiseAbs().maxCoeff());
      break;
    }
    case Structure::NormalForm: {
      defect = structure_defect(a, Structure::BlockDiagonal);
      defect = std::max(defect, structure_defect(a, Structure::Hermitian));
      for (const auto& [key, m] : a.blocks())
        if (mode_norm_sq(key.l) != 0)
          defect = std::max(defect, m.cwiseAbs().maxCoeff());
      break;
    }
  }
  return defect;
}

bool structure_check(const BlockOperator& a, Structure kind, double tol) {
  return structure_defect(a, kind) <= tol;
}

double operator_norm(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
  // Largest singular value via the Gram matrix of the smaller side.
  Matrix gram = (m.rows() <= m.cols()) ? Matrix(m * m.adjoint())
                                       : Matrix(m.adjoint() * m);
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
  double top = es.eigenvalues().tail(1)(0);
  return top > 0.0 ? std::sqrt(top) : 0.0;
}

double decay_norm(const BlockOperator& a, const NormParams& p) {
  // sup over |k-k'| = h of the block spectral norm, per Fourier mode.
  std::map<std::pair<std::vector<int>, int>, double> sup;
  for (const auto& [key, m] : a.blocks()) {
    int h = std::abs(key.k - key.kp);
    double nrm = operator_norm(m);
    auto [it, inserted] = sup.try_emplace({key.l, h}, nrm);
    if (!inserted) it->second = std::max(it->second, nrm);
  }
  double acc = 0.0;
  for (const auto& [lh, nrm] : sup) {
    double lnorm = mode_norm(lh.first);
    double w = bracket(lnorm, static_cast<double>(lh.second));
    double weight = std::pow(w, 2.0 * p.s) * std::exp(2.0 * lnorm * p.sigma);
    acc += weight * nrm * nrm;
  }
  return std::sqrt(acc);
}

double beta_norm(const BlockOperator& a, const NormParams& p) {
  // One pass: the scaled variants differ from the base blocks by scalar
  // factors, so a single spectral norm per block serves both sides.
  std::map<std::pair<std::vector<int>, int>, std::pair<double, double>> sup;
  int n = a.sphere().n;
  for (const auto& [key, m] : a.blocks()) {
    int h = std::abs(key.k - key.kp);
    double nrm = operator_norm(m);
    double left = std::pow(laplace_eigenvalue_clamped(key.k, n), -p.beta / 2.0) * nrm;
    double right = std::pow(laplace_eigenvalue_clamped(key.kp, n), -p.beta / 2.0) * nrm;
    auto [it, inserted] = sup.try_emplace({key.l, h}, std::pair{left, right});
    if (!inserted) {
      it->second.first = std::max(it->second.first, left);
      it->second.second = std::max(it->second.second, right);
    }
  }
  double acc_l = 0.0, acc_r = 0.0;
  for (const auto& [lh, nrm] : sup) {
    double lnorm = mode_norm(lh.first);
    double w = bracket(lnorm, static_cast<double>(lh.second));
    double weight = std::pow(w, 2.0 * p.s) * std::exp(2.0 * lnorm * p.sigma);
    acc_l += weight * nrm.first * nrm.first;
    acc_r += weight * nrm.second * nrm.second;
  }
  return std::sqrt(acc_l) + std::sqrt(acc_r);
}

LipschitzNorm lipschitz_norm(
    const std::vector<std::pair<std::vector<double>, BlockOperator>>& family,
    const NormParams& p, NormKind kind) {
  auto measure = [&](const BlockOperator& a) {
    return kind == NormKind::Decay ? decay_norm(a, p) : beta_norm(a, p);
  };
  LipschitzNorm out;
  if (family.empty()) fail(ErrorKind::Domain, "empty operator family");
  for (const auto& [omega, op] : family)
    out.sup_part = std::max(out.sup_part, measure(op));
  if (family.size() >= 2) {
    out.lip_defined = true;
    for (size_t i = 0; i < family.size(); ++i) {
      for (size_t j = i + 1; j < family.size(); ++j) {
        double dist = 0.0;
        for (size_t c = 0; c < family[i].first.size(); ++c) {
          double dv = family[i].first[c] - family[j].first[c];
          dist += dv * dv;
        }
        dist = std::sqrt(dist);
        if (dist == 0.0) continue;
        BlockOperator diff = family[i].second - family[j].second;
        out.lip_part = std::max(out.lip_part, measure(diff) / dist);
      }
    }
  }
  out.value = out.sup_part + p.gamma * out.lip_part;
  return out;
}

// State vectors ---------------------------------------------------------------

CVector StateVector::component(const std::vector<int>& l, int k) const {
  auto it = coeffs_.find({l, k});
  if (it != coeffs_.end()) return it->second;
  return CVector::Zero(block_dimension(k, sphere_.n));
}

void StateVector::set_component(const std::vector<int>& l, int k, CVector v) {
  if (static_cast<int>(l.size()) != freq_dim_)
    fail(ErrorKind::Domain, "mode vector has wrong dimension");
  if (mode_norm_sq(l) > static_cast<long long>(l_max_) * l_max_)
    fail(ErrorKind::Domain, "mode outside the Fourier truncation");
  if (k < 0 || k > sphere_.k_max)
    fail(ErrorKind::Domain, "eigenspace index outside the truncation");
  if (v.size() != block_dimension(k, sphere_.n))
    fail(ErrorKind::Domain, "component length does not match d_k");
  coeffs_[{l, k}] = std::move(v);
}

StateVector& StateVector::operator+=(const StateVector& other) {
  for (const auto& [key, v] : other.coeffs_) {
    auto [it, inserted] = coeffs_.try_emplace(key, v);
    if (!inserted) it->second += v;
  }
  return *this;
}

StateVector& StateVector::operator-=(const StateVector& other) {
  for (const auto& [key, v] : other.coeffs_) {
    auto [it, inserted] = coeffs_.try_emplace(key, -v);
    if (!inserted) it->second -= v;
  }
  return *this;
}

double StateVector::l2_norm() const {
  double acc = 0.0;
  for (const auto& [key, v] : coeffs_) acc += v.squaredNorm();
  return std::sqrt(acc);
}

StateVector apply(const BlockOperator& a, const StateVector& z) {
  if (a.sphere().n != z.sphere().n || a.sphere().k_max != z.sphere().k_max ||
      a.freq_dim() != z.freq_dim() || a.l_max() != z.l_max())
    fail(ErrorKind::Domain, "operator and state truncations do not match");
  StateVector out(z.sphere(), z.freq_dim(), z.l_max());
  long long cap = static_cast<long long>(z.l_max()) * z.l_max();
  std::map<StateVector::Key, CVector> acc;
  for (const auto& [bk, m] : a.blocks()) {
    for (const auto& [zk, v] : z.coefficients()) {
      if (bk.kp != zk.second) continue;
      std::vector<int> l = add_modes(bk.l, zk.first);
      if (mode_norm_sq(l) > cap) continue;
      CVector prod = m * v;
      auto [it, inserted] = acc.try_emplace({l, bk.k}, prod);
      if (!inserted) it->second += prod;
    }
  }
  for (auto& [key, v] : acc) out.set_component(key.first, key.second, std::move(v));
  return out;
}

double sobolev_norm(const StateVector& z, const NormParams& p) {
  double acc = 0.0;
  for (const auto& [key, v] : z.coefficients()) {
    double lnorm = mode_norm(key.first);
    double w = bracket(lnorm, static_cast<double>(key.second));
    acc += std::pow(w, 2.0 * p.s) * std::exp(2.0 * lnorm * p.sigma) * v.squaredNorm();
  }
  return std::sqrt(acc);
}

// Text dumps --------------------------------------------------------------------

void write_operator(std::ostream& os, const BlockOperator& a) {
  os.precision(17);
  os << a.freq_dim() << ' ' << a.k_max() << ' ' << a.l_max() << ' '
     << a.sphere().n << '\n';
  for (const auto& [key, m] : a.blocks()) {
    for (int r = 0; r < m.rows(); ++r) {
      for (int c = 0; c < m.cols(); ++c) {
        Complex v = m(r, c);
        if (v == Complex(0.0, 0.0)) continue;
        for (int i = 0; i < a.freq_dim(); ++i) os << key.l[i] << ' ';
        os << key.k << ' ' << key.kp << ' ' << r << ' ' << c << ' '
           << v.real() << ' ' << v.imag() << '\n';
      }
    }
  }
}

BlockOperator read_operator(std::istream& is) {
  int d = 0, kmax = 0, lmax = 0, n = 0;
  if (!(is >> d >> kmax >> lmax >> n))
    fail(ErrorKind::Io, "operator dump: malformed header");
  BlockOperator out(SphereSpec{n, kmax}, d, lmax);
  std::vector<int> l(d);
  int k = 0, kp = 0, r = 0, c = 0;
  double re = 0.0, im = 0.0;
  std::map<BlockKey, Matrix> blocks;
  while (true) {
    bool ok = true;
    for (int i = 0; i < d; ++i)
      if (!(is >> l[i])) { ok = false; break; }
    if (!ok) break;
    if (!(is >> k >> kp >> r >> c >> re >> im))
      fail(ErrorKind::Io, "operator dump: truncated record");
    BlockKey key{l, k, kp};
    auto it = blocks.find(key);
    if (it == blocks.end()) {
      Matrix m = Matrix::Zero(block_dimension(k, n), block_dimension(kp, n));
      it = blocks.emplace(key, std::move(m)).first;
    }
    if (r < 0 || r >= it->second.rows() || c < 0 || c >= it->second.cols())
      fail(ErrorKind::Io, "operator dump: entry out of block bounds");
    it->second(r, c) = Complex(re, im);
  }
  for (auto& [key, m] : blocks) out.set_block(key.l, key.k, key.kp, std::move(m));
  return out;
}

} // namespace kamred
