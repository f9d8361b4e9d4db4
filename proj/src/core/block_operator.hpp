// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <iosfwd>
#include <map>
#include <vector>

#include "spherical.hpp"

namespace kamred {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Frequency multi-index helpers -------------------------------------------

inline long long mode_norm_sq(const std::vector<int>& l) {
  long long s = 0;
  for (int v : l) s += static_cast<long long>(v) * v;
  return s;
}
inline double mode_norm(const std::vector<int>& l) {
  return std::sqrt(static_cast<double>(mode_norm_sq(l)));
}
inline std::vector<int> negate(const std::vector<int>& l) {
  std::vector<int> out(l.size());
  for (size_t i = 0; i < l.size(); ++i) out[i] = -l[i];
  return out;
}
inline std::vector<int> add_modes(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

// All integer vectors in Z^d with Euclidean norm <= radius, in a fixed
// deterministic (lexicographic) order.
std::vector<std::vector<int>> fourier_ball(int freq_dim, double radius);

// Bracket weight <v> = max(1, |v|_2) on concatenated indices.
inline double bracket(double a, double b) {
  double r = std::sqrt(a * a + b * b);
  return r < 1.0 ? 1.0 : r;
}

// Flattening of the retained harmonic basis, k-major then order-ascending.
struct BasisLayout {
  explicit BasisLayout(const SphereSpec& spec) : spec_(spec) {
    offsets_.resize(spec.k_max + 2, 0);
    for (int k = 0; k <= spec.k_max; ++k)
      offsets_[k + 1] = offsets_[k] + block_dimension(k, spec.n);
  }
  int dim() const { return offsets_.back(); }
  int offset(int k) const { return offsets_[k]; }
  int block_dim(int k) const { return offsets_[k + 1] - offsets_[k]; }
  const SphereSpec& sphere() const { return spec_; }

private:
  SphereSpec spec_;
  std::vector<int> offsets_;
};

// --------------------------------------------------------------------------

struct BlockKey {
  std::vector<int> l;
  int k = 0;
  int kp = 0;
  friend bool operator<(const BlockKey& a, const BlockKey& b) {
    if (a.l != b.l) return a.l < b.l;
    if (a.k != b.k) return a.k < b.k;
    return a.kp < b.kp;
  }
  friend bool operator==(const BlockKey& a, const BlockKey& b) {
    return a.l == b.l && a.k == b.k && a.kp == b.kp;
  }
};

// Truncated phi-dependent block operator: a finite family of Fourier modes
// |l| <= l_max, each a block matrix over eigenspaces k, k' <= k_max with
// dense complex d_k x d_k' blocks.  Absent keys mean zero.  Instances are
// value types; all algebra below is pure.
class BlockOperator {
public:
  BlockOperator() = default;
  BlockOperator(const SphereSpec& sphere, int freq_dim, int l_max)
      : sphere_(sphere), freq_dim_(freq_dim), l_max_(l_max) {
    sphere_.validate();
    if (freq_dim < 1) fail(ErrorKind::Config, "frequency dimension must be >= 1");
    if (l_max < 0) fail(ErrorKind::Config, "l_max must be >= 0");
  }

  static BlockOperator identity(const SphereSpec& sphere, int freq_dim, int l_max);
  // phi-independent diagonal operator with block k = f(k) * Id.
  static BlockOperator diagonal(const SphereSpec& sphere, int freq_dim, int l_max,
                                const std::vector<double>& values);

  const SphereSpec& sphere() const { return sphere_; }
  int freq_dim() const { return freq_dim_; }
  int l_max() const { return l_max_; }
  int k_max() const { return sphere_.k_max; }
  const std::map<BlockKey, Matrix>& blocks() const { return blocks_; }
  bool empty() const { return blocks_.empty(); }
  size_t block_count() const { return blocks_.size(); }

  const Matrix* find_block(const BlockKey& key) const;
  // Returns the stored block or an explicit zero of the right shape.
  Matrix block(const std::vector<int>& l, int k, int kp) const;
  void set_block(const std::vector<int>& l, int k, int kp, Matrix m);
  void add_block(const std::vector<int>& l, int k, int kp, const Matrix& m);
  void erase_block(const BlockKey& key) { blocks_.erase(key); }
  // Drops blocks with Frobenius norm <= tol.
  void prune(double tol = 0.0);

  BlockOperator& operator+=(const BlockOperator& other);
  BlockOperator& operator-=(const BlockOperator& other);
  BlockOperator& operator*=(Complex scalar);
  friend BlockOperator operator+(BlockOperator a, const BlockOperator& b) { return a += b; }
  friend BlockOperator operator-(BlockOperator a, const BlockOperator& b) { return a -= b; }
  friend BlockOperator operator*(Complex scalar, BlockOperator a) { return a *= scalar; }

  // Blockwise adjoint: (A*)_{[k]}^{[k']}(l) = conj-transpose of A_{[k']}^{[k]}(-l).
  BlockOperator adjoint() const;

  // Largest block Frobenius norm; cheap size gauge for series control.
  double max_block_frobenius() const;

  // Dense matrix of A(phi) on the flattened basis, by Fourier summation.
  Matrix evaluate_at(const std::vector<double>& phi, const BasisLayout& layout) const;

  // Fourier-tail operator-norm mass discarded by the composition that
  // produced this operator (zero for directly assembled ones).
  double truncation_loss() const { return truncation_loss_; }
  void set_truncation_loss(double v) { truncation_loss_ = v; }
  void add_truncation_loss(double v) { truncation_loss_ += v; }

  void require_compatible(const BlockOperator& other) const;

private:
  void check_key(const std::vector<int>& l, int k, int kp, const Matrix& m) const;

  SphereSpec sphere_;
  int freq_dim_ = 1;
  int l_max_ = 0;
  double truncation_loss_ = 0.0;
  std::map<BlockKey, Matrix> blocks_;
};

// Algebra -------------------------------------------------------------------

// Fourier convolution in l, block matrix product in (k,k'); output modes with
// |l| > l_max are discarded and their operator-norm mass recorded as the
// result's truncation loss.
BlockOperator compose(const BlockOperator& a, const BlockOperator& b);
BlockOperator commutator(const BlockOperator& a, const BlockOperator& b);

enum class Side { Left, Right };

// Multiplies block rows (Left) or columns (Right) by clamped eigenvalue
// powers lambda_k^{exponent/2}, i.e. the action of D^exponent with
// D = diag(lambda_k^{1/2}) regularized at k = 0.
BlockOperator scale_by_laplacian(const BlockOperator& a, double exponent, Side side);

// Keeps Fourier modes with |l| < cutoff (strict).
BlockOperator project_fourier(const BlockOperator& a, double cutoff);

// Keeps only the (l = 0, k = k) blocks.
BlockOperator diag_part(const BlockOperator& a);

// Symbol derivative: multiplies each stored block by i (omega . l).
BlockOperator phi_derivative(const BlockOperator& a, const std::vector<double>& omega);

// phi-independent diagonal operator with true eigenvalue powers
// lambda_k^{power} on block k (the squared-dispersion operator for power = 1).
BlockOperator laplacian_power(const SphereSpec& sphere, int freq_dim, int l_max,
                              double power);

enum class Structure { Hermitian, Hamiltonian, BlockDiagonal, NormalForm };

bool structure_check(const BlockOperator& a, Structure kind, double tol);
// Largest entrywise defect for the given structure, for diagnostics.
double structure_defect(const BlockOperator& a, Structure kind);

// Norms ---------------------------------------------------------------------

struct NormParams {
  double s = 0.0;      // Sobolev index
  double sigma = 0.0;  // analyticity width
  double beta = 0.0;   // smoothing order
  double gamma = 0.0;  // Lipschitz weight
};

// Spectral norm of a dense block.
double operator_norm(const Matrix& m);

// sqrt( sum_{l,h} <l,h>^{2s} e^{2|l|sigma} sup_{|k-k'|=h} ||A_{[k]}^{[k']}(l)||_op^2 )
double decay_norm(const BlockOperator& a, const NormParams& p);

// |D^{-beta} A|_{s,sigma} + |A D^{-beta}|_{s,sigma}
double beta_norm(const BlockOperator& a, const NormParams& p);

enum class NormKind { Decay, Beta };

struct LipschitzNorm {
  double value = 0.0;     // sup part + gamma * lip part
  double sup_part = 0.0;
  double lip_part = 0.0;
  bool lip_defined = false; // false when the grid has fewer than 2 samples
};

// Sup over the sample family plus gamma times the worst difference quotient
// over all pairs.  Grids are expected small (<= 32 points).
LipschitzNorm lipschitz_norm(
    const std::vector<std::pair<std::vector<double>, BlockOperator>>& family,
    const NormParams& p, NormKind kind);

// State vectors --------------------------------------------------------------

// Sequence z_{[k]}(l) of coefficient vectors with the same truncation
// semantics as BlockOperator.
class StateVector {
public:
  StateVector() = default;
  StateVector(const SphereSpec& sphere, int freq_dim, int l_max)
      : sphere_(sphere), freq_dim_(freq_dim), l_max_(l_max) {}

  const SphereSpec& sphere() const { return sphere_; }
  int freq_dim() const { return freq_dim_; }
  int l_max() const { return l_max_; }

  using Key = std::pair<std::vector<int>, int>;
  const std::map<Key, CVector>& coefficients() const { return coeffs_; }
  CVector component(const std::vector<int>& l, int k) const;
  void set_component(const std::vector<int>& l, int k, CVector v);

  StateVector& operator+=(const StateVector& other);
  StateVector& operator-=(const StateVector& other);
  friend StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }

  double l2_norm() const;

private:
  SphereSpec sphere_;
  int freq_dim_ = 1;
  int l_max_ = 0;
  std::map<Key, CVector> coeffs_;
};

// Convolution-product action (A z).
StateVector apply(const BlockOperator& a, const StateVector& z);

// sqrt( sum <l,k>^{2s} e^{2|l|sigma} ||z_{[k]}(l)||^2 )
double sobolev_norm(const StateVector& z, const NormParams& p);

// Text dumps ------------------------------------------------------------------

// Lossless round-trip text format: a header line "d k_max l_max n" followed by
// one record per entry "l_1 .. l_d k k' row col re im".
void write_operator(std::ostream& os, const BlockOperator& a);
BlockOperator read_operator(std::istream& is);

} // namespace kamred
