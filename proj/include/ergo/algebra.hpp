#ifndef ERGO_ALGEBRA_HPP
#define ERGO_ALGEBRA_HPP

#include <utility>
#include <vector>

#include "ergo/types.hpp"

namespace ergo {

/// A finite-dimensional *-algebra realized concretely as a block-diagonal
/// complex matrix algebra.  Blocks of size 1 give the commutative (diagonal)
/// case; a single block of size N gives the full matrix algebra on C^N.
///
/// Elements are N x N matrices that vanish outside the declared blocks.
/// The fixed linear basis consists of the matrix units of each block, taken
/// block by block and row-major within a block; all coordinate vectors in
/// this library refer to that basis.
class StarAlgebra {
 public:
  explicit StarAlgebra(std::vector<int> blocks);

  const std::vector<int>& blocks() const { return blocks_; }
  int ambient_dim() const { return ambient_; }  // N, the matrix side length
  int linear_dim() const { return dim_; }       // D = sum of d_i^2

  Mat identity() const;
  Mat zero() const { return Mat::Zero(ambient_, ambient_); }

  /// j-th matrix unit, 0 <= j < linear_dim().
  Mat basis_element(int j) const;

  /// Basis index -> (block, row-in-block, col-in-block).
  struct UnitIndex {
    int block;
    int row;  // global row
    int col;  // global col
  };
  UnitIndex unit_index(int j) const;

  /// Block offset of block b in the ambient matrix.
  int block_offset(int b) const { return offsets_[b]; }

  bool conforms(const Mat& a, double tolerance = tol::herm) const;

  /// Coordinates of A over the matrix-unit basis.  Throws ValidationError
  /// if A has the wrong shape or significant off-block entries.
  Vec to_coords(const Mat& a) const;
  Mat from_coords(const Vec& v) const;

  /// Zero out all off-block entries.
  Mat project_to_blocks(const Mat& a) const;

  bool operator==(const StarAlgebra& other) const { return blocks_ == other.blocks_; }

 private:
  std::vector<int> blocks_;
  std::vector<int> offsets_;
  int ambient_ = 0;
  int dim_ = 0;
};

Mat adjoint(const Mat& a);

/// Block-respecting product.  Throws ValidationError on shape mismatch.
Mat mul(const StarAlgebra& alg, const Mat& a, const Mat& b);

bool is_hermitian(const Mat& a, double tolerance = tol::herm);
bool is_projection(const Mat& p, double tolerance = tol::proj);

/// A positive normalized linear functional, stored as a block-diagonal
/// weight matrix rho with value rule phi(A) = tr(rho * A).
class State {
 public:
  static State trace_state(const StarAlgebra& alg);
  static State vector_state(const StarAlgebra& alg, const Vec& x);
  /// Validates Hermiticity, positivity and normalization of rho.
  static State from_weight(const StarAlgebra& alg, const Mat& rho);

  cx value(const Mat& a) const { return (weight_ * a).trace(); }
  double seminorm(const Mat& a) const;
  const Mat& weight() const { return weight_; }

  /// phi(A*A) > 0 for all nonzero A, i.e. the weight has full rank.
  bool is_faithful(double tolerance = tol::null_rel) const;

 private:
  State(Mat rho) : weight_(std::move(rho)) {}
  Mat weight_;
};

/// Post-measurement state omega'(A) = omega(P A P) / omega(P).
/// Throws HypothesisError on zero-probability conditioning.
State luders_update(const StarAlgebra& alg, const State& omega, const Mat& p);

/// Eigenvalues of a Hermitian element, merged into clusters whenever two
/// values lie within tol::cluster_rel times the spectral radius.
struct SpectralCluster {
  double energy;     // cluster representative (mean)
  int multiplicity;  // number of merged eigenvalues
  Mat projection;    // spectral projection onto the cluster
};
std::vector<SpectralCluster> spectral_clusters(const StarAlgebra& alg, const Mat& h);

/// Projection onto the eigenspaces of h whose (clustered) eigenvalues lie in
/// the closed interval [lo, hi].  Throws ValidationError on non-Hermitian input.
Mat spectral_projection(const StarAlgebra& alg, const Mat& h, double lo, double hi);

}  // namespace ergo

#endif  // ERGO_ALGEBRA_HPP
