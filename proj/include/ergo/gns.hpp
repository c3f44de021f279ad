#ifndef ERGO_GNS_HPP
#define ERGO_GNS_HPP

#include <vector>

#include "ergo/algebra.hpp"
#include "ergo/types.hpp"

namespace ergo {

/// Numerical GNS data for a pair (algebra, state): the inner-product space
/// obtained by quotienting the algebra by the null space of the state
/// seminorm, together with the quotient map iota, the cyclic vector omega,
/// and the left-regular representation pi.
///
/// Coordinates on the GNS space are chosen so the induced inner product is
/// the standard one: the Gram matrix G[i,j] = phi(B_i* B_j) over the fixed
/// matrix-unit basis is eigendecomposed, null directions (eigenvalues below
/// tol::null_rel relative to the largest) are dropped, and the remaining
/// eigenvectors are scaled by sqrt(eigenvalue).  Eigenvectors are sorted by
/// descending eigenvalue with the largest-magnitude entry made real positive,
/// so coordinates are reproducible.
struct GnsSpace {
  StarAlgebra alg;
  State phi;
  int dim;        // dimension of the GNS space, <= alg.linear_dim()
  Mat gram;       // D x D Gram matrix over the matrix-unit basis
  Mat iota_map;   // dim x D: algebra coordinates -> GNS coordinates
  Mat iota_pinv;  // D x dim: right inverse of iota_map (canonical representatives)
  Mat null_basis; // D x (D - dim): orthonormal basis of the seminorm null space
  Vec omega;      // iota(1)

  Vec iota(const Mat& a) const { return iota_map * alg.to_coords(a); }
  double seminorm_coords(const Vec& algebra_coords) const;

  /// The operator pi(A) on GNS coordinates, materialized on demand.
  Mat pi(const Mat& a) const;

  /// D x D superoperator of left multiplication by A in algebra coordinates.
  Mat left_multiplier(const Mat& a) const;

  bool faithful() const { return dim == alg.linear_dim(); }
};

/// Builds the GNS space.  Throws ValidationError if the Gram matrix has a
/// significantly negative eigenvalue (the functional is not a state).
GnsSpace gns_construct(const StarAlgebra& alg, const State& phi);

double seminorm(const State& phi, const Mat& a);

/// True iff the span of iota(gens) is all of the GNS space; at finite
/// dimension this is exactly phi-totality of the generator set.
bool is_phi_total(const GnsSpace& gns, const std::vector<Mat>& gens);

}  // namespace ergo

#endif  // ERGO_GNS_HPP
