#ifndef ERGO_DYNAMICS_HPP
#define ERGO_DYNAMICS_HPP

#include <functional>
#include <vector>

#include "ergo/algebra.hpp"
#include "ergo/gns.hpp"
#include "ergo/types.hpp"

namespace ergo {

/// A linear map tau on the algebra, stored as a D x D superoperator acting
/// on matrix-unit coordinates.
struct DynamicalMap {
  enum class Kind { hamiltonian, classical, custom };

  Mat super;
  Kind kind = Kind::custom;
  Mat hamiltonian;      // only for Kind::hamiltonian
  double t_step = 0.0;  // only for Kind::hamiltonian
};

/// Superoperator of an arbitrary linear map given as a function on elements.
DynamicalMap superoperator_from_function(const StarAlgebra& alg,
                                         const std::function<Mat(const Mat&)>& f);

/// tau_t(A) = e^{iHt} A e^{-iHt}.  Built per block from the eigenbasis of H
/// using entrywise phase differences exp(i(lambda_r - lambda_c) t), so units
/// diagonal in the eigenbasis pick up a factor of exactly 1.
/// Throws ValidationError on non-Hermitian H.
DynamicalMap hamiltonian_step_map(const StarAlgebra& alg, const Mat& h, double t);

/// tau(f) = f composed with T on a diagonal algebra: (S v)_x = v_{T(x)}.
/// Entries are exact zeros and ones.
DynamicalMap classical_map_superoperator(const StarAlgebra& alg,
                                         const std::vector<int>& t_map);

Mat apply_map(const StarAlgebra& alg, const DynamicalMap& tau, const Mat& a);

/// A verified *-dynamical system together with its canonical GNS space and
/// the induced contraction U on it.
struct System {
  StarAlgebra alg;
  State phi;
  DynamicalMap map;
  GnsSpace gns;
  Mat contraction;  // U on GNS coordinates

  Mat tau(const Mat& a) const { return apply_map(alg, map, a); }
};

/// Verifies tau(1) = 1 and the contraction inequality G - S*GS >= -tol and
/// builds the GNS data plus the induced contraction.  Throws HypothesisError
/// with "not unital" or "not contractive" when the respective check fails.
System make_system(const StarAlgebra& alg, const State& phi, const DynamicalMap& tau);

/// U = iota tau iota^+ on GNS coordinates.  Throws HypothesisError
/// ("ill-defined") if tau does not map the seminorm null space into itself.
Mat induced_contraction(const StarAlgebra& alg, const DynamicalMap& tau,
                        const GnsSpace& gns);

struct FixedPointData {
  Mat projection;  // orthogonal projection onto ker(U - I)
  int fixed_dim;
  double cesaro_gap;  // Frobenius distance to (1/n) sum U^k at n = n_check
};

/// Fixed-point projection from the singular values of U - I below tol::fix,
/// cross-checked against the operator Cesaro mean.
FixedPointData fixed_point_projection(const Mat& u, int n_check = 4096);

struct ErgodicReport {
  int fixed_dim;
  bool ergodic;
  Mat contraction;  // U
  Mat projection;   // P
  double omega_residual;  // norm of U omega - omega, always ~0
  double cesaro_gap;
};

ErgodicReport is_ergodic(const System& sys);

struct CesaroMeanResult {
  Mat mean;                       // (1/n) sum of tau^k(A), k = 0..n-1
  std::vector<double> residuals;  // seminorm of mean_m - phi(A) 1 for m = 1..n
  double rate_constant;           // max over m of m * residual_m
};

/// Residual trajectory of the Cesaro time-means of A against the state mean.
/// Iterates in algebra coordinates with compensated summation; the residual
/// is evaluated through the Gram quadratic form.
CesaroMeanResult cesaro_mean(const System& sys, const Mat& a, int n);

/// Partial Cesaro means (1/m) sum_{k<m} phi(A tau^k(B)) for m = 1..n.
std::vector<cx> cesaro_correlation(const System& sys, const Mat& a, const Mat& b,
                                   int n);

}  // namespace ergo

#endif  // ERGO_DYNAMICS_HPP
