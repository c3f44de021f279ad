#ifndef ERGO_TYPES_HPP
#define ERGO_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ergo {

using cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Library-wide tolerances.  All absolute, applied after scaling by the
/// relevant matrix norm unless noted otherwise.
namespace tol {
inline constexpr double herm = 1e-9;       // Hermiticity check
inline constexpr double proj = 1e-9;       // projection check (P^2=P, P*=P)
inline constexpr double psd = 1e-10;       // positive semidefiniteness slack
inline constexpr double norm = 1e-9;       // normalization (phi(1)=1, unit vectors)
inline constexpr double prob = 1e-12;      // smallest probability treated as nonzero
inline constexpr double gns = 1e-8;        // GNS reconstruction identities
inline constexpr double null_rel = 1e-10;  // Gram null space cut, relative to largest eigenvalue
inline constexpr double dyn = 1e-9;        // dynamical-map checks (unitality, contraction norm)
inline constexpr double fix = 1e-8;        // singular values of U-I counted as fixed directions
inline constexpr double cluster_rel = 1e-9;  // eigenvalue clustering, relative to spectral radius
inline constexpr double guard = 1e-12;     // strict-inequality guard band in recurrence scans
}  // namespace tol

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input: wrong shapes, non-states, non-projections, bad scenario data.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

/// A numerical hypothesis failed: map not unital or not contractive,
/// zero-probability conditioning, homomorphism prerequisite violated.
class HypothesisError : public Error {
 public:
  explicit HypothesisError(const std::string& what) : Error(what) {}
};

/// Kahan-compensated accumulation of complex vectors.
class CompensatedVecSum {
 public:
  explicit CompensatedVecSum(Eigen::Index n)
      : sum_(Vec::Zero(n)), carry_(Vec::Zero(n)) {}

  void add(const Vec& x) {
    for (Eigen::Index i = 0; i < sum_.size(); ++i) {
      const cx y = x(i) - carry_(i);
      const cx t = sum_(i) + y;
      carry_(i) = (t - sum_(i)) - y;
      sum_(i) = t;
    }
  }

  const Vec& value() const { return sum_; }

 private:
  Vec sum_, carry_;
};

/// Scalar companion of CompensatedVecSum.
class CompensatedSum {
 public:
  void add(cx x) {
    const cx y = x - carry_;
    const cx t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }

  cx value() const { return sum_; }

 private:
  cx sum_{0.0, 0.0};
  cx carry_{0.0, 0.0};
};

}  // namespace ergo

#endif  // ERGO_TYPES_HPP
