#ifndef ERGO_RECURRENCE_HPP
#define ERGO_RECURRENCE_HPP

#include <optional>
#include <vector>

#include "ergo/dynamics.hpp"
#include "ergo/types.hpp"

namespace ergo {

/// Times k in {1..K} at which a correlation stays above its Khintchine
/// threshold.  max_gap counts the gap from 0 to the first member and between
/// consecutive members; an empty set reports horizon + 1 to make the absence
/// of a window bound explicit.
struct RecurrenceSet {
  std::vector<int> indices;
  int horizon;
  double epsilon;
  double threshold;           // the scanned value must exceed this
  int max_gap;
  std::vector<double> values;  // scanned value at k = 1..horizon
  bool hypothesis_warning = false;  // pair scan on a non-ergodic system
};

/// Scan of |phi(A* tau^k(A))| > |phi(A)|^2 - epsilon for k = 1..K.
/// Admission requires clearing the threshold by more than tol::guard.
RecurrenceSet khintchine_set(const System& sys, const Mat& a, double epsilon, int k);

/// Scan of |phi(A tau^k(B))| > |phi(A) phi(B)| - epsilon.  When the system is
/// not ergodic the defining theorem's hypothesis fails; the scan still runs
/// but the result carries hypothesis_warning = true.
RecurrenceSet khintchine_pair_set(const System& sys, const Mat& a, const Mat& b,
                                  double epsilon, int k);

/// Smallest n <= K with phi(P tau^n(P) P) > tol::prob, or nullopt if the scan
/// horizon is exhausted.  Requires tau to be a *-homomorphism with
/// phi invariant under tau (sampled check); throws HypothesisError otherwise,
/// and ValidationError if P is not a projection.
std::optional<int> additive_recurrence_search(const System& sys, const Mat& p, int k);

/// Additivity inequality sum phi(P_j) <= 1 for a family with
/// phi(P_k P_l P_k) = 0 for k < l.  Vacuously true if the family does not
/// satisfy that hypothesis.  Throws ValidationError on non-projections.
bool is_additive_witness(const StarAlgebra& alg, const State& phi,
                         const std::vector<Mat>& projections);

struct ReturnScanRow {
  double t;
  int n;      // first recurrence time at step t, 0 if none found up to K
  double p;   // conditioned return probability at that time
  bool in_window;  // p > tr(P) - epsilon
};

struct ReturnScanResult {
  std::vector<ReturnScanRow> rows;
  double threshold;        // tr(P) - epsilon
  double max_jump_coarse;  // largest adjacent jump of t -> tr(P tau_t(P)) on the grid
  double max_jump_fine;    // same on the twice-refined grid
};

/// Return-probability scan of the conditioned state omega = Luders(tr, P)
/// over a grid of time steps, probing continuity of t -> tr(P tau_t(P)) by
/// grid refinement.  Throws ValidationError when tr(P) vanishes.
ReturnScanResult return_probability_scan(const StarAlgebra& alg, const Mat& h,
                                         const Mat& p,
                                         const std::vector<double>& t_grid,
                                         double epsilon, int k);

}  // namespace ergo

#endif  // ERGO_RECURRENCE_HPP
