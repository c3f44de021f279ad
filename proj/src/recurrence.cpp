#include "ergo/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ergo {

namespace {

// Covector of X -> phi(M X) over the matrix-unit coordinates of X.
Vec pairing_covector(const StarAlgebra& alg, const Mat& rho_times_m) {
  Vec w(alg.linear_dim());
  for (int j = 0; j < alg.linear_dim(); ++j) {
    const auto u = alg.unit_index(j);
    w(j) = rho_times_m(u.col, u.row);
  }
  return w;
}

RecurrenceSet scan(const System& sys, const Mat& left, const Mat& right,
                   double threshold, double epsilon, int k) {
  if (epsilon <= 0.0) throw ValidationError("epsilon must be positive");
  if (k < 1) throw ValidationError("horizon must be at least 1");

  const Vec w = pairing_covector(sys.alg, sys.phi.weight() * left);
  Vec iterate = sys.alg.to_coords(sys.alg.project_to_blocks(right));

  RecurrenceSet out;
  out.horizon = k;
  out.epsilon = epsilon;
  out.threshold = threshold;
  out.values.reserve(k);
  int last = 0;
  out.max_gap = 0;
  for (int n = 1; n <= k; ++n) {
    iterate = sys.map.super * iterate;
    const double value = std::abs((w.transpose() * iterate)(0, 0));
    out.values.push_back(value);
    if (value - threshold > tol::guard) {
      out.indices.push_back(n);
      out.max_gap = std::max(out.max_gap, n - last);
      last = n;
    }
  }
  if (out.indices.empty()) out.max_gap = k + 1;
  return out;
}

Mat random_element(const StarAlgebra& alg, std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  Vec v(alg.linear_dim());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cx(dist(rng), dist(rng));
  return alg.from_coords(v);
}

void check_homomorphic_invariant(const System& sys) {
  std::mt19937_64 rng(0x2e7d4u);
  const double scale = std::max(1.0, sys.map.super.cwiseAbs().maxCoeff());
  for (int trial = 0; trial < 8; ++trial) {
    const Mat a = random_element(sys.alg, rng);
    const Mat b = random_element(sys.alg, rng);
    const double sz = std::max(1.0, a.norm() * b.norm()) * scale * scale;
    if ((sys.tau(a * b) - sys.tau(a) * sys.tau(b)).norm() > tol::dyn * sz)
      throw HypothesisError("map is not multiplicative");
    if ((sys.tau(a.adjoint()) - sys.tau(a).adjoint()).norm() > tol::dyn * scale * std::max(1.0, a.norm()))
      throw HypothesisError("map does not respect the involution");
    if (std::abs(sys.phi.value(sys.tau(a)) - sys.phi.value(a)) > tol::dyn * std::max(1.0, a.norm()))
      throw HypothesisError("state is not invariant under the map");
  }
}

}  // namespace

RecurrenceSet khintchine_set(const System& sys, const Mat& a, double epsilon, int k) {
  const double mean = std::abs(sys.phi.value(a));
  return scan(sys, adjoint(a), a, mean * mean - epsilon, epsilon, k);
}

RecurrenceSet khintchine_pair_set(const System& sys, const Mat& a, const Mat& b,
                                  double epsilon, int k) {
  const double threshold = std::abs(sys.phi.value(a) * sys.phi.value(b)) - epsilon;
  RecurrenceSet out = scan(sys, a, b, threshold, epsilon, k);
  out.hypothesis_warning = !is_ergodic(sys).ergodic;
  return out;
}

std::optional<int> additive_recurrence_search(const System& sys, const Mat& p, int k) {
  if (!sys.alg.conforms(p) || !is_projection(p))
    throw ValidationError("search element is not a projection in the algebra");
  if (k < 1) throw ValidationError("horizon must be at least 1");
  check_homomorphic_invariant(sys);

  Vec iterate = sys.alg.to_coords(p);
  for (int n = 1; n <= k; ++n) {
    iterate = sys.map.super * iterate;
    const Mat image = sys.alg.from_coords(iterate);
    if (sys.phi.value(p * image * p).real() > tol::prob) return n;
  }
  return std::nullopt;
}

bool is_additive_witness(const StarAlgebra& alg, const State& phi,
                         const std::vector<Mat>& projections) {
  for (const Mat& p : projections)
    if (!alg.conforms(p) || !is_projection(p))
      throw ValidationError("family member is not a projection in the algebra");
  for (std::size_t i = 0; i < projections.size(); ++i)
    for (std::size_t j = i + 1; j < projections.size(); ++j)
      if (std::abs(phi.value(projections[i] * projections[j] * projections[i])) > tol::dyn)
        return true;  // family outside the hypothesis: nothing to check
  double total = 0.0;
  for (const Mat& p : projections) total += phi.value(p).real();
  return total <= 1.0 + tol::norm;
}

ReturnScanResult return_probability_scan(const StarAlgebra& alg, const Mat& h,
                                         const Mat& p,
                                         const std::vector<double>& t_grid,
                                         double epsilon, int k) {
  if (t_grid.empty()) throw ValidationError("time grid is empty");
  if (!alg.conforms(p) || !is_projection(p))
    throw ValidationError("scan element is not a projection in the algebra");
  const State tr = State::trace_state(alg);
  const double pr = tr.value(p).real();
  if (pr <= tol::prob) throw ValidationError("projection has zero trace");

  const State omega = luders_update(alg, tr, p);
  ReturnScanResult out;
  out.threshold = pr - epsilon;

  auto correlation = [&](double t) {
    const DynamicalMap tau = hamiltonian_step_map(alg, h, t);
    return tr.value(p * apply_map(alg, tau, p)).real();
  };

  for (double t : t_grid) {
    const DynamicalMap tau = hamiltonian_step_map(alg, h, t);
    Vec iterate = alg.to_coords(p);
    int hit = 0;
    double prob = 0.0;
    for (int n = 1; n <= k; ++n) {
      iterate = tau.super * iterate;
      const double q = omega.value(alg.from_coords(iterate)).real();
      if (q > tol::prob) {
        hit = n;
        prob = q;
        break;
      }
    }
    out.rows.push_back({t, hit, prob, hit > 0 && prob > out.threshold});
  }

  auto max_jump = [&](int refine) {
    double jump = 0.0;
    double prev = 0.0;
    bool have = false;
    for (std::size_t i = 0; i + 1 < t_grid.size(); ++i)
      for (int s = 0; s <= refine; ++s) {
        const double t = t_grid[i] + (t_grid[i + 1] - t_grid[i]) * s / (refine + 1.0);
        const double c = correlation(t);
        if (have) jump = std::max(jump, std::abs(c - prev));
        prev = c;
        have = true;
      }
    if (!t_grid.empty() && have)
      jump = std::max(jump, std::abs(correlation(t_grid.back()) - prev));
    return jump;
  };
  out.max_jump_coarse = t_grid.size() > 1 ? max_jump(0) : 0.0;
  out.max_jump_fine = t_grid.size() > 1 ? max_jump(1) : 0.0;
  return out;
}

}  // namespace ergo
