#include "ergo/physics.hpp"

#include <algorithm>
#include <cmath>

namespace ergo {

System make_quantum_system(const BoundedQuantumSystem& q, const State& omega) {
  return make_system(q.alg, omega, hamiltonian_step_map(q.alg, q.hamiltonian, q.t_step));
}

EnergyProfile energy_profile(const StarAlgebra& alg, const Mat& h, const State& omega) {
  EnergyProfile out;
  for (const SpectralCluster& c : spectral_clusters(alg, h))
    out.levels.push_back({c.energy, c.multiplicity,
                          std::max(0.0, omega.value(c.projection).real()), c.projection});

  int populated = 0;
  for (const EnergyLevel& l : out.levels)
    if (l.prob > tol::prob) ++populated;
  out.multi_level = populated >= 2;
  if (!out.multi_level) return out;

  // Interval halving: start from a bounded interval of full measure and keep
  // the half of measure one until a half of measure strictly between zero and
  // one appears.  Terminates once the interval is shorter than the smallest
  // gap between populated levels.
  auto mass = [&](double lo, double hi) {
    double m = 0.0;
    for (const EnergyLevel& l : out.levels)
      if (l.energy >= lo && l.energy < hi) m += l.prob;
    return m;
  };
  double lo = out.levels.front().energy - 1.0;
  double hi = out.levels.back().energy + 1.0;
  for (int step = 0;; ++step) {
    if (step > 200) throw Error("energy interval halving did not terminate");
    const double mid = 0.5 * (lo + hi);
    const double left = mass(lo, mid);
    if (left > tol::prob && left < 1.0 - tol::prob) {
      hi = mid;
      break;
    }
    const double right = mass(mid, hi);
    if (right > tol::prob && right < 1.0 - tol::prob) {
      lo = mid;
      break;
    }
    if (left >= right)
      hi = mid;
    else
      lo = mid;
  }

  // Pad the half-open interval to a closed one whose endpoints sit halfway
  // to the nearest excluded level, so boundary eigenvalues cannot flip it.
  double in_lo = hi, in_hi = lo;
  for (const EnergyLevel& l : out.levels)
    if (l.energy >= lo && l.energy < hi) {
      in_lo = std::min(in_lo, l.energy);
      in_hi = std::max(in_hi, l.energy);
    }
  double pad_lo = in_lo - 0.5, pad_hi = in_hi + 0.5;
  for (const EnergyLevel& l : out.levels) {
    if (l.energy < lo || l.energy >= hi) {
      if (l.energy < in_lo) pad_lo = std::max(pad_lo, 0.5 * (l.energy + in_lo));
      if (l.energy > in_hi) pad_hi = std::min(pad_hi, 0.5 * (l.energy + in_hi));
    }
  }
  out.witness_interval = {pad_lo, pad_hi};
  return out;
}

std::optional<Certificate> non_ergodicity_certificate(const System& sys, const Mat& h) {
  EnergyProfile profile = energy_profile(sys.alg, h, sys.phi);
  if (!profile.multi_level) return std::nullopt;

  const auto [lo, hi] = *profile.witness_interval;
  const Mat p = spectral_projection(sys.alg, h, lo, hi);
  const Mat image = sys.tau(p);
  if ((image - p).cwiseAbs().maxCoeff() > tol::dyn)
    throw HypothesisError("map does not conserve the energy projection");

  Certificate cert;
  cert.projection = p;
  cert.a1 = 1.0;
  cert.a2 = 0.0;
  cert.p = sys.phi.value(p).real();
  cert.residual = std::abs(cert.a1 - cert.a2) * std::sqrt(cert.p * (1.0 - cert.p));
  cert.interval = {lo, hi};

  // Re-verification: the residual trajectory of A = a1 P + a2 (1 - P) must
  // sit at the certified constant, and the system must test non-ergodic.
  const Mat a = cert.a1 * p + cert.a2 * (sys.alg.identity() - p);
  const CesaroMeanResult traj = cesaro_mean(sys, a, 100);
  for (double r : traj.residuals)
    if (std::abs(r - cert.residual) > 1e-8)
      throw Error("certificate failed re-verification: residual not constant");
  if (is_ergodic(sys).ergodic)
    throw Error("certificate failed re-verification: system tests ergodic");
  return cert;
}

System example_2_5_7(cx c1, cx c2) {
  StarAlgebra alg({2});
  auto tau = [c1, c2](const Mat& a) {
    Mat out(2, 2);
    out(0, 0) = a(1, 1);
    out(0, 1) = c1 * a(0, 1);
    out(1, 0) = c2 * a(1, 0);
    out(1, 1) = a(0, 0);
    return out;
  };
  return make_system(alg, State::trace_state(alg), superoperator_from_function(alg, tau));
}

System spin_half_system(double e) {
  StarAlgebra alg({2});
  Mat h = Mat::Zero(2, 2);
  h(0, 0) = e;
  h(1, 1) = -e;
  Vec x = Vec::Zero(2);
  x(0) = 1.0;
  return make_system(alg, State::vector_state(alg, x), hamiltonian_step_map(alg, h, 1.0));
}

TwoCycleSystem classical_two_cycle() {
  std::vector<Rational> weights(8, Rational(1, 8));
  std::vector<int> map{1, 2, 3, 0, 5, 6, 7, 4};
  FiniteMeasureSystem measure = make_measure_system(std::move(weights), std::move(map));
  System sys = embed(measure);
  Mat h = Mat::Zero(8, 8);
  for (int a = 4; a < 8; ++a) h(a, a) = 1.0;
  return TwoCycleSystem{std::move(measure), std::move(sys), std::move(h)};
}

}  // namespace ergo
