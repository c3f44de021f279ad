#ifndef ERGO_PHYSICS_HPP
#define ERGO_PHYSICS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "ergo/classical.hpp"
#include "ergo/dynamics.hpp"
#include "ergo/types.hpp"

namespace ergo {

/// A finite quantum system with Hamiltonian dynamics at a fixed time step.
struct BoundedQuantumSystem {
  StarAlgebra alg;
  Mat hamiltonian;
  double t_step;
};

System make_quantum_system(const BoundedQuantumSystem& q, const State& omega);

struct EnergyLevel {
  double energy;
  int multiplicity;
  double prob;  // omega(spectral projection)
  Mat projection;
};

/// Energy-level analysis of a state: level probabilities and, when the state
/// sees more than one level, a bounded closed interval I with
/// 0 < omega(chi_I(H)) < 1 found by interval halving on the spectrum.
struct EnergyProfile {
  std::vector<EnergyLevel> levels;
  bool multi_level;
  std::optional<std::pair<double, double>> witness_interval;
};

EnergyProfile energy_profile(const StarAlgebra& alg, const Mat& h, const State& omega);

/// A verified witness of non-ergodicity built from a conserved energy
/// projection P: the Cesaro residual of A = a1 P + a2 (1 - P) stays at
/// |a1 - a2| sqrt(p (1 - p)) with p = omega(P), independent of the horizon.
struct Certificate {
  Mat projection;
  double a1, a2;
  double p;
  double residual;
  std::pair<double, double> interval;
};

/// Issues a certificate when the state allows more than one energy level of
/// h, or nullopt otherwise.  Requires the system's map to conserve h's
/// spectral projections; throws Error if the certificate fails its own
/// re-verification (constant residual, non-ergodic verdict).
std::optional<Certificate> non_ergodicity_certificate(const System& sys, const Mat& h);

/// The 2x2 matrix system with phi = tr and
/// tau(a11 a12; a21 a22) = (a22 c1 a12; c2 a21 a11); a *-dynamical system
/// iff |c1| <= 1 and |c2| <= 1, ergodic iff c1 != 1 and c2 != 1.
System example_2_5_7(cx c1, cx c2);

/// Spin-1/2 particle in a magnetic field: blocks [2], H = diag(E, -E),
/// unit time step, omega the vector state of e1.  Ergodic iff 2E is not a
/// multiple of 2 pi.
System spin_half_system(double e);

/// Eight uniform atoms split into two invariant 4-cycles at distinct
/// energies; uniform measure, not ergodic.
struct TwoCycleSystem {
  FiniteMeasureSystem measure_system;
  System system;
  Mat hamiltonian;  // cycle-indicator energies, conserved by the map
};

TwoCycleSystem classical_two_cycle();

}  // namespace ergo

#endif  // ERGO_PHYSICS_HPP
