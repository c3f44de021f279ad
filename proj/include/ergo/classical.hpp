#ifndef ERGO_CLASSICAL_HPP
#define ERGO_CLASSICAL_HPP

#include <optional>
#include <vector>

#include <boost/rational.hpp>

#include "ergo/dynamics.hpp"
#include "ergo/types.hpp"

namespace ergo {

using Rational = boost::rational<long long>;

/// A finite measure-theoretic dynamical system: m atoms, a probability
/// vector, and a map T on atom indices.  Weights given as rationals are kept
/// exact alongside their floating images.
struct FiniteMeasureSystem {
  std::vector<double> weights;
  std::optional<std::vector<Rational>> exact_weights;
  std::vector<int> map;  // T, as a table of atom indices

  int atoms() const { return static_cast<int>(weights.size()); }
};

FiniteMeasureSystem make_measure_system(std::vector<double> weights,
                                        std::vector<int> map);
FiniteMeasureSystem make_measure_system(std::vector<Rational> weights,
                                        std::vector<int> map);

/// mu(S) for a set of atom indices; exact when rational weights are stored.
double measure(const FiniteMeasureSystem& sys, const std::vector<int>& set);

/// Per-atom check mu(T^-1{a}) = mu({a}), which at full measure is equivalent
/// to the set-wise condition mu(T^-1 S) <= mu(S) for every S.
bool is_measure_preserving(const FiniteMeasureSystem& sys);

/// Embedding into the diagonal algebra: phi = integration against mu,
/// tau(f) = f o T.  Throws HypothesisError on a measure-increasing map, for
/// which the embedded triple would fail the contraction inequality.
System embed(const FiniteMeasureSystem& sys);

/// Ergodicity of the embedded system.  Requires measure preservation.
bool is_ergodic_classical(const FiniteMeasureSystem& sys);

/// p(A|B) = mu(A and B) / mu(B); exact in rational arithmetic when possible.
/// Throws HypothesisError when mu(B) = 0.
double conditional_probability(const FiniteMeasureSystem& sys,
                               const std::vector<int>& a_set,
                               const std::vector<int>& b_set);

/// Indicator of a set of atoms as an element of the diagonal algebra.
Mat indicator(const StarAlgebra& alg, const std::vector<int>& set);

}  // namespace ergo

#endif  // ERGO_CLASSICAL_HPP
