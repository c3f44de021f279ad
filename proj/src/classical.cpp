#include "ergo/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ergo {

namespace {

void validate_map(int atoms, const std::vector<int>& map) {
  if (static_cast<int>(map.size()) != atoms)
    throw ValidationError("map table has wrong length");
  for (int target : map)
    if (target < 0 || target >= atoms) throw ValidationError("map table entry out of range");
}

}  // namespace

FiniteMeasureSystem make_measure_system(std::vector<double> weights,
                                        std::vector<int> map) {
  if (weights.empty()) throw ValidationError("need at least one atom");
  validate_map(static_cast<int>(weights.size()), map);
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw ValidationError("negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw ValidationError("weights must sum to one");
  return FiniteMeasureSystem{std::move(weights), std::nullopt, std::move(map)};
}

FiniteMeasureSystem make_measure_system(std::vector<Rational> weights,
                                        std::vector<int> map) {
  if (weights.empty()) throw ValidationError("need at least one atom");
  validate_map(static_cast<int>(weights.size()), map);
  Rational total(0);
  for (const Rational& w : weights) {
    if (w < Rational(0)) throw ValidationError("negative weight");
    total += w;
  }
  if (total != Rational(1)) throw ValidationError("weights must sum to one");
  std::vector<double> approx(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i)
    approx[i] = boost::rational_cast<double>(weights[i]);
  return FiniteMeasureSystem{std::move(approx), std::move(weights), std::move(map)};
}

double measure(const FiniteMeasureSystem& sys, const std::vector<int>& set) {
  if (sys.exact_weights) {
    Rational total(0);
    for (int a : set) {
      if (a < 0 || a >= sys.atoms()) throw ValidationError("atom index out of range");
      total += (*sys.exact_weights)[a];
    }
    return boost::rational_cast<double>(total);
  }
  double total = 0.0;
  for (int a : set) {
    if (a < 0 || a >= sys.atoms()) throw ValidationError("atom index out of range");
    total += sys.weights[a];
  }
  return total;
}

bool is_measure_preserving(const FiniteMeasureSystem& sys) {
  if (sys.exact_weights) {
    std::vector<Rational> preimage(sys.atoms(), Rational(0));
    for (int x = 0; x < sys.atoms(); ++x) preimage[sys.map[x]] += (*sys.exact_weights)[x];
    for (int a = 0; a < sys.atoms(); ++a)
      if (preimage[a] != (*sys.exact_weights)[a]) return false;
    return true;
  }
  std::vector<double> preimage(sys.atoms(), 0.0);
  for (int x = 0; x < sys.atoms(); ++x) preimage[sys.map[x]] += sys.weights[x];
  for (int a = 0; a < sys.atoms(); ++a)
    if (std::abs(preimage[a] - sys.weights[a]) > 1e-12) return false;
  return true;
}

System embed(const FiniteMeasureSystem& sys) {
  const int m = sys.atoms();
  // Per-atom preimage weights; an increase on any atom gives a set S with
  // mu(T^-1 S) > mu(S), so the embedded map would not be a contraction.
  std::vector<double> preimage(m, 0.0);
  for (int x = 0; x < m; ++x) preimage[sys.map[x]] += sys.weights[x];
  for (int a = 0; a < m; ++a)
    if (preimage[a] > sys.weights[a] + 1e-12)
      throw HypothesisError("measure-increasing map: embedding is not contractive");

  StarAlgebra alg(std::vector<int>(static_cast<std::size_t>(m), 1));
  Mat rho = Mat::Zero(m, m);
  for (int a = 0; a < m; ++a) rho(a, a) = sys.weights[a];
  State phi = State::from_weight(alg, rho);
  return make_system(alg, phi, classical_map_superoperator(alg, sys.map));
}

bool is_ergodic_classical(const FiniteMeasureSystem& sys) {
  if (!is_measure_preserving(sys))
    throw HypothesisError("map is not measure preserving");
  return is_ergodic(embed(sys)).ergodic;
}

double conditional_probability(const FiniteMeasureSystem& sys,
                               const std::vector<int>& a_set,
                               const std::vector<int>& b_set) {
  std::vector<char> in_b(sys.atoms(), 0);
  for (int b : b_set) {
    if (b < 0 || b >= sys.atoms()) throw ValidationError("atom index out of range");
    in_b[b] = 1;
  }
  std::vector<int> both;
  for (int a : a_set) {
    if (a < 0 || a >= sys.atoms()) throw ValidationError("atom index out of range");
    if (in_b[a]) both.push_back(a);
  }
  if (sys.exact_weights) {
    Rational pb(0), pab(0);
    for (int b : b_set) pb += (*sys.exact_weights)[b];
    for (int a : both) pab += (*sys.exact_weights)[a];
    if (pb == Rational(0)) throw HypothesisError("zero-probability conditioning");
    return boost::rational_cast<double>(pab / pb);
  }
  const double pb = measure(sys, b_set);
  if (pb <= tol::prob) throw HypothesisError("zero-probability conditioning");
  return measure(sys, both) / pb;
}

Mat indicator(const StarAlgebra& alg, const std::vector<int>& set) {
  if (alg.ambient_dim() != alg.linear_dim())
    throw ValidationError("indicators live on diagonal algebras");
  Mat chi = alg.zero();
  for (int a : set) {
    if (a < 0 || a >= alg.ambient_dim()) throw ValidationError("atom index out of range");
    chi(a, a) = 1.0;
  }
  return chi;
}

}  // namespace ergo
