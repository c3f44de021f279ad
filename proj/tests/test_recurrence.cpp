#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ergo/classical.hpp"
#include "ergo/physics.hpp"
#include "ergo/recurrence.hpp"
#include "helpers.hpp"

using namespace ergo;

namespace {

System cycle_system(int m) {
  std::vector<int> shift(m);
  for (int x = 0; x < m; ++x) shift[x] = (x + 1) % m;
  return embed(make_measure_system(std::vector<Rational>(m, Rational(1, m)), shift));
}

System pauli_x_system() {
  StarAlgebra alg({2});
  Mat h = Mat::Zero(2, 2);
  h(0, 1) = h(1, 0) = std::numbers::pi / 2.0;
  return make_system(alg, State::trace_state(alg), hamiltonian_step_map(alg, h, 1.0));
}

}  // namespace

TEST_CASE("identity dynamics admit every time") {
  StarAlgebra alg({2});
  const System sys = make_system(
      alg, State::trace_state(alg),
      superoperator_from_function(alg, [](const Mat& a) { return a; }));
  const Mat a = alg.basis_element(0);  // phi(A*A) = 1/2 > 1/4 = |phi(A)|^2
  const RecurrenceSet set = khintchine_set(sys, a, 0.1, 200);
  CHECK(set.indices.size() == 200);
  CHECK(set.max_gap == 1);
}

TEST_CASE("eight-atom cycle against the set-theoretic oracle") {
  const int m = 8;
  const System sys = cycle_system(m);
  const double eps = 1.0 / 8 - 1.0 / 64 - 1e-6;
  const Mat a = std::sqrt(8.0) * indicator(sys.alg, {0});
  const RecurrenceSet set = khintchine_set(sys, a, eps, 10000);

  // oracle: mu(A intersect T^-k A) over atom sets, scaled by the normalization
  std::vector<int> expected;
  for (int k = 1; k <= 10000; ++k) {
    // T^-k {0} = {(0 - k) mod 8}; intersect {0} nonempty iff 8 | k
    const double mu = (k % m == 0) ? 1.0 / m : 0.0;
    if (8.0 * mu > 1.0 / 8 - eps) expected.push_back(k);
  }
  CHECK(set.indices == expected);
  CHECK(set.max_gap == 8);

  // every admitted value clears the threshold strictly on re-evaluation
  for (int k : set.indices)
    CHECK(set.values[static_cast<std::size_t>(k - 1)] - set.threshold > 1e-12);
}

TEST_CASE("epsilon larger than the variance admits everything") {
  std::mt19937_64 rng(41);
  const System sys = example_2_5_7(0.3, 0.6);
  const Mat a = test::random_element(sys.alg, rng);
  const double slack = sys.phi.value(a.adjoint() * a).real() - std::norm(sys.phi.value(a));
  const RecurrenceSet set = khintchine_set(sys, a, slack + 1.0, 100);
  CHECK(set.indices.size() == 100);
}

TEST_CASE("spin autocorrelation keeps constant magnitude") {
  StarAlgebra alg({2});
  Mat h = Mat::Zero(2, 2);
  h(0, 0) = 1.0;
  h(1, 1) = -1.0;
  const System sys = make_system(alg, State::trace_state(alg), hamiltonian_step_map(alg, h, 1.0));
  const RecurrenceSet set = khintchine_set(sys, alg.basis_element(1), 0.1, 10000);
  CHECK(set.indices.size() == 10000);  // |phi(A* tau^k A)| = 1/2 for every k
  for (double v : set.values) CHECK(v == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("pair scan on a non-ergodic system can be empty and warns") {
  StarAlgebra alg(std::vector<int>(4, 1));
  const System sys = make_system(
      alg, State::trace_state(alg),
      superoperator_from_function(alg, [](const Mat& a) { return a; }));
  const Mat a = indicator(alg, {0});
  const Mat b = indicator(alg, {2});
  const RecurrenceSet set = khintchine_pair_set(sys, a, b, 0.03, 100);
  CHECK(set.hypothesis_warning);
  CHECK(set.indices.empty());
  CHECK(set.max_gap == 101);
}

TEST_CASE("pair scan on ergodic systems") {
  std::mt19937_64 rng(42);
  const System sys = example_2_5_7(0.0, 0.0);
  Mat a = test::random_element(sys.alg, rng);
  Mat b = test::random_element(sys.alg, rng);
  a(0, 0) = 2.0;  // keep phi(A) phi(B) clearly away from zero
  b(0, 0) = 2.0;
  const double target = std::abs(sys.phi.value(a) * sys.phi.value(b));
  REQUIRE(target > 0.1);
  const RecurrenceSet set = khintchine_pair_set(sys, a, b, 0.1 * target, 1000);
  CHECK_FALSE(set.hypothesis_warning);
  CHECK_FALSE(set.indices.empty());
  CHECK(set.max_gap <= 2);

  const int m = 9;
  const System cyc = cycle_system(m);
  const RecurrenceSet pairs = khintchine_pair_set(cyc, indicator(cyc.alg, {1}),
                                                  indicator(cyc.alg, {4}), 1.0 / (m * m), 500);
  CHECK_FALSE(pairs.hypothesis_warning);
  CHECK_FALSE(pairs.indices.empty());
  CHECK(pairs.max_gap <= m);
}

TEST_CASE("additive recurrence search") {
  StarAlgebra alg({2});
  const System idsys = make_system(
      alg, State::trace_state(alg),
      superoperator_from_function(alg, [](const Mat& a) { return a; }));
  CHECK(additive_recurrence_search(idsys, alg.basis_element(0), 10) == 1);

  CHECK(additive_recurrence_search(cycle_system(8), indicator(cycle_system(8).alg, {0}), 100) == 8);

  const System pauli = pauli_x_system();
  CHECK(additive_recurrence_search(pauli, pauli.alg.basis_element(0), 10) == 2);

  // hypothesis check rejects the non-homomorphic example map
  const System bent = example_2_5_7(0.5, 0.5);
  CHECK_THROWS_AS(additive_recurrence_search(bent, bent.alg.basis_element(0), 10),
                  HypothesisError);

  CHECK_THROWS_AS(additive_recurrence_search(idsys, alg.basis_element(1), 10), ValidationError);
}

TEST_CASE("search agrees with brute-force oracles") {
  // classical: first n with mu(S intersect T^-n S) > 0 via direct set chasing
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 3 + static_cast<int>(rng() % 14);
    std::vector<int> perm(m);
    for (int x = 0; x < m; ++x) perm[x] = x;
    std::shuffle(perm.begin(), perm.end(), rng);
    FiniteMeasureSystem fms =
        make_measure_system(std::vector<Rational>(m, Rational(1, m)), perm);
    const System sys = embed(fms);
    const int atom = static_cast<int>(rng() % m);

    int oracle = 0;
    for (int n = 1; n <= 100 && oracle == 0; ++n) {
      int x = atom;  // follow the forward orbit: T^n(atom) == atom ?
      for (int s = 0; s < n; ++s) x = perm[x];
      if (x == atom) oracle = n;
    }
    const auto found = additive_recurrence_search(sys, indicator(sys.alg, {atom}), 100);
    CHECK(found.value_or(0) == oracle);
  }

  // quantum: conjugate P directly by the unitary, no superoperator involved
  const System pauli = pauli_x_system();
  const Mat u = (cx(0.0, 1.0) * Mat{{0.0, 1.0}, {1.0, 0.0}}).eval();
  Mat p = pauli.alg.basis_element(0);
  Mat conj = p;
  int oracle = 0;
  for (int n = 1; n <= 10 && oracle == 0; ++n) {
    conj = u * conj * u.adjoint();
    if (pauli.phi.value(p * conj * p).real() > 1e-12) oracle = n;
  }
  CHECK(oracle == 2);
  CHECK(additive_recurrence_search(pauli, p, 10) == oracle);
}

TEST_CASE("additive witness families") {
  StarAlgebra alg({2});
  const State tr = State::trace_state(alg);
  CHECK(is_additive_witness(alg, tr, {alg.basis_element(0), alg.basis_element(3)}));
  CHECK(is_additive_witness(alg, tr, {alg.basis_element(0)}));

  StarAlgebra diag(std::vector<int>(4, 1));
  const State uniform = State::trace_state(diag);
  CHECK(is_additive_witness(diag, uniform,
                            {indicator(diag, {0}), indicator(diag, {1}), indicator(diag, {2})}));
  CHECK_THROWS_AS(is_additive_witness(alg, tr, {alg.basis_element(1)}), ValidationError);

  // faithful states are additive: random orthogonal families stay below one
  std::mt19937_64 rng(44);
  StarAlgebra big({4});
  for (int trial = 0; trial < 50; ++trial) {
    const State phi = test::random_density(big, rng);
    const Mat h = test::random_hermitian(big, rng);
    std::vector<Mat> family;
    for (const SpectralCluster& c : spectral_clusters(big, h)) family.push_back(c.projection);
    CHECK(is_additive_witness(big, phi, family));
  }
}

TEST_CASE("return probability scan") {
  StarAlgebra alg({2});
  Mat h = Mat::Zero(2, 2);
  h(0, 0) = 1.0;
  h(1, 1) = -1.0;

  // P commutes with H: the conditioned return probability is identically one
  const ReturnScanResult flat =
      return_probability_scan(alg, h, alg.basis_element(0), {0.0, 0.5, 1.0, 1.5}, 0.1, 20);
  for (const ReturnScanRow& row : flat.rows) {
    CHECK(row.n == 1);
    CHECK(row.p == doctest::Approx(1.0).epsilon(1e-12));
  }

  // P at 45 degrees: first-step probability follows cos^2 t
  Mat p(2, 2);
  p << 0.5, 0.5, 0.5, 0.5;
  std::vector<double> grid;
  for (int i = 0; i <= 40; ++i) grid.push_back(0.05 + i * 0.07);
  const ReturnScanResult scan = return_probability_scan(alg, h, p, grid, 0.05, 30);
  CHECK(scan.threshold == doctest::Approx(0.45).epsilon(1e-12));
  for (const ReturnScanRow& row : scan.rows) {
    if (row.n == 1) {
      const double c = std::cos(row.t);
      CHECK(row.p == doctest::Approx(c * c).epsilon(1e-9));
    }
  }
  CHECK(scan.max_jump_fine <= scan.max_jump_coarse + 1e-12);

  CHECK_THROWS_AS(return_probability_scan(alg, h, alg.zero(), {0.0}, 0.1, 10), ValidationError);
}
