#ifndef ERGO_TEST_HELPERS_HPP
#define ERGO_TEST_HELPERS_HPP

#include <random>

#include "ergo/algebra.hpp"

namespace ergo::test {

inline Mat random_element(const StarAlgebra& alg, std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  Vec v(alg.linear_dim());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cx(dist(rng), dist(rng));
  return alg.from_coords(v);
}

inline Mat random_hermitian(const StarAlgebra& alg, std::mt19937_64& rng) {
  const Mat a = random_element(alg, rng);
  return 0.5 * (a + a.adjoint());
}

inline State random_density(const StarAlgebra& alg, std::mt19937_64& rng) {
  const Mat a = random_element(alg, rng);
  Mat w = alg.project_to_blocks(a * a.adjoint());
  w += 1e-3 * Mat::Identity(alg.ambient_dim(), alg.ambient_dim());
  w /= w.trace().real();
  return State::from_weight(alg, w);
}

inline Mat random_projection(const StarAlgebra& alg, std::mt19937_64& rng) {
  const Mat h = random_hermitian(alg, rng);
  Mat p = alg.zero();
  std::bernoulli_distribution coin;
  for (const SpectralCluster& c : spectral_clusters(alg, h))
    if (coin(rng)) p += c.projection;
  return p;
}

}  // namespace ergo::test

#endif
