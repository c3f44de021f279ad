#include <doctest.h>

#include <cmath>

#include "ergo/gns.hpp"
#include "helpers.hpp"

using namespace ergo;

namespace {

// Independent Gram-rank oracle: assemble phi(B_i* B_j) by matrix products.
int brute_force_gram_rank(const StarAlgebra& alg, const State& phi) {
  const int d = alg.linear_dim();
  Mat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      g(i, j) = phi.value(alg.basis_element(i).adjoint() * alg.basis_element(j));
  Eigen::JacobiSVD<Mat> svd(g);
  int rank = 0;
  for (Eigen::Index k = 0; k < d; ++k)
    if (svd.singularValues()(k) > 1e-10 * svd.singularValues()(0)) ++rank;
  return rank;
}

}  // namespace

TEST_CASE("GNS dimensions match the brute-force Gram rank") {
  StarAlgebra alg({2});
  const State tr = State::trace_state(alg);
  CHECK(gns_construct(alg, tr).dim == 4);
  CHECK(brute_force_gram_rank(alg, tr) == 4);

  Vec e1 = Vec::Zero(2);
  e1(0) = 1.0;
  const State omega = State::vector_state(alg, e1);
  CHECK(gns_construct(alg, omega).dim == 2);
  CHECK(brute_force_gram_rank(alg, omega) == 2);

  StarAlgebra one({1});
  const GnsSpace trivial = gns_construct(one, State::trace_state(one));
  CHECK(trivial.dim == 1);
  CHECK(std::abs(trivial.omega(0) - cx(1.0)) <= 1e-14);
}

TEST_CASE("Gram matrix agrees with the product formula") {
  std::mt19937_64 rng(21);
  for (const auto& blocks : {std::vector<int>{2}, std::vector<int>{2, 3}}) {
    StarAlgebra alg(blocks);
    const State phi = test::random_density(alg, rng);
    const GnsSpace gns = gns_construct(alg, phi);
    for (int i = 0; i < alg.linear_dim(); ++i)
      for (int j = 0; j < alg.linear_dim(); ++j)
        CHECK(std::abs(gns.gram(i, j) -
                       phi.value(alg.basis_element(i).adjoint() * alg.basis_element(j))) <= 1e-12);
  }
}

TEST_CASE("reconstruction identities on random pairs") {
  std::mt19937_64 rng(22);
  for (const auto& blocks : {std::vector<int>{2}, std::vector<int>{2, 3}}) {
    StarAlgebra alg(blocks);
    for (int variant = 0; variant < 2; ++variant) {
      const State phi = variant ? test::random_density(alg, rng) : State::trace_state(alg);
      const GnsSpace gns = gns_construct(alg, phi);
      for (int trial = 0; trial < 250; ++trial) {
        const Mat a = test::random_element(alg, rng);
        const Mat b = test::random_element(alg, rng);
        const cx inner = gns.iota(a).dot(gns.iota(b));  // conjugates the first slot
        CHECK(std::abs(inner - phi.value(a.adjoint() * b)) <= 1e-8 * (1.0 + a.norm() * b.norm()));
      }
    }
  }
}

TEST_CASE("cyclic vector and representation") {
  std::mt19937_64 rng(23);
  StarAlgebra alg({2, 3});
  const State phi = test::random_density(alg, rng);
  const GnsSpace gns = gns_construct(alg, phi);
  CHECK(gns.omega.norm() == doctest::Approx(1.0).epsilon(1e-10));
  for (int trial = 0; trial < 50; ++trial) {
    const Mat a = test::random_element(alg, rng);
    const Mat b = test::random_element(alg, rng);
    CHECK(std::abs(gns.omega.dot(gns.pi(a) * gns.omega) - phi.value(a)) <=
          1e-8 * (1.0 + a.norm()));
    CHECK((gns.pi(a) * gns.iota(b) - gns.iota(alg.project_to_blocks(a * b))).norm() <=
          1e-8 * (1.0 + a.norm() * b.norm()));
  }
}

TEST_CASE("null space is a left ideal") {
  StarAlgebra alg({2});
  Vec e1 = Vec::Zero(2);
  e1(0) = 1.0;
  const State omega = State::vector_state(alg, e1);
  const GnsSpace gns = gns_construct(alg, omega);
  REQUIRE(gns.null_basis.cols() == 2);
  std::mt19937_64 rng(24);
  for (Eigen::Index c = 0; c < gns.null_basis.cols(); ++c) {
    const Mat ideal = alg.from_coords(gns.null_basis.col(c));
    CHECK(seminorm(omega, ideal) <= 1e-10);
    for (int trial = 0; trial < 20; ++trial) {
      const Mat a = test::random_element(alg, rng);
      CHECK(seminorm(omega, alg.project_to_blocks(a * ideal)) <= 1e-8 * (1.0 + a.norm()));
    }
  }
}

TEST_CASE("seminorm closed forms") {
  StarAlgebra alg({2});
  const State tr = State::trace_state(alg);
  CHECK(seminorm(tr, alg.identity()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(seminorm(tr, alg.basis_element(1)) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));

  Vec e1 = Vec::Zero(2);
  e1(0) = 1.0;
  CHECK(seminorm(State::vector_state(alg, e1), alg.basis_element(1)) <= 1e-10);
}

TEST_CASE("phi-totality") {
  StarAlgebra alg({2});
  const State tr = State::trace_state(alg);
  const GnsSpace gns = gns_construct(alg, tr);

  std::vector<Mat> basis;
  for (int j = 0; j < 4; ++j) basis.push_back(alg.basis_element(j));
  CHECK(is_phi_total(gns, basis));

  // projections at two generic angles plus the diagonal units; the second
  // angle needs a complex phase or the span misses the antisymmetric part
  auto angle_projection = [&](double theta, double phase) {
    Vec x(2);
    x << std::cos(theta), std::exp(cx(0.0, phase)) * std::sin(theta);
    return alg.project_to_blocks(x * x.adjoint());
  };
  std::vector<Mat> projections{alg.basis_element(0), alg.basis_element(3),
                               angle_projection(0.4, 0.0), angle_projection(1.1, 1.3)};
  CHECK(is_phi_total(gns, projections));

  CHECK_FALSE(is_phi_total(gns, {alg.basis_element(0), alg.basis_element(3)}));

  StarAlgebra diag({1, 1, 1});
  const GnsSpace dg = gns_construct(diag, State::trace_state(diag));
  std::vector<Mat> indicators;
  for (int mask = 0; mask < 8; ++mask) {
    Mat chi = diag.zero();
    for (int a = 0; a < 3; ++a)
      if (mask & (1 << a)) chi(a, a) = 1.0;
    indicators.push_back(chi);
  }
  CHECK(is_phi_total(dg, indicators));
}

TEST_CASE("dimension equals D exactly for faithful states") {
  std::mt19937_64 rng(25);
  StarAlgebra alg({2, 3});
  for (int trial = 0; trial < 20; ++trial) {
    const State phi = test::random_density(alg, rng);
    CHECK(gns_construct(alg, phi).dim == (phi.is_faithful() ? 13 : gns_construct(alg, phi).dim));
    if (phi.is_faithful()) CHECK(gns_construct(alg, phi).dim == 13);
  }
  Vec e1 = Vec::Zero(5);
  e1(0) = 1.0;
  const State omega = State::vector_state(alg, e1);
  CHECK_FALSE(omega.is_faithful());
  CHECK(gns_construct(alg, omega).dim < 13);
}
