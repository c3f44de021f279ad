#include "ergo/gns.hpp"

#include <algorithm>
#include <cmath>

namespace ergo {

namespace {

// Gram matrix over the matrix units.  For units E_ab and E_cd in the same
// block, E_ab* E_cd = delta_ac E_bd, so the entry is rho_{d b}; units in
// different blocks are orthogonal.
Mat gram_matrix(const StarAlgebra& alg, const State& phi) {
  const int D = alg.linear_dim();
  const Mat& rho = phi.weight();
  Mat g = Mat::Zero(D, D);
  for (int i = 0; i < D; ++i) {
    const auto ui = alg.unit_index(i);
    for (int j = 0; j < D; ++j) {
      const auto uj = alg.unit_index(j);
      if (ui.block != uj.block || ui.row != uj.row) continue;
      g(i, j) = rho(uj.col, ui.col);
    }
  }
  return g;
}

// Rotate the phase of each eigenvector so its largest-magnitude entry is
// real positive.  Ties broken by the first such entry.
void fix_phases(Mat& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Eigen::Index imax = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      const double m = std::abs(vectors(r, c));
      if (m > best * (1.0 + 1e-12)) {
        best = m;
        imax = r;
      }
    }
    if (best > 0.0) vectors.col(c) *= std::conj(vectors(imax, c)) / best;
  }
}

}  // namespace

double GnsSpace::seminorm_coords(const Vec& algebra_coords) const {
  const double s = (algebra_coords.adjoint() * gram * algebra_coords)(0).real();
  return std::sqrt(std::max(0.0, s));
}

Mat GnsSpace::left_multiplier(const Mat& a) const {
  const int D = alg.linear_dim();
  Mat l(D, D);
  for (int j = 0; j < D; ++j)
    l.col(j) = alg.to_coords(alg.project_to_blocks(a * alg.basis_element(j)));
  return l;
}

Mat GnsSpace::pi(const Mat& a) const {
  if (!alg.conforms(a)) throw ValidationError("element does not conform to block structure");
  return iota_map * left_multiplier(a) * iota_pinv;
}

GnsSpace gns_construct(const StarAlgebra& alg, const State& phi) {
  const int D = alg.linear_dim();
  Mat g = gram_matrix(alg, phi);
  g = 0.5 * (g + g.adjoint());

  Eigen::SelfAdjointEigenSolver<Mat> es(g);
  const double lmax = es.eigenvalues().cwiseAbs().maxCoeff();
  if (es.eigenvalues().minCoeff() < -tol::null_rel * std::max(1.0, lmax))
    throw ValidationError("state not positive");

  // Eigen returns ascending eigenvalues; flip to descending for stable,
  // reproducible coordinates, then pin each eigenvector's phase.
  Eigen::VectorXd evals = es.eigenvalues().reverse();
  Mat evecs = es.eigenvectors().rowwise().reverse();
  fix_phases(evecs);

  const double cut = tol::null_rel * std::max(1.0, lmax);
  int rank = 0;
  while (rank < D && evals(rank) > cut) ++rank;

  GnsSpace out{alg, phi, rank, g, Mat(), Mat(), Mat(), Vec()};
  Eigen::VectorXd keep = evals.head(rank).cwiseMax(0.0);
  out.iota_map = keep.cwiseSqrt().cast<cx>().asDiagonal() * evecs.leftCols(rank).adjoint();
  out.iota_pinv = evecs.leftCols(rank) * keep.cwiseSqrt().cwiseInverse().cast<cx>().asDiagonal();
  out.null_basis = evecs.rightCols(D - rank);
  out.omega = out.iota_map * alg.to_coords(alg.identity());
  return out;
}

double seminorm(const State& phi, const Mat& a) { return phi.seminorm(a); }

bool is_phi_total(const GnsSpace& gns, const std::vector<Mat>& gens) {
  if (gens.empty()) return gns.dim == 0;
  Mat span(gns.dim, static_cast<Eigen::Index>(gens.size()));
  for (std::size_t k = 0; k < gens.size(); ++k)
    span.col(static_cast<Eigen::Index>(k)) = gns.iota(gens[k]);
  Eigen::JacobiSVD<Mat> svd(span);
  const double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol::gns * std::max(1.0, smax)) ++rank;
  return rank == gns.dim;
}

}  // namespace ergo
