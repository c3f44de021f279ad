#include "ergo/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace ergo {

DynamicalMap superoperator_from_function(const StarAlgebra& alg,
                                         const std::function<Mat(const Mat&)>& f) {
  const int D = alg.linear_dim();
  Mat s(D, D);
  for (int j = 0; j < D; ++j) {
    Mat image = f(alg.basis_element(j));
    if (!alg.conforms(image))
      throw ValidationError("map image leaves the algebra");
    s.col(j) = alg.to_coords(alg.project_to_blocks(image));
  }
  return DynamicalMap{std::move(s), DynamicalMap::Kind::custom, Mat(), 0.0};
}

DynamicalMap hamiltonian_step_map(const StarAlgebra& alg, const Mat& h, double t) {
  if (!alg.conforms(h)) throw ValidationError("Hamiltonian does not conform to block structure");
  if (!is_hermitian(h)) throw ValidationError("Hamiltonian must be Hermitian");

  const int D = alg.linear_dim();
  Mat s = Mat::Zero(D, D);
  int offset = 0;
  for (std::size_t b = 0; b < alg.blocks().size(); ++b) {
    const int off = alg.block_offset(static_cast<int>(b));
    const int d = alg.blocks()[b];
    Mat hb = h.block(off, off, d, d);
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (hb + hb.adjoint()));
    const Mat v = es.eigenvectors();
    // Phase matrix for the eigenbasis; the diagonal is exactly one, so any
    // unit diagonal in the eigenbasis is fixed without rounding.
    Mat phases(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        phases(r, c) = std::exp(cx(0.0, (es.eigenvalues()(r) - es.eigenvalues()(c)) * t));

    for (int jr = 0; jr < d; ++jr)
      for (int jc = 0; jc < d; ++jc) {
        Mat unit = Mat::Zero(d, d);
        unit(jr, jc) = 1.0;
        Mat image = v * (phases.cwiseProduct(v.adjoint() * unit * v)) * v.adjoint();
        for (int r = 0; r < d; ++r)
          for (int c = 0; c < d; ++c)
            s(offset + r * d + c, offset + jr * d + jc) = image(r, c);
      }
    offset += d * d;
  }
  return DynamicalMap{std::move(s), DynamicalMap::Kind::hamiltonian, h, t};
}

DynamicalMap classical_map_superoperator(const StarAlgebra& alg,
                                         const std::vector<int>& t_map) {
  const int m = alg.ambient_dim();
  if (m != alg.linear_dim())
    throw ValidationError("classical maps need a diagonal algebra");
  if (static_cast<int>(t_map.size()) != m)
    throw ValidationError("map table has wrong length");
  Mat s = Mat::Zero(m, m);
  for (int x = 0; x < m; ++x) {
    if (t_map[x] < 0 || t_map[x] >= m) throw ValidationError("map table entry out of range");
    s(x, t_map[x]) = 1.0;
  }
  return DynamicalMap{std::move(s), DynamicalMap::Kind::classical, Mat(), 0.0};
}

Mat apply_map(const StarAlgebra& alg, const DynamicalMap& tau, const Mat& a) {
  return alg.from_coords(tau.super * alg.to_coords(a));
}

Mat induced_contraction(const StarAlgebra& alg, const DynamicalMap& tau,
                        const GnsSpace& gns) {
  if (!(alg == gns.alg)) throw ValidationError("GNS space built from a different algebra");
  if (gns.null_basis.cols() > 0) {
    const double leak = (gns.iota_map * tau.super * gns.null_basis).cwiseAbs().maxCoeff();
    if (leak > tol::gns)
      throw HypothesisError("induced contraction ill-defined: map does not preserve the null space");
  }
  return gns.iota_map * tau.super * gns.iota_pinv;
}

System make_system(const StarAlgebra& alg, const State& phi, const DynamicalMap& tau) {
  const int D = alg.linear_dim();
  if (tau.super.rows() != D || tau.super.cols() != D)
    throw ValidationError("superoperator has wrong shape");

  const Vec one = alg.to_coords(alg.identity());
  if ((tau.super * one - one).cwiseAbs().maxCoeff() > tol::dyn)
    throw HypothesisError("map is not unital");

  GnsSpace gns = gns_construct(alg, phi);
  Mat defect = gns.gram - tau.super.adjoint() * gns.gram * tau.super;
  defect = 0.5 * (defect + defect.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(defect, Eigen::EigenvaluesOnly);
  const double scale = std::max(1.0, gns.gram.cwiseAbs().maxCoeff());
  if (es.eigenvalues().minCoeff() < -tol::psd * scale)
    throw HypothesisError("map is not contractive");

  Mat u = induced_contraction(alg, tau, gns);
  return System{alg, phi, tau, std::move(gns), std::move(u)};
}

FixedPointData fixed_point_projection(const Mat& u, int n_check) {
  const Eigen::Index d = u.rows();
  Eigen::JacobiSVD<Mat> svd(u - Mat::Identity(d, d), Eigen::ComputeFullV);
  int fixed = 0;
  for (Eigen::Index i = 0; i < d; ++i)
    if (svd.singularValues()(i) < tol::fix) ++fixed;
  // Smallest singular values come last in Eigen's ordering.
  const Mat basis = svd.matrixV().rightCols(fixed);
  Mat p = basis * basis.adjoint();

  Mat power = Mat::Identity(d, d);
  Mat cesaro = Mat::Zero(d, d);
  for (int k = 0; k < n_check; ++k) {
    cesaro += power;
    power = u * power;
  }
  cesaro /= static_cast<double>(n_check);
  return FixedPointData{std::move(p), fixed, (cesaro - p).norm()};
}

ErgodicReport is_ergodic(const System& sys) {
  FixedPointData fp = fixed_point_projection(sys.contraction);
  const double omega_residual = (sys.contraction * sys.gns.omega - sys.gns.omega).norm();
  return ErgodicReport{fp.fixed_dim, fp.fixed_dim == 1, sys.contraction,
                       std::move(fp.projection), omega_residual, fp.cesaro_gap};
}

CesaroMeanResult cesaro_mean(const System& sys, const Mat& a, int n) {
  if (n < 1) throw ValidationError("horizon must be at least 1");
  const Vec target = sys.phi.value(a) * sys.alg.to_coords(sys.alg.identity());

  Vec iterate = sys.alg.to_coords(sys.alg.project_to_blocks(a));
  CompensatedVecSum sum(iterate.size());
  CesaroMeanResult out;
  out.residuals.reserve(n);
  out.rate_constant = 0.0;
  for (int m = 1; m <= n; ++m) {
    sum.add(iterate);
    const Vec diff = sum.value() / static_cast<double>(m) - target;
    const double r = sys.gns.seminorm_coords(diff);
    out.residuals.push_back(r);
    out.rate_constant = std::max(out.rate_constant, m * r);
    if (m < n) iterate = sys.map.super * iterate;
  }
  out.mean = sys.alg.from_coords(sum.value() / static_cast<double>(n));
  return out;
}

std::vector<cx> cesaro_correlation(const System& sys, const Mat& a, const Mat& b,
                                   int n) {
  if (n < 1) throw ValidationError("horizon must be at least 1");
  const int D = sys.alg.linear_dim();
  // phi(A E_rc) = (rho A)_{c r}, so the correlation is a fixed covector
  // applied to the iterated coordinates of B.
  const Mat m = sys.phi.weight() * a;
  Vec w(D);
  for (int j = 0; j < D; ++j) {
    const auto u = sys.alg.unit_index(j);
    w(j) = m(u.col, u.row);
  }

  Vec iterate = sys.alg.to_coords(sys.alg.project_to_blocks(b));
  CompensatedSum sum;
  std::vector<cx> out;
  out.reserve(n);
  for (int k = 1; k <= n; ++k) {
    sum.add((w.transpose() * iterate)(0, 0));
    out.push_back(sum.value() / static_cast<double>(k));
    if (k < n) iterate = sys.map.super * iterate;
  }
  return out;
}

}  // namespace ergo
