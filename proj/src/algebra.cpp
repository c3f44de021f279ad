#include "ergo/algebra.hpp"

#include <algorithm>
#include <cmath>

namespace ergo {

StarAlgebra::StarAlgebra(std::vector<int> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw ValidationError("algebra needs at least one block");
  offsets_.reserve(blocks_.size());
  for (int d : blocks_) {
    if (d < 1) throw ValidationError("block dimension must be positive");
    offsets_.push_back(ambient_);
    ambient_ += d;
    dim_ += d * d;
  }
}

Mat StarAlgebra::identity() const { return Mat::Identity(ambient_, ambient_); }

StarAlgebra::UnitIndex StarAlgebra::unit_index(int j) const {
  if (j < 0 || j >= dim_) throw ValidationError("basis index out of range");
  int b = 0;
  while (j >= blocks_[b] * blocks_[b]) {
    j -= blocks_[b] * blocks_[b];
    ++b;
  }
  const int d = blocks_[b];
  return UnitIndex{b, offsets_[b] + j / d, offsets_[b] + j % d};
}

Mat StarAlgebra::basis_element(int j) const {
  const UnitIndex u = unit_index(j);
  Mat e = Mat::Zero(ambient_, ambient_);
  e(u.row, u.col) = 1.0;
  return e;
}

bool StarAlgebra::conforms(const Mat& a, double tolerance) const {
  if (a.rows() != ambient_ || a.cols() != ambient_) return false;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  Mat off = a - project_to_blocks(a);
  return off.cwiseAbs().maxCoeff() <= tolerance * scale;
}

Mat StarAlgebra::project_to_blocks(const Mat& a) const {
  Mat out = Mat::Zero(ambient_, ambient_);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const int off = offsets_[b];
    const int d = blocks_[b];
    out.block(off, off, d, d) = a.block(off, off, d, d);
  }
  return out;
}

Vec StarAlgebra::to_coords(const Mat& a) const {
  if (!conforms(a)) throw ValidationError("element does not conform to block structure");
  Vec v(dim_);
  int j = 0;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const int off = offsets_[b];
    const int d = blocks_[b];
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) v(j++) = a(off + r, off + c);
  }
  return v;
}

Mat StarAlgebra::from_coords(const Vec& v) const {
  if (v.size() != dim_) throw ValidationError("coordinate vector has wrong length");
  Mat a = Mat::Zero(ambient_, ambient_);
  int j = 0;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const int off = offsets_[b];
    const int d = blocks_[b];
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) a(off + r, off + c) = v(j++);
  }
  return a;
}

Mat adjoint(const Mat& a) { return a.adjoint(); }

Mat mul(const StarAlgebra& alg, const Mat& a, const Mat& b) {
  if (a.rows() != alg.ambient_dim() || b.rows() != alg.ambient_dim() ||
      a.cols() != a.rows() || b.cols() != b.rows())
    throw ValidationError("shape mismatch in product");
  return a * b;
}

bool is_hermitian(const Mat& a, double tolerance) {
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tolerance * scale;
}

bool is_projection(const Mat& p, double tolerance) {
  if (!is_hermitian(p, tolerance)) return false;
  const double scale = std::max(1.0, p.cwiseAbs().maxCoeff());
  return (p * p - p).cwiseAbs().maxCoeff() <= tolerance * std::max(1.0, scale * scale);
}

State State::trace_state(const StarAlgebra& alg) {
  const int n = alg.ambient_dim();
  return State(Mat::Identity(n, n) / static_cast<double>(n));
}

State State::vector_state(const StarAlgebra& alg, const Vec& x) {
  if (x.size() != alg.ambient_dim()) throw ValidationError("vector has wrong length");
  if (std::abs(x.norm() - 1.0) > tol::norm) throw ValidationError("vector state needs a unit vector");
  // Only the block-diagonal compression of x x* is seen by algebra elements.
  return State(alg.project_to_blocks(x * x.adjoint()));
}

State State::from_weight(const StarAlgebra& alg, const Mat& rho) {
  if (!alg.conforms(rho)) throw ValidationError("weight does not conform to block structure");
  if (!is_hermitian(rho)) throw ValidationError("weight is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (rho + rho.adjoint()));
  const double lmax = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  if (es.eigenvalues().minCoeff() < -tol::psd * lmax)
    throw ValidationError("state not positive");
  if (std::abs(rho.trace().real() - 1.0) > tol::norm || std::abs(rho.trace().imag()) > tol::norm)
    throw ValidationError("state not normalized");
  return State(alg.project_to_blocks(rho));
}

double State::seminorm(const Mat& a) const {
  const double s = value(a.adjoint() * a).real();
  return std::sqrt(std::max(0.0, s));
}

bool State::is_faithful(double tolerance) const {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (weight_ + weight_.adjoint()),
                                        Eigen::EigenvaluesOnly);
  const double lmax = es.eigenvalues().cwiseAbs().maxCoeff();
  return es.eigenvalues().minCoeff() > tolerance * std::max(1.0, lmax);
}

State luders_update(const StarAlgebra& alg, const State& omega, const Mat& p) {
  if (!alg.conforms(p) || !is_projection(p))
    throw ValidationError("conditioning element is not a projection in the algebra");
  const double prob = omega.value(p).real();
  if (prob <= tol::prob) throw HypothesisError("zero-probability conditioning");
  Mat rho = (p * omega.weight() * p) / prob;
  rho = 0.5 * (rho + rho.adjoint());
  return State::from_weight(alg, alg.project_to_blocks(rho));
}

std::vector<SpectralCluster> spectral_clusters(const StarAlgebra& alg, const Mat& h) {
  if (!alg.conforms(h)) throw ValidationError("element does not conform to block structure");
  if (!is_hermitian(h)) throw ValidationError("spectral decomposition needs a Hermitian element");

  struct EigPair {
    double value;
    Vec vector;  // ambient-sized
  };
  std::vector<EigPair> pairs;
  double radius = 0.0;
  for (std::size_t b = 0; b < alg.blocks().size(); ++b) {
    const int off = alg.block_offset(static_cast<int>(b));
    const int d = alg.blocks()[b];
    Mat hb = h.block(off, off, d, d);
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (hb + hb.adjoint()));
    for (int i = 0; i < d; ++i) {
      Vec v = Vec::Zero(alg.ambient_dim());
      v.segment(off, d) = es.eigenvectors().col(i);
      pairs.push_back({es.eigenvalues()(i), std::move(v)});
      radius = std::max(radius, std::abs(es.eigenvalues()(i)));
    }
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const EigPair& a, const EigPair& b) { return a.value < b.value; });

  const double merge = tol::cluster_rel * std::max(1.0, radius);
  std::vector<SpectralCluster> clusters;
  std::size_t i = 0;
  while (i < pairs.size()) {
    std::size_t j = i + 1;
    while (j < pairs.size() && pairs[j].value - pairs[j - 1].value <= merge) ++j;
    Mat proj = Mat::Zero(alg.ambient_dim(), alg.ambient_dim());
    double mean = 0.0;
    for (std::size_t k = i; k < j; ++k) {
      proj += pairs[k].vector * pairs[k].vector.adjoint();
      mean += pairs[k].value;
    }
    clusters.push_back({mean / static_cast<double>(j - i), static_cast<int>(j - i),
                        alg.project_to_blocks(proj)});
    i = j;
  }
  return clusters;
}

Mat spectral_projection(const StarAlgebra& alg, const Mat& h, double lo, double hi) {
  Mat p = Mat::Zero(alg.ambient_dim(), alg.ambient_dim());
  for (const auto& c : spectral_clusters(alg, h))
    if (c.energy >= lo && c.energy <= hi) p += c.projection;
  return p;
}

}  // namespace ergo
