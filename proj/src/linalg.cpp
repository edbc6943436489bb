#include "infogeom/linalg.hpp"

#include <random>

namespace infogeom {

void require_square(const Mat& a, const char* who) {
  if (a.rows() != a.cols())
    throw DimensionError(std::string(who) + ": matrix is not square (" +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + ")");
}

void require_same_dim(const Mat& a, const Mat& b, const char* who) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError(std::string(who) + ": dimension mismatch");
}

bool is_hermitian(const Mat& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  double scale = std::max(a.norm(), 1e-300);
  return (a - a.adjoint()).norm() <= rel_tol * scale;
}

SpectralDecomposition eig_hermitian(const Mat& h) {
  require_square(h, "eig_hermitian");
  if (!h.allFinite()) throw Error("eig_hermitian: non-finite entries");
  Mat sym = hermitian_part(h);
  Eigen::SelfAdjointEigenSolver<Mat> solver(sym);
  if (solver.info() != Eigen::Success)
    throw ConvergenceError("eig_hermitian: eigensolver did not converge");
  return SpectralDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

Mat mat_func(const Mat& h, const std::function<double(double)>& fn) {
  SpectralDecomposition s = eig_hermitian(h);
  RVec vals(s.dim());
  for (Eigen::Index i = 0; i < s.dim(); ++i) vals(i) = fn(s.eigenvalues(i));
  return s.eigenvectors * vals.asDiagonal() * s.eigenvectors.adjoint();
}

Mat mat_sqrt(const Mat& h) {
  return mat_func(h, [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

Mat mat_log(const Mat& h) {
  SpectralDecomposition s = eig_hermitian(h);
  if (s.eigenvalues(0) <= tol::rank_eps)
    throw RankError("mat_log: matrix is singular (min eigenvalue " +
                    std::to_string(s.eigenvalues(0)) + ")");
  RVec vals = s.eigenvalues.array().log().matrix();
  return s.eigenvectors * vals.asDiagonal() * s.eigenvectors.adjoint();
}

Mat mat_pow(const Mat& h, double p) {
  SpectralDecomposition s = eig_hermitian(h);
  if (p < 0 && s.eigenvalues(0) <= tol::rank_eps)
    throw RankError("mat_pow: negative power of a singular matrix");
  RVec vals(s.dim());
  for (Eigen::Index i = 0; i < s.dim(); ++i)
    vals(i) = std::pow(std::max(s.eigenvalues(i), 0.0), p);
  return s.eigenvectors * vals.asDiagonal() * s.eigenvectors.adjoint();
}

Mat mat_cpow(const Mat& h, Cplx z) {
  SpectralDecomposition s = eig_hermitian(h);
  if (s.eigenvalues(0) <= tol::rank_eps && z.real() < 0)
    throw RankError("mat_cpow: negative-real power of a singular matrix");
  CVec vals(s.dim());
  for (Eigen::Index i = 0; i < s.dim(); ++i)
    vals(i) = std::exp(z * std::log(Cplx(std::max(s.eigenvalues(i), 0.0), 0.0)));
  return s.eigenvectors * vals.asDiagonal() * s.eigenvectors.adjoint();
}

// ---------------------------------------------------------------- states

DensityMatrix::DensityMatrix(const Mat& rho) {
  require_square(rho, "DensityMatrix");
  if (!rho.allFinite()) throw Error("DensityMatrix: non-finite entries");
  m_ = hermitian_part(rho);
  double tr = m_.trace().real();
  if (std::abs(tr - 1.0) > 1e-9)
    throw Error("DensityMatrix: trace " + std::to_string(tr) + " is not 1");
  m_ /= tr;  // absorb residual drift below the check threshold
  spec_ = eig_hermitian(m_);
  if (spec_.eigenvalues(0) < tol::psd_floor)
    throw RankError("DensityMatrix: negative eigenvalue " +
                    std::to_string(spec_.eigenvalues(0)));
  full_rank_ = spec_.eigenvalues(0) > tol::rank_eps;
}

void DensityMatrix::require_full_rank(const char* who) const {
  if (!full_rank_)
    throw RankError(std::string(who) + ": state is not full rank (min eigenvalue " +
                    std::to_string(min_eigenvalue()) + ")");
}

TangentVector::TangentVector(const Mat& a) {
  require_square(a, "TangentVector");
  if (!a.allFinite()) throw Error("TangentVector: non-finite entries");
  m_ = hermitian_part(a);
  if (std::abs(m_.trace().real()) > 1e-10 * std::max(1.0, m_.norm()))
    throw Error("TangentVector: nonzero trace " + std::to_string(m_.trace().real()));
  // project out the residual trace part
  m_ -= (m_.trace() / double(m_.rows())) * Mat::Identity(m_.rows(), m_.cols());
}

// ---------------------------------------------------------------- vectorization

CVec vectorize(const Mat& a) {
  return Eigen::Map<const CVec>(a.data(), a.size());
}

Mat devectorize(const CVec& v, Eigen::Index d) {
  if (v.size() != d * d) throw DimensionError("devectorize: size mismatch");
  return Eigen::Map<const Mat>(v.data(), d, d);
}

SuperOperator::SuperOperator(Mat m, Eigen::Index d) : m_(std::move(m)), d_(d) {
  if (m_.rows() != d * d || m_.cols() != d * d)
    throw DimensionError("SuperOperator: matrix must be d^2 x d^2");
}

SuperOperator SuperOperator::identity_op(Eigen::Index d) {
  return SuperOperator(Mat::Identity(d * d, d * d), d);
}

SuperOperator SuperOperator::zero(Eigen::Index d) {
  return SuperOperator(Mat::Zero(d * d, d * d), d);
}

Mat SuperOperator::apply(const Mat& x) const {
  if (x.rows() != d_ || x.cols() != d_)
    throw DimensionError("SuperOperator::apply: dimension mismatch");
  return devectorize(m_ * vectorize(x), d_);
}

SuperOperator SuperOperator::compose(const SuperOperator& rhs) const {
  if (d_ != rhs.d_) throw DimensionError("SuperOperator::compose: dimension mismatch");
  return SuperOperator(m_ * rhs.m_, d_);
}

SuperOperator SuperOperator::hs_adjoint() const {
  return SuperOperator(m_.adjoint(), d_);
}

SuperOperator SuperOperator::operator+(const SuperOperator& o) const {
  if (d_ != o.d_) throw DimensionError("SuperOperator::+: dimension mismatch");
  return SuperOperator(m_ + o.m_, d_);
}

SuperOperator SuperOperator::operator-(const SuperOperator& o) const {
  if (d_ != o.d_) throw DimensionError("SuperOperator::-: dimension mismatch");
  return SuperOperator(m_ - o.m_, d_);
}

SuperOperator SuperOperator::operator*(double s) const {
  return SuperOperator(m_ * s, d_);
}

bool SuperOperator::hermiticity_preserving(double tolabs) const {
  // G preserves hermiticity iff G(X^dag) = G(X)^dag on a basis.
  for (Eigen::Index i = 0; i < d_; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) {
      Mat e = Mat::Zero(d_, d_);
      e(i, j) = 1.0;
      Mat lhs = apply(Mat(e.adjoint()));
      Mat rhs = apply(e).adjoint();
      if ((lhs - rhs).norm() > tolabs * std::max(1.0, m_.norm())) return false;
    }
  return true;
}

bool SuperOperator::trace_annihilating(double tolabs) const {
  CVec id = vectorize(Mat::Identity(d_, d_));
  return (m_.adjoint() * id).norm() <= tolabs * std::max(1.0, m_.norm());
}

SuperOperator left_mult_superop(const Mat& rho) {
  require_square(rho, "left_mult_superop");
  Eigen::Index d = rho.rows();
  // vec(rho X) = (I (x) rho) vec(X) with column stacking
  Mat m = Mat::Zero(d * d, d * d);
  for (Eigen::Index j = 0; j < d; ++j)
    m.block(j * d, j * d, d, d) = rho;
  return SuperOperator(std::move(m), d);
}

SuperOperator right_mult_superop(const Mat& rho) {
  require_square(rho, "right_mult_superop");
  Eigen::Index d = rho.rows();
  // vec(X rho) = (rho^T (x) I) vec(X)
  Mat m = Mat::Zero(d * d, d * d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = 0; k < d; ++k)
      m.block(j * d, k * d, d, d) = rho(k, j) * Mat::Identity(d, d);
  return SuperOperator(std::move(m), d);
}

Mat sandwich_inverse(const SpectralDecomposition& sigma,
                     const SpectralDecomposition& rho, double s, const Mat& x) {
  if (sigma.dim() != rho.dim() || x.rows() != sigma.dim() || x.cols() != sigma.dim())
    throw DimensionError("sandwich_inverse: dimension mismatch");
  const Mat& us = sigma.eigenvectors;
  const Mat& ur = rho.eigenvectors;
  Mat xp = us.adjoint() * x * ur;
  Mat bp(xp.rows(), xp.cols());
  for (Eigen::Index i = 0; i < xp.rows(); ++i)
    for (Eigen::Index j = 0; j < xp.cols(); ++j) {
      double den = sigma.eigenvalues(i) + s * rho.eigenvalues(j);
      if (den < tol::denom_floor)
        throw SingularOperatorError("sandwich_inverse: denominator " +
                                    std::to_string(den) + " below floor");
      bp(i, j) = xp(i, j) / den;
    }
  return us * bp * ur.adjoint();
}

Mat sandwich_inverse(const DensityMatrix& sigma, const DensityMatrix& rho,
                     double s, const Mat& x) {
  if (s < 0) throw Error("sandwich_inverse: s must be >= 0");
  return sandwich_inverse(sigma.spectral(), rho.spectral(), s, x);
}

// ---------------------------------------------------------------- tensor algebra

Mat tensor(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat partial_trace(const Mat& a, Eigen::Index d_first, Eigen::Index d_second,
                  TraceSide which) {
  if (a.rows() != d_first * d_second || a.cols() != d_first * d_second)
    throw DimensionError("partial_trace: dimensions do not factor as declared");
  if (which == TraceSide::Second) {
    Mat out = Mat::Zero(d_first, d_first);
    for (Eigen::Index i = 0; i < d_first; ++i)
      for (Eigen::Index j = 0; j < d_first; ++j)
        for (Eigen::Index k = 0; k < d_second; ++k)
          out(i, j) += a(i * d_second + k, j * d_second + k);
    return out;
  }
  Mat out = Mat::Zero(d_second, d_second);
  for (Eigen::Index i = 0; i < d_second; ++i)
    for (Eigen::Index j = 0; j < d_second; ++j)
      for (Eigen::Index k = 0; k < d_first; ++k)
        out(i, j) += a(k * d_second + i, k * d_second + j);
  return out;
}

// ---------------------------------------------------------------- randoms

namespace {

Mat ginibre(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i)
      g(i, j) = Cplx(gauss(rng), gauss(rng));
  return g;
}

}  // namespace

DensityMatrix random_density(Eigen::Index d, Eigen::Index rank, std::uint64_t seed) {
  if (rank < 1 || rank > d) throw Error("random_density: rank out of range");
  std::mt19937_64 rng(seed);
  Mat g = ginibre(d, rank, rng);
  Mat rho = g * g.adjoint();
  rho /= rho.trace().real();
  if (rank == d) {
    rho = (1.0 - 1e-6) * rho + (1e-6 / double(d)) * Mat::Identity(d, d);
  }
  return DensityMatrix(rho);
}

TangentVector random_tangent(Eigen::Index d, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  Mat g = ginibre(d, d, rng);
  Mat h = hermitian_part(g);
  h -= (h.trace() / double(d)) * Mat::Identity(d, d);
  double n = h.norm();
  if (n < 1e-30) return random_tangent(d, seed + 1);
  return TangentVector(h / n);
}

Mat random_unitary(Eigen::Index d, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0xda3e39cb94b95bdbULL);
  Mat g = ginibre(d, d, rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix phases so the factorization is unique
  for (Eigen::Index i = 0; i < d; ++i) {
    Cplx rii = r(i, i);
    Cplx phase = (std::abs(rii) > 0) ? rii / std::abs(rii) : Cplx(1, 0);
    q.col(i) *= phase;
  }
  return q;
}

}  // namespace infogeom
