#include "infogeom/fisher.hpp"

#include <cmath>

namespace infogeom {

FisherOperator::FisherOperator(DensityMatrix pi, StandardMonotone f)
    : pi_(std::move(pi)), f_(std::move(f)) {
  pi_.require_full_rank("FisherOperator");
  const RVec& ev = pi_.spectral().eigenvalues;
  Eigen::Index d = pi_.dim();
  kernel_.resize(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      kernel_(i, j) = f_.mean(ev(i), ev(j));
}

Mat FisherOperator::apply(const Mat& a) const {
  if (a.rows() != pi_.dim() || a.cols() != pi_.dim())
    throw DimensionError("FisherOperator::apply: dimension mismatch");
  const Mat& u = pi_.spectral().eigenvectors;
  Mat ap = u.adjoint() * a * u;
  ap = ap.cwiseProduct(kernel_.cast<Cplx>());
  return u * ap * u.adjoint();
}

Mat FisherOperator::apply_inverse(const Mat& a) const {
  if (a.rows() != pi_.dim() || a.cols() != pi_.dim())
    throw DimensionError("FisherOperator::apply_inverse: dimension mismatch");
  const Mat& u = pi_.spectral().eigenvectors;
  Mat ap = u.adjoint() * a * u;
  ap = ap.cwiseQuotient(kernel_.cast<Cplx>());
  return u * ap * u.adjoint();
}

Mat FisherOperator::apply_power(const Mat& a, double p) const {
  const Mat& u = pi_.spectral().eigenvectors;
  Mat ap = u.adjoint() * a * u;
  for (Eigen::Index i = 0; i < ap.rows(); ++i)
    for (Eigen::Index j = 0; j < ap.cols(); ++j)
      ap(i, j) *= std::pow(kernel_(i, j), p);
  return u * ap * u.adjoint();
}

SuperOperator FisherOperator::power_superoperator(double p) const {
  Eigen::Index d = pi_.dim();
  const Mat& u = pi_.spectral().eigenvectors;
  Mat w = tensor(u.conjugate(), u);  // vec(U X U^dag) = (conj(U) (x) U) vec(X)
  CVec diag(d * d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i)
      diag(i + d * j) = std::pow(kernel_(i, j), p);
  return SuperOperator(w * diag.asDiagonal() * w.adjoint(), d);
}

SuperOperator FisherOperator::as_superoperator(bool inverse) const {
  return power_superoperator(inverse ? -1.0 : 1.0);
}

FisherOperator::CpReport FisherOperator::is_cp() const {
  Eigen::SelfAdjointEigenSolver<RMat> s(kernel_);
  double mn = s.eigenvalues()(0);
  return {mn >= -1e-10, mn};
}

FisherOperator::CpReport FisherOperator::is_inverse_cp() const {
  Eigen::SelfAdjointEigenSolver<RMat> s(kernel_.cwiseInverse());
  double mn = s.eigenvalues()(0);
  return {mn >= -1e-10, mn};
}

double scalar_product(const StandardMonotone& f, const DensityMatrix& pi,
                      const Mat& a, const Mat& b) {
  pi.require_full_rank("scalar_product");
  if (a.rows() != pi.dim() || b.rows() != pi.dim())
    throw DimensionError("scalar_product: dimension mismatch");
  const Mat& u = pi.spectral().eigenvectors;
  const RVec& ev = pi.spectral().eigenvalues;
  Mat ap = u.adjoint() * a * u;
  Mat bp = u.adjoint() * b * u;
  Cplx acc(0, 0);
  for (Eigen::Index i = 0; i < ap.rows(); ++i)
    for (Eigen::Index j = 0; j < ap.cols(); ++j)
      acc += ap(i, j) * bp(j, i) / f.mean(ev(j), ev(i));
  return acc.real();
}

double fisher_information(const StandardMonotone& f, const DensityMatrix& pi,
                          const Mat& drho) {
  return scalar_product(f, pi, drho, drho);
}

Mat sld(const StandardMonotone& f, const DensityMatrix& pi, const Mat& drho) {
  FisherOperator jf(pi, f);
  return hermitian_part(jf.apply_inverse(drho));
}

double cramer_rao_bound(const StandardMonotone& f,
                        const std::function<DensityMatrix(double)>& family,
                        double theta0, double h) {
  Mat plus = family(theta0 + h).matrix();
  Mat minus = family(theta0 - h).matrix();
  Mat deriv = hermitian_part((plus - minus) / (2.0 * h));
  deriv -= (deriv.trace() / double(deriv.rows())) *
           Mat::Identity(deriv.rows(), deriv.cols());
  DensityMatrix pi = family(theta0);
  double info = fisher_information(f, pi, deriv);
  if (info < 1e-14)
    throw Error("cramer_rao_bound: parameter is unidentifiable (Fisher information " +
                std::to_string(info) + ")");
  return 1.0 / info;
}

DensityMatrix gibbs_state(const Mat& h, double beta) {
  SpectralDecomposition s = eig_hermitian(h);
  // shift by the ground energy before exponentiating
  double e0 = s.eigenvalues(0);
  RVec w = (-beta * (s.eigenvalues.array() - e0)).exp().matrix();
  double z = w.sum();
  Mat rho = s.eigenvectors * (w / z).asDiagonal() * s.eigenvectors.adjoint();
  return DensityMatrix(rho);
}

double log_partition_hessian(const Mat& h, const Mat& a, const Mat& b, double beta) {
  if (beta <= 0) throw Error("log_partition_hessian: beta must be positive");
  DensityMatrix pi = gibbs_state(h, beta);
  Eigen::Index d = h.rows();
  Mat id = Mat::Identity(d, d);
  Mat delta_a = a - (a * pi.matrix()).trace() * id;
  Mat delta_b = b - (b * pi.matrix()).trace() * id;
  FisherOperator jl(pi, kmb());
  Cplx val = (delta_a * jl.apply(delta_b)).trace();
  return beta * beta * val.real();
}

}  // namespace infogeom
