#pragma once

#include "infogeom/linalg.hpp"
#include "infogeom/monotone.hpp"

namespace infogeom {

// J_f at a full-rank base point: entrywise kernel in the eigenbasis of pi,
// K_ij = mean(f, pi_i, pi_j).
class FisherOperator {
 public:
  FisherOperator(DensityMatrix pi, StandardMonotone f);

  const DensityMatrix& base_point() const { return pi_; }
  const StandardMonotone& monotone() const { return f_; }
  const RMat& kernel() const { return kernel_; }

  Mat apply(const Mat& a) const;
  Mat apply_inverse(const Mat& a) const;
  // Entrywise power of the kernel: J_f^p for p in {-1, -1/2, 1/2, ...}.
  Mat apply_power(const Mat& a, double p) const;

  SuperOperator as_superoperator(bool inverse = false) const;
  SuperOperator power_superoperator(double p) const;

  struct CpReport {
    bool cp = false;
    double min_eigenvalue = 0;
  };
  CpReport is_cp() const;           // J_f completely positive at this base point
  CpReport is_inverse_cp() const;   // J_f^{-1} completely positive

 private:
  DensityMatrix pi_;
  StandardMonotone f_;
  RMat kernel_;
};

// K_{f,pi}(A, B) = Tr[A J_f^{-1}|pi [B]] for Hermitian A, B.
double scalar_product(const StandardMonotone& f, const DensityMatrix& pi,
                      const Mat& a, const Mat& b);
double fisher_information(const StandardMonotone& f, const DensityMatrix& pi,
                          const Mat& drho);

// Generalized symmetric logarithmic derivative: solves J_f[L] = drho.
Mat sld(const StandardMonotone& f, const DensityMatrix& pi, const Mat& drho);

// Reciprocal Fisher information of a one-parameter family at theta0, with a
// central finite-difference derivative (step h).
double cramer_rao_bound(const StandardMonotone& f,
                        const std::function<DensityMatrix(double)>& family,
                        double theta0, double h = 1e-5);

// beta^2 Tr[D_pi(A) J_L|pi(H) [D_pi(B)]] with pi(H) the Gibbs state and
// D_pi(X) = X - Tr[X pi] 1; equals the mixed second derivative of log Z.
double log_partition_hessian(const Mat& h, const Mat& a, const Mat& b, double beta);

// Gibbs state exp(-beta H) / Z.
DensityMatrix gibbs_state(const Mat& h, double beta);

}  // namespace infogeom
