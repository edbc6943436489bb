#pragma once

#include "infogeom/fisher.hpp"
#include "infogeom/linalg.hpp"
#include "infogeom/monotone.hpp"

namespace infogeom {

enum class DivergenceMethod { Coordinate, ClosedForm, Integral };

struct DivergenceResult {
  double value = 0;
  DivergenceMethod method = DivergenceMethod::ClosedForm;
  bool symmetric = false;
  bool infinite = false;
};

// Coordinate-formula contrast H_g = sum_ij rho_i g(sigma_j / rho_i) |<s_j|r_i>|^2.
// rho must be full rank; a rank-deficient sigma with g unbounded at 0 yields
// the infinite-result state instead of a floating-point infinity.
DivergenceResult contrast(const StandardConvex& g, const DensityMatrix& rho,
                          const DensityMatrix& sigma);

// ------------------------------------------------------- named divergences

DivergenceResult relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);
DivergenceResult alpha_divergence(double alpha, const DensityMatrix& rho,
                                  const DensityMatrix& sigma);
double renyi(double alpha, const DensityMatrix& rho, const DensityMatrix& sigma);
DivergenceResult wy_contrast(const DensityMatrix& rho, const DensityMatrix& sigma);
DivergenceResult bures_contrast(const DensityMatrix& rho, const DensityMatrix& sigma);
DivergenceResult harmonic_contrast(const DensityMatrix& rho, const DensityMatrix& sigma);
DivergenceResult sq_contrast(const DensityMatrix& rho, const DensityMatrix& sigma);
DivergenceResult quantum_info_variance(const DensityMatrix& rho,
                                       const DensityMatrix& sigma);

// chi^2_f(rho || sigma) = Tr[(rho - sigma) J_f^{-1}|rho [(rho - sigma)]].
DivergenceResult chi2(const StandardMonotone& f, const DensityMatrix& rho,
                      const DensityMatrix& sigma);

// ------------------------------------------------------- geometry

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);
double bures_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
double bures_length(const DensityMatrix& rho, const DensityMatrix& sigma);
double wy_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
DensityMatrix wy_geodesic_path(const DensityMatrix& rho, const DensityMatrix& sigma,
                               double t);

// (Delta l)^2 = (r0 + r1) - 2 sqrt(r0 r1) cos(Delta theta) for unnormalized
// endpoints r0 rho, r1 sigma.
double unnormalized_length_sq(double delta_theta, double r0, double r1);

// ------------------------------------------------------- ordering

struct OrderingReport {
  double lower = 0;   // symmetrized contrast for L(f_B)
  double value = 0;   // symmetrized contrast for the given g
  double upper = 0;   // symmetrized contrast for L(f_H)
  bool ok = false;    // lower <= value <= upper within tolerance
};
OrderingReport symmetrized_ordering_check(const StandardConvex& g,
                                          const DensityMatrix& rho,
                                          const DensityMatrix& sigma,
                                          double slack = 1e-10);

// ------------------------------------------------------- hypothesis testing

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

struct ChernoffResult {
  double s_star = 0.5;
  double xi = 0;
};
// Golden-section maximization of -log Tr[rho0^s rho1^{1-s}] over s in [0,1].
ChernoffResult chernoff_optimize(const DensityMatrix& rho0, const DensityMatrix& rho1);
// Local form (eps^2 / 8) F_WY at rho0 in direction drho.
double chernoff_local(const DensityMatrix& rho0, const Mat& drho, double eps);

}  // namespace infogeom
