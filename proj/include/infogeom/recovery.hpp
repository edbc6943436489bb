#pragma once

#include "infogeom/channel.hpp"
#include "infogeom/divergence.hpp"
#include "infogeom/fisher.hpp"

namespace infogeom {

// Superoperator form of J_{f'}|pi o Phi^dag o J_f^{-1}|Phi(pi).
class RecoveryMap {
 public:
  RecoveryMap(SuperOperator sop, std::string fprime, std::string f);

  const SuperOperator& superop() const { return sop_; }
  Mat apply(const Mat& x) const { return sop_.apply(x); }
  const std::string& fprime_name() const { return fprime_; }
  const std::string& f_name() const { return f_; }

  double trace_preservation_residual() const;
  // Choi positivity of the map itself.
  TriState cp_flag() const;
  double choi_min_eigenvalue() const;

 private:
  SuperOperator sop_;
  std::string fprime_, f_;
};

RecoveryMap petz_map(const StandardMonotone& fprime, const StandardMonotone& f,
                     const DensityMatrix& pi, const QuantumChannel& phi);

// Rotated recovery V_sigma(1/2 - it) o Phi^dag o V_{Phi(sigma)}(it - 1/2);
// CP by construction, equals the (sqrt, sqrt) map at t = 0.
RecoveryMap rotated_petz(const QuantumChannel& phi, const DensityMatrix& sigma,
                         double t);

// ------------------------------------------------------------ diagnostics

struct RecoverySpectrum {
  RVec eigenvalues;              // spectrum of recovery o channel, ascending
  double hermitizing_residual = 0;  // asymmetry of the similarity transform
  double unit_eigenvector_residual = 0;  // || M vec(pi) - vec(pi) ||
  bool within_unit_interval(double slack = 1e-9) const;
};
// Requires fprime <= f on the shared grid.
RecoverySpectrum recovery_spectrum(const StandardMonotone& fprime,
                                   const StandardMonotone& f, const DensityMatrix& pi,
                                   const QuantumChannel& phi);

// || P_{(f, f'), Phi(pi)}(P_{(f', f), pi}(Phi)) - Phi ||_F
double involution_residual(const StandardMonotone& fprime, const StandardMonotone& f,
                           const DensityMatrix& pi, const QuantumChannel& phi);

// || P_{(f',f),pi}(Phi_ts o Phi_s) -
//    P_{(f',f''),pi}(Phi_s) o P_{(f'',f),Phi_s(pi)}(Phi_ts) ||_F
double composition_residual(const StandardMonotone& fprime,
                            const StandardMonotone& fmid, const StandardMonotone& f,
                            const DensityMatrix& pi, const QuantumChannel& phi_s,
                            const QuantumChannel& phi_ts);

struct Chi2Gap {
  double lhs = 0;  // chi2_{f'}(rho||sigma) - chi2_f(Phi rho||Phi sigma)
  double mid = 0;  // F_{f',rho}((I - recovery o Phi)(Delta))
  double rhs = 0;  // trace-norm squared of the same operator
  double identity_residual = 0;  // lhs vs the Tr[Delta J^{-1} (...)] rewriting
  bool chain_holds(double slack = 1e-9) const {
    return lhs >= mid - slack && mid >= rhs - slack;
  }
};
Chi2Gap chi2_recovery_gap(const StandardMonotone& fprime, const StandardMonotone& f,
                          const DensityMatrix& rho, const DensityMatrix& sigma,
                          const QuantumChannel& phi);

struct RetrodictionSample {
  double t = 0;
  double fisher = 0;      // F_f of the evolved tangent at time t
  double retrieval = 0;   // quadratic-order retrieval divergence
  bool expansion = false; // F' > 0 at this instant
};
std::vector<RetrodictionSample> retrodiction_trajectory(
    const StandardMonotone& fprime, const StandardMonotone& f, const DensityMatrix& pi,
    const Mat& drho, const std::function<QuantumChannel(double)>& evolution,
    double total_time, double dt);

struct PetzSupremumReport {
  // two Hermitian-frame comparisons whose chain proves the domination
  double base_step_min_eig = 0;   // J_SQ^{1/2}(Y_SQ - Y_f)J_SQ^{1/2}
  double prior_step_min_eig = 0;  // Y_f^{1/2}(J_SQ - J_{f'})Y_f^{1/2}
  double min_eig() const { return std::min(base_step_min_eig, prior_step_min_eig); }
  double superop_difference_norm = 0;  // || M_P - M_{(f',f)} ||_F
};
// Requires f' <= sqrt <= f pointwise (the CP preconditions).
PetzSupremumReport petz_supremum_check(const DensityMatrix& pi,
                                       const QuantumChannel& phi,
                                       const StandardMonotone& fprime,
                                       const StandardMonotone& f);

}  // namespace infogeom
