#pragma once

#include "infogeom/channel.hpp"
#include "infogeom/fisher.hpp"
#include "infogeom/linalg.hpp"
#include "infogeom/monotone.hpp"

namespace infogeom {

// Diagonal GKLS data: Hamiltonian, traceless Hilbert-Schmidt-orthonormal
// jumps, and (possibly time-dependent) real rates.
class Lindbladian {
 public:
  Lindbladian(Mat hamiltonian, std::vector<Mat> jumps, RVec rates);
  Lindbladian(Mat hamiltonian, std::vector<Mat> jumps,
              std::function<RVec(double)> rates, Eigen::Index n_rates);

  Eigen::Index dim() const { return h_.rows(); }
  const Mat& hamiltonian() const { return h_; }
  const std::vector<Mat>& jumps() const { return jumps_; }
  Eigen::Index n_jumps() const { return Eigen::Index(jumps_.size()); }
  bool time_dependent() const { return bool(rate_fn_); }
  RVec rates(double t) const;

  SuperOperator generator(double t = 0.0) const;
  SuperOperator hamiltonian_part() const;
  SuperOperator dissipator(double t = 0.0) const;

  // System generator extended trivially to system (x) ancilla.
  Lindbladian tensor_with_identity(Eigen::Index d_anc) const;

 private:
  void validate() const;
  Mat h_;
  std::vector<Mat> jumps_;
  RVec const_rates_;
  std::function<RVec(double)> rate_fn_;
};

// Builds the GKLS superoperator from explicit pieces.
SuperOperator gkls_superop(const Mat& h, const std::vector<Mat>& jumps,
                           const RVec& rates);

// Projects a Hermiticity-preserving, trace-annihilating generator onto the
// diagonal GKLS form (generalized Gell-Mann basis, fixed order).
Lindbladian canonical_form(const SuperOperator& g);

// Fixed-order traceless orthonormal Hermitian basis of dimension d^2 - 1.
std::vector<Mat> gell_mann_basis(Eigen::Index d);

// ------------------------------------------------------------- evolution

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
};

// Fixed-step RK4 on the vectorized master equation; re-hermitizes and
// renormalizes each step; throws on trace drift beyond 1e-6.
Trajectory evolve(const Lindbladian& lind, const DensityMatrix& rho0, double total_time,
                  double dt);

// ------------------------------------------------------------- Fisher flux

struct FluxSample {
  double t = 0;
  double fisher = 0;        // F_f at time t
  double fprime_flux = 0;   // sum_alpha lambda_alpha I_alpha
  double fprime_fd = 0;     // Richardson finite difference (NaN at the edges)
  RVec rates;
  RVec currents;
};

struct FluxReport {
  std::string monotone;
  std::vector<FluxSample> samples;
  double max_relative_flux_error(double scale_floor = 0.0) const;
  int fprime_sign_changes(double threshold = 0.0) const;
};

// Currents I_alpha at a single instant; requires f to carry a measure.
RVec flux_currents(const StandardMonotone& f, const std::vector<Mat>& jumps,
                   const DensityMatrix& pi_t, const Mat& drho_t);

// Trajectory-level report with both the analytic flux and the finite
// difference of the Fisher series. States are integrated with RK4.
FluxReport flux_report(const StandardMonotone& f, const Lindbladian& lind,
                       const DensityMatrix& pi0, const TangentVector& drho0,
                       double total_time, double dt);

// Same report on closed-form state/tangent curves (used by channel families
// whose generator has poles).
FluxReport flux_report_family(const StandardMonotone& f, const std::vector<Mat>& jumps,
                              const std::function<RVec(double)>& rates,
                              const std::function<Mat(double)>& state,
                              const std::function<Mat(double)>& tangent,
                              double total_time, double dt);

// Fisher information series along an evolution (no flux decomposition; works
// for monotones without a measure).
std::vector<std::pair<double, double>> fisher_trajectory(
    const StandardMonotone& f, const Lindbladian& lind, const DensityMatrix& pi0,
    const TangentVector& drho0, double total_time, double dt);

// ------------------------------------------------------------- Markov report

struct MarkovReport {
  enum class Verdict { Markovian, NonMarkovian, Indeterminate };
  Verdict verdict = Verdict::Indeterminate;
  double min_rate = 0;
  double witness_time = 0;
  int witness_alpha = -1;
  // Fisher side: largest F' seen over sampled trajectories incl. ancilla
  double max_fisher_rate = 0;
  bool fisher_expansion_found = false;
  double fisher_expansion_time = 0;
};

MarkovReport markov_report(const Lindbladian& lind, double total_time, double dt,
                           std::uint64_t seed = 7);

// ------------------------------------------------------------- depolarizing

// The two contraction schedules lambda_t = 1 - e^{-t} (Markovian) and
// lambda_t = 1 - e^{-t} cos(2t) (non-Markovian) on a qubit.
struct DepolarizingFamily {
  bool markovian = true;
  double lambda(double t) const;
  double dlambda(double t) const;
  // -d/dt log(1 - lambda_t); poles where lambda_t crosses 1
  double gamma(double t) const;
  QuantumChannel channel(double t) const;
  // jumps sigma_k / sqrt(2), rates gamma(t) / 2
  Lindbladian generator() const;
  Mat state(double t, const Mat& rho0) const;
};

DepolarizingFamily depolarizing_family(const std::string& kind);  // markov|nonmarkov

// Times in (0, horizon) where d/dt(e^{-t} cos 2t) = 0; bisection refined.
std::vector<double> nonmarkov_rate_roots(double horizon);
// Times in (0, horizon) where e^{-t} cos 2t = 0.
std::vector<double> nonmarkov_lambda_one_crossings(double horizon);

// ------------------------------------------------------------- classical side

// Column sums forced to zero: R = sum_{i != j} a_{i<-j} (E_ij - E_jj).
class RateMatrix {
 public:
  explicit RateMatrix(RMat offdiag_rates);  // diagonal entries are ignored
  static RateMatrix from_matrix(const RMat& r);  // checks column sums

  Eigen::Index dim() const { return a_.rows(); }
  double rate(Eigen::Index to, Eigen::Index from) const { return a_(to, from); }
  const RMat& rates() const { return a_; }  // a(i, j) = a_{i<-j}, zero diagonal
  RMat matrix() const;

  bool is_markov(double tolabs = 1e-12) const;

 private:
  RMat a_;
};

// All off-diagonal rates stay nonnegative along the sampled grid.
bool is_classical_markov(const std::function<RateMatrix(double)>& rt,
                         double total_time, double dt, double tolabs = 1e-12);

struct ClassicalDbReport {
  bool holds = false;
  double max_residual = 0;       // max |a_ij pi_j - a_ji pi_i|
  double matrix_residual = 0;    // || R J_pi - J_pi R^T ||
};
ClassicalDbReport classical_db_check(const RateMatrix& r, const RVec& pi);

// d/dt Tr|drho| under R for a classical vector drho (sign-sum formula).
double trace_distance_derivative(const RateMatrix& r, const RVec& drho);

struct TraceDistanceCounterexample {
  RateMatrix rates;                 // d = 2, a_{1<-2} < 0, a_{2<-1} > 0
  double worst_traceless_derivative = 0;  // max over sign patterns, must be <= 0
  double embedded_witness_derivative = 0; // growth of the d+1 embedding, > 0
  RVec witness;                           // the traceless 3d witness vector
};
TraceDistanceCounterexample trace_distance_counterexample();

// ------------------------------------------------------------- witness search

struct WitnessResult {
  bool found = false;
  int trials_used = 0;
  double expansion = 0;   // F_out - F_in > 0 when found
  Mat state;
  Mat tangent;
};

// Searches for Fisher expansion under transpose (x) identity on two qubits,
// biased toward states whose image has a small eigenvalue.
WitnessResult transpose_witness_search(const StandardMonotone& f, int max_trials,
                                       std::uint64_t seed);

}  // namespace infogeom
