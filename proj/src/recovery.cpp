#include "infogeom/recovery.hpp"

#include <cmath>

namespace infogeom {

namespace {

void require_pointwise_leq(const StandardMonotone& lo, const StandardMonotone& hi,
                           const char* who) {
  if (!pointwise_leq(lo, hi, 1e-10))
    throw Error(std::string(who) + ": requires " + lo.name + " <= " + hi.name +
                " on the grid");
}

Mat choi_of(const SuperOperator& s) {
  Eigen::Index d = s.dim();
  Mat c = Mat::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      Mat e = Mat::Zero(d, d);
      e(i, j) = 1.0;
      Mat img = s.apply(e);
      for (Eigen::Index k = 0; k < d; ++k)
        for (Eigen::Index l = 0; l < d; ++l) c(i * d + k, j * d + l) = img(k, l);
    }
  return c;
}

}  // namespace

RecoveryMap::RecoveryMap(SuperOperator sop, std::string fprime, std::string f)
    : sop_(std::move(sop)), fprime_(std::move(fprime)), f_(std::move(f)) {}

double RecoveryMap::trace_preservation_residual() const {
  Eigen::Index d = sop_.dim();
  Mat id = Mat::Identity(d, d);
  return (sop_.hs_adjoint().apply(id) - id).norm();
}

double RecoveryMap::choi_min_eigenvalue() const {
  return eig_hermitian(choi_of(sop_)).eigenvalues(0);
}

TriState RecoveryMap::cp_flag() const {
  double mn = choi_min_eigenvalue();
  if (mn >= -1e-10) return TriState::Yes;
  return TriState::No;
}

RecoveryMap petz_map(const StandardMonotone& fprime, const StandardMonotone& f,
                     const DensityMatrix& pi, const QuantumChannel& phi) {
  pi.require_full_rank("petz_map");
  DensityMatrix out = phi.apply_state(pi);
  if (!out.full_rank())
    throw RankError("petz_map: Phi(pi) is not full rank; the construction assumes it");
  FisherOperator jp(pi, fprime);
  FisherOperator jo(out, f);
  SuperOperator sop = jp.as_superoperator(false)
                          .compose(phi.superop().hs_adjoint())
                          .compose(jo.as_superoperator(true));
  return RecoveryMap(std::move(sop), fprime.name, f.name);
}

RecoveryMap rotated_petz(const QuantumChannel& phi, const DensityMatrix& sigma,
                         double t) {
  sigma.require_full_rank("rotated_petz");
  DensityMatrix out = phi.apply_state(sigma);
  if (!out.full_rank()) throw RankError("rotated_petz: Phi(sigma) is not full rank");
  Mat p_in = mat_cpow(sigma.matrix(), Cplx(0.5, -t));
  Mat p_out = mat_cpow(out.matrix(), Cplx(-0.5, t));
  SuperOperator v_in(tensor(p_in.conjugate(), p_in), sigma.dim());
  SuperOperator v_out(tensor(p_out.conjugate(), p_out), sigma.dim());
  SuperOperator sop = v_in.compose(phi.superop().hs_adjoint()).compose(v_out);
  return RecoveryMap(std::move(sop), "rotated:t=" + std::to_string(t), "sqrt");
}

bool RecoverySpectrum::within_unit_interval(double slack) const {
  return eigenvalues.size() > 0 && eigenvalues(0) >= -slack &&
         eigenvalues(eigenvalues.size() - 1) <= 1.0 + slack;
}

RecoverySpectrum recovery_spectrum(const StandardMonotone& fprime,
                                   const StandardMonotone& f, const DensityMatrix& pi,
                                   const QuantumChannel& phi) {
  require_pointwise_leq(fprime, f, "recovery_spectrum");
  RecoveryMap rec = petz_map(fprime, f, pi, phi);
  SuperOperator m = rec.superop().compose(phi.superop());
  FisherOperator jp(pi, fprime);
  SuperOperator half = jp.power_superoperator(0.5);
  SuperOperator half_inv = jp.power_superoperator(-0.5);
  Mat sim = half_inv.matrix() * m.matrix() * half.matrix();

  RecoverySpectrum out;
  out.hermitizing_residual = (sim - sim.adjoint()).norm() / std::max(1.0, sim.norm());
  out.eigenvalues = eig_hermitian(sim).eigenvalues;
  CVec vpi = vectorize(pi.matrix());
  out.unit_eigenvector_residual = (m.matrix() * vpi - vpi).norm();
  return out;
}

double involution_residual(const StandardMonotone& fprime, const StandardMonotone& f,
                           const DensityMatrix& pi, const QuantumChannel& phi) {
  RecoveryMap rec = petz_map(fprime, f, pi, phi);
  DensityMatrix out = phi.apply_state(pi);
  DensityMatrix back(rec.apply(out.matrix()));  // recovers pi
  FisherOperator jf(out, f);
  FisherOperator jp(back, fprime);
  SuperOperator reversed = jf.as_superoperator(false)
                               .compose(rec.superop().hs_adjoint())
                               .compose(jp.as_superoperator(true));
  return (reversed.matrix() - phi.superop().matrix()).norm();
}

double composition_residual(const StandardMonotone& fprime,
                            const StandardMonotone& fmid, const StandardMonotone& f,
                            const DensityMatrix& pi, const QuantumChannel& phi_s,
                            const QuantumChannel& phi_ts) {
  QuantumChannel total = phi_ts.compose(phi_s);
  RecoveryMap whole = petz_map(fprime, f, pi, total);
  RecoveryMap first = petz_map(fprime, fmid, pi, phi_s);
  DensityMatrix mid_state = phi_s.apply_state(pi);
  RecoveryMap second = petz_map(fmid, f, mid_state, phi_ts);
  SuperOperator composed = first.superop().compose(second.superop());
  return (whole.superop().matrix() - composed.matrix()).norm();
}

Chi2Gap chi2_recovery_gap(const StandardMonotone& fprime, const StandardMonotone& f,
                          const DensityMatrix& rho, const DensityMatrix& sigma,
                          const QuantumChannel& phi) {
  require_pointwise_leq(fprime, f, "chi2_recovery_gap");
  Chi2Gap gap;
  DensityMatrix rho_out = phi.apply_state(rho);
  DensityMatrix sigma_out = phi.apply_state(sigma);
  gap.lhs = chi2(fprime, rho, sigma).value - chi2(f, rho_out, sigma_out).value;

  RecoveryMap rec = petz_map(fprime, f, rho, phi);
  Mat delta = rho.matrix() - sigma.matrix();
  Mat e = delta - rec.apply(phi.apply(delta));
  e = hermitian_part(e);
  gap.mid = fisher_information(fprime, rho, e);
  SpectralDecomposition se = eig_hermitian(e);
  double tn = se.eigenvalues.array().abs().sum();
  gap.rhs = tn * tn;

  double rewritten = scalar_product(fprime, rho, delta, e);
  gap.identity_residual = std::abs(rewritten - gap.lhs);
  return gap;
}

std::vector<RetrodictionSample> retrodiction_trajectory(
    const StandardMonotone& fprime, const StandardMonotone& f, const DensityMatrix& pi,
    const Mat& drho, const std::function<QuantumChannel(double)>& evolution,
    double total_time, double dt) {
  require_pointwise_leq(fprime, f, "retrodiction_trajectory");
  std::size_t steps = std::size_t(std::round(total_time / dt));
  std::vector<RetrodictionSample> series;
  series.reserve(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    double t = double(k) * dt;
    QuantumChannel phi = evolution(t);
    DensityMatrix out = phi.apply_state(pi);
    Mat drho_t = hermitian_part(phi.apply(drho));
    RetrodictionSample s;
    s.t = t;
    s.fisher = fisher_information(f, out, drho_t);
    RecoveryMap rec = petz_map(fprime, f, pi, phi);
    Mat e = hermitian_part(drho - rec.apply(drho_t));
    s.retrieval = 0.5 * fisher_information(fprime, pi, e);
    series.push_back(s);
  }
  for (std::size_t k = 1; k < series.size(); ++k)
    series[k].expansion = series[k].fisher > series[k - 1].fisher;
  return series;
}

PetzSupremumReport petz_supremum_check(const DensityMatrix& pi,
                                       const QuantumChannel& phi,
                                       const StandardMonotone& fprime,
                                       const StandardMonotone& f) {
  StandardMonotone sq = sqrt_monotone();
  require_pointwise_leq(fprime, sq, "petz_supremum_check");
  require_pointwise_leq(sq, f, "petz_supremum_check");
  DensityMatrix out = phi.apply_state(pi);
  FisherOperator jp_f(out, f);
  FisherOperator jp_sq(out, sq);
  FisherOperator jin_sq(pi, sq);
  FisherOperator jin_fp(pi, fprime);

  Mat phid = phi.superop().hs_adjoint().matrix();
  Mat y_f = phid * jp_f.as_superoperator(true).matrix() * phi.superop().matrix();
  Mat y_sq = phid * jp_sq.as_superoperator(true).matrix() * phi.superop().matrix();

  PetzSupremumReport rep;
  Mat half_sq = jin_sq.power_superoperator(0.5).matrix();
  Mat base = half_sq * (y_sq - y_f) * half_sq;
  rep.base_step_min_eig = eig_hermitian(base).eigenvalues(0);

  SpectralDecomposition sy = eig_hermitian(y_f);
  RVec w(sy.dim());
  for (Eigen::Index i = 0; i < sy.dim(); ++i)
    w(i) = std::sqrt(std::max(sy.eigenvalues(i), 0.0));
  Mat y_half = sy.eigenvectors * w.asDiagonal() * sy.eigenvectors.adjoint();
  Mat j_diff = jin_sq.as_superoperator(false).matrix() -
               jin_fp.as_superoperator(false).matrix();
  Mat prior = y_half * j_diff * y_half;
  rep.prior_step_min_eig = eig_hermitian(prior).eigenvalues(0);

  Mat m_p = jin_sq.as_superoperator(false).matrix() * y_sq;
  Mat m_g = jin_fp.as_superoperator(false).matrix() * y_f;
  rep.superop_difference_norm = (m_p - m_g).norm();
  return rep;
}

}  // namespace infogeom
