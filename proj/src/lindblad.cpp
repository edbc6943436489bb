#include "infogeom/lindblad.hpp"

#include <cmath>
#include <random>

namespace infogeom {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}  // namespace

// ------------------------------------------------------------- Lindbladian

Lindbladian::Lindbladian(Mat hamiltonian, std::vector<Mat> jumps, RVec rates)
    : h_(std::move(hamiltonian)), jumps_(std::move(jumps)),
      const_rates_(std::move(rates)) {
  if (const_rates_.size() != Eigen::Index(jumps_.size()))
    throw DimensionError("Lindbladian: one rate per jump required");
  validate();
}

Lindbladian::Lindbladian(Mat hamiltonian, std::vector<Mat> jumps,
                         std::function<RVec(double)> rates, Eigen::Index n_rates)
    : h_(std::move(hamiltonian)), jumps_(std::move(jumps)),
      rate_fn_(std::move(rates)) {
  if (n_rates != Eigen::Index(jumps_.size()))
    throw DimensionError("Lindbladian: one rate per jump required");
  validate();
}

void Lindbladian::validate() const {
  require_square(h_, "Lindbladian");
  if (!is_hermitian(h_, 1e-10)) throw Error("Lindbladian: H is not Hermitian");
  for (std::size_t a = 0; a < jumps_.size(); ++a) {
    if (jumps_[a].rows() != h_.rows() || jumps_[a].cols() != h_.cols())
      throw DimensionError("Lindbladian: jump dimension mismatch");
    if (std::abs(jumps_[a].trace()) > 1e-10)
      throw Error("Lindbladian: jump " + std::to_string(a) + " is not traceless");
    for (std::size_t b = 0; b <= a; ++b) {
      Cplx ip = (jumps_[b].adjoint() * jumps_[a]).trace();
      double target = (a == b) ? 1.0 : 0.0;
      if (std::abs(ip - target) > 1e-10)
        throw Error("Lindbladian: jumps are not orthonormal");
    }
  }
}

RVec Lindbladian::rates(double t) const {
  return rate_fn_ ? rate_fn_(t) : const_rates_;
}

SuperOperator gkls_superop(const Mat& h, const std::vector<Mat>& jumps,
                           const RVec& rates) {
  Eigen::Index d = h.rows();
  Mat id = Mat::Identity(d, d);
  Cplx mi(0, -1);
  Mat g = mi * (tensor(id, h) - tensor(h.transpose(), id));
  for (std::size_t a = 0; a < jumps.size(); ++a) {
    const Mat& j = jumps[a];
    Mat jj = j.adjoint() * j;
    g += rates(Eigen::Index(a)) *
         (tensor(j.conjugate(), j) - 0.5 * tensor(id, jj) -
          0.5 * tensor(jj.transpose(), id));
  }
  return SuperOperator(std::move(g), d);
}

SuperOperator Lindbladian::generator(double t) const {
  return gkls_superop(h_, jumps_, rates(t));
}

SuperOperator Lindbladian::hamiltonian_part() const {
  Eigen::Index d = dim();
  Mat id = Mat::Identity(d, d);
  Cplx mi(0, -1);
  return SuperOperator(mi * (tensor(id, h_) - tensor(h_.transpose(), id)), d);
}

SuperOperator Lindbladian::dissipator(double t) const {
  return generator(t) - hamiltonian_part();
}

Lindbladian Lindbladian::tensor_with_identity(Eigen::Index d_anc) const {
  Mat ida = Mat::Identity(d_anc, d_anc);
  Mat h_ext = tensor(h_, ida);
  std::vector<Mat> jumps_ext;
  double scale = std::sqrt(double(d_anc));
  for (const Mat& j : jumps_) jumps_ext.push_back(tensor(j, ida) / scale);
  double mult = double(d_anc);
  if (rate_fn_) {
    auto fn = rate_fn_;
    return Lindbladian(h_ext, jumps_ext,
                       [fn, mult](double t) { return RVec(mult * fn(t)); },
                       Eigen::Index(jumps_.size()));
  }
  return Lindbladian(h_ext, jumps_ext, RVec(mult * const_rates_));
}

// ------------------------------------------------------------- Gell-Mann

std::vector<Mat> gell_mann_basis(Eigen::Index d) {
  std::vector<Mat> basis;
  basis.reserve(d * d - 1);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = j + 1; k < d; ++k) {
      Mat sym = Mat::Zero(d, d);
      sym(j, k) = inv_sqrt2;
      sym(k, j) = inv_sqrt2;
      basis.push_back(sym);
      Mat asym = Mat::Zero(d, d);
      asym(j, k) = Cplx(0, -inv_sqrt2);
      asym(k, j) = Cplx(0, inv_sqrt2);
      basis.push_back(asym);
    }
  for (Eigen::Index l = 1; l < d; ++l) {
    Mat diag = Mat::Zero(d, d);
    double norm = std::sqrt(1.0 / double(l * (l + 1)));
    for (Eigen::Index j = 0; j < l; ++j) diag(j, j) = norm;
    diag(l, l) = -double(l) * norm;
    basis.push_back(diag);
  }
  return basis;
}

Lindbladian canonical_form(const SuperOperator& g) {
  Eigen::Index d = g.dim();
  if (!g.hermiticity_preserving(1e-8))
    throw Error("canonical_form: generator is not Hermiticity-preserving");
  if (!g.trace_annihilating(1e-8))
    throw Error("canonical_form: generator does not annihilate the trace");

  std::vector<Mat> basis = gell_mann_basis(d);
  basis.insert(basis.begin(), Mat::Identity(d, d) / std::sqrt(double(d)));
  Eigen::Index n = Eigen::Index(basis.size());

  // G = sum_kl q_kl (conj(F_l) (x) F_k); the F-tensor basis is orthonormal
  Mat q(n, n);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index l = 0; l < n; ++l)
      q(k, l) = (tensor(basis[l].conjugate(), basis[k]).adjoint() * g.matrix())
                    .trace();

  // split off the Hamiltonian part
  Mat b = Mat::Zero(d, d);
  for (Eigen::Index k = 1; k < n; ++k) b += q(k, 0) * basis[k];
  b /= std::sqrt(double(d));
  b += (q(0, 0) / (2.0 * double(d))) * Mat::Identity(d, d);
  Mat h = hermitian_part(Cplx(0, 0.5) * (b - b.adjoint()));
  h -= (h.trace() / double(d)) * Mat::Identity(d, d);

  Mat c = q.block(1, 1, n - 1, n - 1);
  SpectralDecomposition spec = eig_hermitian(c);
  std::vector<Mat> jumps;
  RVec rates(n - 1);
  for (Eigen::Index m = 0; m < n - 1; ++m) {
    Mat a = Mat::Zero(d, d);
    for (Eigen::Index k = 0; k < n - 1; ++k)
      a += spec.eigenvectors(k, m) * basis[k + 1];
    jumps.push_back(std::move(a));
    rates(m) = spec.eigenvalues(m);
  }
  return Lindbladian(std::move(h), std::move(jumps), std::move(rates));
}

// ------------------------------------------------------------- evolution

namespace {

CVec rk4_step(const std::function<Mat(double)>& gen_at, double t, double dt,
              const CVec& v, Eigen::Index /*d*/) {
  Mat g1 = gen_at(t);
  Mat g2 = gen_at(t + 0.5 * dt);
  Mat g3 = gen_at(t + dt);
  CVec k1 = g1 * v;
  CVec k2 = g2 * (v + 0.5 * dt * k1);
  CVec k3 = g2 * (v + 0.5 * dt * k2);
  CVec k4 = g3 * (v + dt * k3);
  return v + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

Trajectory evolve(const Lindbladian& lind, const DensityMatrix& rho0,
                  double total_time, double dt) {
  if (dt <= 0) throw Error("evolve: dt must be positive");
  Eigen::Index d = lind.dim();
  auto gen_at = [&](double t) { return lind.generator(t).matrix(); };

  Trajectory traj;
  std::size_t steps = std::size_t(std::round(total_time / dt));
  traj.times.reserve(steps + 1);
  traj.states.reserve(steps + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(rho0);

  CVec v = vectorize(rho0.matrix());
  for (std::size_t k = 0; k < steps; ++k) {
    double t = double(k) * dt;
    v = rk4_step(gen_at, t, dt, v, d);
    Mat m = hermitian_part(devectorize(v, d));
    double tr = m.trace().real();
    if (std::abs(tr - 1.0) > 1e-6)
      throw Error("evolve: trace drift " + std::to_string(tr - 1.0) +
                  ", reduce the step size");
    m /= tr;
    v = vectorize(m);
    traj.times.push_back(double(k + 1) * dt);
    traj.states.push_back(DensityMatrix(m));
  }
  return traj;
}

// ------------------------------------------------------------- Fisher flux

RVec flux_currents(const StandardMonotone& f, const std::vector<Mat>& jumps,
                   const DensityMatrix& pi_t, const Mat& drho_t) {
  if (!f.measure)
    throw UnsupportedMeasureError(
        "flux_currents: monotone '" + f.name +
        "' carries no dN measure; use the finite-difference fallback");
  pi_t.require_full_rank("flux_currents");
  Eigen::Index d = pi_t.dim();
  const Mat& u = pi_t.spectral().eigenvectors;
  const RVec& ev = pi_t.spectral().eigenvalues;

  Mat drho_e = u.adjoint() * drho_t * u;
  std::vector<Mat> jumps_e;
  jumps_e.reserve(jumps.size());
  for (const Mat& j : jumps) jumps_e.push_back(u.adjoint() * j * u);

  Eigen::Index na = Eigen::Index(jumps.size());
  auto integrand = [&](double s) {
    Mat bs(d, d), bs_dag(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) {
        bs(i, j) = drho_e(i, j) / (ev(i) + s * ev(j));
        bs_dag(i, j) = drho_e(i, j) / (ev(j) + s * ev(i));
      }
    RVec out(na);
    for (Eigen::Index a = 0; a < na; ++a) {
      Mat c1 = jumps_e[std::size_t(a)] * bs_dag - bs_dag * jumps_e[std::size_t(a)];
      Mat c2 = jumps_e[std::size_t(a)] * bs - bs * jumps_e[std::size_t(a)];
      double t1 = (ev.asDiagonal().toDenseMatrix().cast<Cplx>() *
                   (c1.adjoint() * c1)).trace().real();
      double t2 = (ev.asDiagonal().toDenseMatrix().cast<Cplx>() *
                   (c2.adjoint() * c2)).trace().real();
      out(a) = t1 + s * t2;
    }
    return out;
  };
  return -2.0 * measure_quadrature_vec(*f.measure, integrand, na);
}

double FluxReport::max_relative_flux_error(double scale_floor) const {
  double worst = 0;
  for (const FluxSample& s : samples) {
    if (!std::isfinite(s.fprime_fd)) continue;
    double denom = std::max(std::abs(s.fprime_fd), scale_floor);
    if (denom == 0) continue;
    worst = std::max(worst, std::abs(s.fprime_flux - s.fprime_fd) / denom);
  }
  return worst;
}

int FluxReport::fprime_sign_changes(double threshold) const {
  int count = 0;
  double prev = 0;
  for (const FluxSample& s : samples) {
    double v = s.fprime_flux;
    if (std::abs(v) <= threshold) continue;
    if (prev != 0 && v * prev < 0) ++count;
    prev = v;
  }
  return count;
}

namespace {

FluxReport assemble_flux_report(const StandardMonotone& f,
                                const std::vector<Mat>& jumps,
                                const std::function<RVec(double)>& rates,
                                const std::vector<double>& times,
                                const std::vector<DensityMatrix>& states,
                                const std::vector<Mat>& tangents) {
  FluxReport report;
  report.monotone = f.name;
  std::size_t n = times.size();
  report.samples.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    FluxSample& s = report.samples[k];
    s.t = times[k];
    s.fisher = fisher_information(f, states[k], tangents[k]);
    s.rates = rates(times[k]);
    s.currents = flux_currents(f, jumps, states[k], tangents[k]);
    s.fprime_flux = s.rates.dot(s.currents);
    s.fprime_fd = kNaN;
  }
  // five-point Richardson stencil on the stored series
  if (n >= 5) {
    double dt = times[1] - times[0];
    for (std::size_t k = 2; k + 2 < n; ++k) {
      double d1 = report.samples[k + 1].fisher - report.samples[k - 1].fisher;
      double d2 = report.samples[k + 2].fisher - report.samples[k - 2].fisher;
      report.samples[k].fprime_fd = (8.0 * d1 - d2) / (12.0 * dt);
    }
  }
  return report;
}

}  // namespace

FluxReport flux_report(const StandardMonotone& f, const Lindbladian& lind,
                       const DensityMatrix& pi0, const TangentVector& drho0,
                       double total_time, double dt) {
  Eigen::Index d = lind.dim();
  auto gen_at = [&](double t) { return lind.generator(t).matrix(); };

  std::size_t steps = std::size_t(std::round(total_time / dt));
  std::vector<double> times{0.0};
  std::vector<DensityMatrix> states{pi0};
  std::vector<Mat> tangents{drho0.matrix()};
  CVec vp = vectorize(pi0.matrix());
  CVec vd = vectorize(drho0.matrix());
  for (std::size_t k = 0; k < steps; ++k) {
    double t = double(k) * dt;
    vp = rk4_step(gen_at, t, dt, vp, d);
    vd = rk4_step(gen_at, t, dt, vd, d);
    Mat p = hermitian_part(devectorize(vp, d));
    double tr = p.trace().real();
    if (std::abs(tr - 1.0) > 1e-6) throw Error("flux_report: trace drift");
    p /= tr;
    vp = vectorize(p);
    Mat dr = hermitian_part(devectorize(vd, d));
    times.push_back(double(k + 1) * dt);
    states.push_back(DensityMatrix(p));
    tangents.push_back(std::move(dr));
  }
  auto rates = [&](double t) { return lind.rates(t); };
  return assemble_flux_report(f, lind.jumps(), rates, times, states, tangents);
}

FluxReport flux_report_family(const StandardMonotone& f, const std::vector<Mat>& jumps,
                              const std::function<RVec(double)>& rates,
                              const std::function<Mat(double)>& state,
                              const std::function<Mat(double)>& tangent,
                              double total_time, double dt) {
  std::size_t steps = std::size_t(std::round(total_time / dt));
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  std::vector<Mat> tangents;
  for (std::size_t k = 0; k <= steps; ++k) {
    double t = double(k) * dt;
    times.push_back(t);
    states.push_back(DensityMatrix(state(t)));
    tangents.push_back(tangent(t));
  }
  return assemble_flux_report(f, jumps, rates, times, states, tangents);
}

std::vector<std::pair<double, double>> fisher_trajectory(
    const StandardMonotone& f, const Lindbladian& lind, const DensityMatrix& pi0,
    const TangentVector& drho0, double total_time, double dt) {
  Eigen::Index d = lind.dim();
  auto gen_at = [&](double t) { return lind.generator(t).matrix(); };
  std::size_t steps = std::size_t(std::round(total_time / dt));
  std::vector<std::pair<double, double>> out;
  out.reserve(steps + 1);
  CVec vp = vectorize(pi0.matrix());
  CVec vd = vectorize(drho0.matrix());
  out.push_back({0.0, fisher_information(f, pi0, drho0.matrix())});
  for (std::size_t k = 0; k < steps; ++k) {
    double t = double(k) * dt;
    vp = rk4_step(gen_at, t, dt, vp, d);
    vd = rk4_step(gen_at, t, dt, vd, d);
    Mat p = hermitian_part(devectorize(vp, d));
    p /= p.trace().real();
    vp = vectorize(p);
    Mat dr = hermitian_part(devectorize(vd, d));
    out.push_back({double(k + 1) * dt,
                   fisher_information(f, DensityMatrix(p), dr)});
  }
  return out;
}

// ------------------------------------------------------------- Markov report

MarkovReport markov_report(const Lindbladian& lind, double total_time, double dt,
                           std::uint64_t seed) {
  MarkovReport report;
  report.min_rate = std::numeric_limits<double>::infinity();
  std::size_t steps = std::size_t(std::round(total_time / dt));
  for (std::size_t k = 0; k <= steps; ++k) {
    double t = double(k) * dt;
    RVec r = lind.rates(t);
    for (Eigen::Index a = 0; a < r.size(); ++a) {
      if (r(a) < report.min_rate) {
        report.min_rate = r(a);
        report.witness_time = t;
        report.witness_alpha = int(a);
      }
    }
  }
  if (report.min_rate >= -1e-9)
    report.verdict = MarkovReport::Verdict::Markovian;
  else if (report.min_rate < -1e-6)
    report.verdict = MarkovReport::Verdict::NonMarkovian;
  else
    report.verdict = MarkovReport::Verdict::Indeterminate;

  // Fisher side: trajectories on the system and on system (x) ancilla
  StandardMonotone f = bures();
  Eigen::Index d = lind.dim();
  Lindbladian ext = lind.tensor_with_identity(d);
  double coarse_dt = std::max(dt, total_time / 400.0);
  report.max_fisher_rate = -std::numeric_limits<double>::infinity();
  for (int rep = 0; rep < 3; ++rep) {
    for (int anc = 0; anc < 2; ++anc) {
      const Lindbladian& gen = anc ? ext : lind;
      Eigen::Index dd = anc ? d * d : d;
      DensityMatrix pi0 = random_density(dd, dd, seed + 101 * rep + anc);
      TangentVector dr0 = random_tangent(dd, seed + 977 * rep + 7 * anc);
      auto series = fisher_trajectory(f, gen, pi0, dr0, total_time, coarse_dt);
      for (std::size_t k = 1; k < series.size(); ++k) {
        double rate = (series[k].second - series[k - 1].second) /
                      (series[k].first - series[k - 1].first);
        double scale = std::max(std::abs(series[k].second), 1.0);
        if (rate / scale > report.max_fisher_rate) {
          report.max_fisher_rate = rate / scale;
          report.fisher_expansion_time = series[k].first;
        }
      }
    }
  }
  report.fisher_expansion_found = report.max_fisher_rate > 1e-8;
  return report;
}

// ------------------------------------------------------------- depolarizing

double DepolarizingFamily::lambda(double t) const {
  return markovian ? 1.0 - std::exp(-t) : 1.0 - std::exp(-t) * std::cos(2.0 * t);
}

double DepolarizingFamily::dlambda(double t) const {
  if (markovian) return std::exp(-t);
  return std::exp(-t) * (std::cos(2.0 * t) + 2.0 * std::sin(2.0 * t));
}

double DepolarizingFamily::gamma(double t) const {
  return dlambda(t) / (1.0 - lambda(t));
}

QuantumChannel DepolarizingFamily::channel(double t) const {
  return QuantumChannel::depolarizing(lambda(t));
}

Lindbladian DepolarizingFamily::generator() const {
  double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Mat sx{{Cplx(0, 0), Cplx(1, 0)}, {Cplx(1, 0), Cplx(0, 0)}};
  Mat sy{{Cplx(0, 0), Cplx(0, -1)}, {Cplx(0, 1), Cplx(0, 0)}};
  Mat sz{{Cplx(1, 0), Cplx(0, 0)}, {Cplx(0, 0), Cplx(-1, 0)}};
  std::vector<Mat> jumps{inv_sqrt2 * sx, inv_sqrt2 * sy, inv_sqrt2 * sz};
  auto self = *this;
  auto rates = [self](double t) {
    double g = self.gamma(t) / 2.0;
    RVec r(3);
    r << g, g, g;
    return r;
  };
  return Lindbladian(Mat::Zero(2, 2), jumps, rates, 3);
}

Mat DepolarizingFamily::state(double t, const Mat& rho0) const {
  double l = lambda(t);
  return (1.0 - l) * rho0 +
         (l * rho0.trace() / 2.0) * Mat::Identity(2, 2);
}

DepolarizingFamily depolarizing_family(const std::string& kind) {
  DepolarizingFamily fam;
  if (kind == "markov")
    fam.markovian = true;
  else if (kind == "nonmarkov")
    fam.markovian = false;
  else
    throw Error("depolarizing_family: kind must be markov or nonmarkov");
  return fam;
}

std::vector<double> nonmarkov_rate_roots(double horizon) {
  auto g = [](double t) {
    return std::cos(2.0 * t) + 2.0 * std::sin(2.0 * t);
  };
  std::vector<double> roots;
  const int grid = 4000;
  double prev_t = 0.0, prev_v = g(0.0);
  for (int k = 1; k <= grid; ++k) {
    double t = horizon * double(k) / grid;
    double v = g(t);
    if (prev_v == 0.0) roots.push_back(prev_t);
    if (prev_v * v < 0) {
      double lo = prev_t, hi = t;
      for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        (g(lo) * g(mid) <= 0 ? hi : lo) = mid;
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_t = t;
    prev_v = v;
  }
  return roots;
}

std::vector<double> nonmarkov_lambda_one_crossings(double horizon) {
  auto g = [](double t) { return std::exp(-t) * std::cos(2.0 * t); };
  std::vector<double> roots;
  const int grid = 4000;
  double prev_t = 0.0, prev_v = g(0.0);
  for (int k = 1; k <= grid; ++k) {
    double t = horizon * double(k) / grid;
    double v = g(t);
    if (prev_v * v < 0) {
      double lo = prev_t, hi = t;
      for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        (g(lo) * g(mid) <= 0 ? hi : lo) = mid;
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_t = t;
    prev_v = v;
  }
  return roots;
}

// ------------------------------------------------------------- classical side

RateMatrix::RateMatrix(RMat offdiag_rates) : a_(std::move(offdiag_rates)) {
  if (a_.rows() != a_.cols()) throw DimensionError("RateMatrix: square input required");
  a_.diagonal().setZero();
}

RateMatrix RateMatrix::from_matrix(const RMat& r) {
  if (r.rows() != r.cols()) throw DimensionError("RateMatrix: square input required");
  for (Eigen::Index j = 0; j < r.cols(); ++j)
    if (std::abs(r.col(j).sum()) > 1e-12 * std::max(1.0, r.norm()))
      throw Error("RateMatrix: column " + std::to_string(j) + " does not sum to zero");
  RMat a = r;
  a.diagonal().setZero();
  return RateMatrix(std::move(a));
}

RMat RateMatrix::matrix() const {
  RMat r = a_;
  for (Eigen::Index j = 0; j < r.cols(); ++j) r(j, j) = -a_.col(j).sum();
  return r;
}

bool RateMatrix::is_markov(double tolabs) const {
  return a_.minCoeff() >= -tolabs;
}

bool is_classical_markov(const std::function<RateMatrix(double)>& rt,
                         double total_time, double dt, double tolabs) {
  std::size_t steps = std::size_t(std::round(total_time / dt));
  for (std::size_t k = 0; k <= steps; ++k)
    if (!rt(double(k) * dt).is_markov(tolabs)) return false;
  return true;
}

ClassicalDbReport classical_db_check(const RateMatrix& r, const RVec& pi) {
  if (pi.size() != r.dim()) throw DimensionError("classical_db_check: size mismatch");
  if (pi.minCoeff() <= 0) throw Error("classical_db_check: pi must be strictly positive");
  ClassicalDbReport rep;
  for (Eigen::Index i = 0; i < r.dim(); ++i)
    for (Eigen::Index j = 0; j < r.dim(); ++j)
      rep.max_residual = std::max(
          rep.max_residual, std::abs(r.rate(i, j) * pi(j) - r.rate(j, i) * pi(i)));
  RMat m = r.matrix();
  rep.matrix_residual = (m * pi.asDiagonal().toDenseMatrix() -
                         pi.asDiagonal().toDenseMatrix() * m.transpose())
                            .norm();
  rep.holds = rep.max_residual < 1e-10 && rep.matrix_residual < 1e-10;
  return rep;
}

double trace_distance_derivative(const RateMatrix& r, const RVec& drho) {
  if (drho.size() != r.dim())
    throw DimensionError("trace_distance_derivative: size mismatch");
  RVec v_dot = r.matrix() * drho;
  double deriv = 0;
  for (Eigen::Index i = 0; i < drho.size(); ++i) {
    if (drho(i) != 0.0)
      deriv += (drho(i) > 0 ? 1.0 : -1.0) * v_dot(i);
    else
      deriv += std::abs(v_dot(i));  // kink of |.| at zero grows outward
  }
  return deriv;
}

TraceDistanceCounterexample trace_distance_counterexample() {
  TraceDistanceCounterexample out{RateMatrix(RMat::Zero(2, 2))};
  RMat a = RMat::Zero(2, 2);
  a(0, 1) = -0.3;  // a_{1<-2}
  a(1, 0) = 1.0;   // a_{2<-1}
  out.rates = RateMatrix(a);

  out.worst_traceless_derivative = -std::numeric_limits<double>::infinity();
  for (double v : {1.0, -1.0}) {
    RVec d(2);
    d << v, -v;
    out.worst_traceless_derivative =
        std::max(out.worst_traceless_derivative, trace_distance_derivative(out.rates, d));
  }

  // embed in d = 3 with a disconnected third level; the traceful qubit vector
  // (0, 1) becomes the traceless witness (0, 1, -1)
  RMat a3 = RMat::Zero(3, 3);
  a3.block(0, 0, 2, 2) = a;
  RateMatrix r3(a3);
  RVec w(3);
  w << 0.0, 1.0, -1.0;
  out.witness = w;
  out.embedded_witness_derivative = trace_distance_derivative(r3, w);
  return out;
}

// ------------------------------------------------------------- witness search

WitnessResult transpose_witness_search(const StandardMonotone& f, int max_trials,
                                       std::uint64_t seed) {
  WitnessResult res;
  QuantumChannel probe = QuantumChannel::transpose_channel(2).tensor_with_identity(2);
  const Eigen::Index dd = 4;
  for (int trial = 0; trial < max_trials; ++trial) {
    res.trials_used = trial + 1;
    // random pure state; Haar vectors are generically entangled
    Mat u = random_unitary(dd, seed + std::uint64_t(trial));
    CVec psi = u.col(0);
    Mat proj = psi * psi.adjoint();
    Mat mix = Mat::Identity(dd, dd) / double(dd);

    auto min_out_eig = [&](double p) {
      Mat rho = (1.0 - p) * proj + p * mix;
      return eig_hermitian(probe.apply(rho)).eigenvalues(0);
    };
    if (min_out_eig(0.0) > -1e-6) continue;  // not entangled enough to bias

    // bisect toward a small positive output eigenvalue
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (lo + hi);
      (min_out_eig(mid) <= 0 ? lo : hi) = mid;
    }
    double p = std::min(1.0, hi + 1e-4);  // just inside positivity
    double eta = min_out_eig(p);
    if (eta <= 0 || eta > 1e-2) continue;

    Mat rho_in = (1.0 - p) * proj + p * mix;
    Mat rho_out = probe.apply(rho_in);
    SpectralDecomposition so = eig_hermitian(rho_out);
    // perturbation commuting with the output, loaded on the small eigenvector
    RVec w = RVec::Constant(dd, -1.0 / double(dd - 1));
    w(0) = 1.0;
    Mat drho_out = so.eigenvectors * w.asDiagonal() * so.eigenvectors.adjoint();
    Mat drho_in = probe.apply(drho_out);  // transpose (x) id is its own inverse

    double f_in = fisher_information(f, DensityMatrix(rho_in), hermitian_part(drho_in));
    double f_out =
        fisher_information(f, DensityMatrix(rho_out), hermitian_part(drho_out));
    if (f_out > f_in) {
      res.found = true;
      res.expansion = f_out - f_in;
      res.state = rho_in;
      res.tangent = hermitian_part(drho_in);
      return res;
    }
  }
  return res;
}

}  // namespace infogeom
