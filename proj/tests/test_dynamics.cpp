#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "infogeom/detailed_balance.hpp"
#include "infogeom/lindblad.hpp"
#include "oracles.hpp"

using namespace infogeom;

namespace {

Mat pauli_x() { return Mat{{Cplx(0, 0), Cplx(1, 0)}, {Cplx(1, 0), Cplx(0, 0)}}; }
Mat pauli_z() { return Mat{{Cplx(1, 0), Cplx(0, 0)}, {Cplx(0, 0), Cplx(-1, 0)}}; }

Lindbladian amplitude_damping(double gamma) {
  Mat a = Mat::Zero(2, 2);
  a(0, 1) = 1.0;
  RVec r(1);
  r << gamma;
  return Lindbladian(Mat::Zero(2, 2), {a}, r);
}

}  // namespace

TEST_CASE("channel basics") {
  QuantumChannel id = QuantumChannel::identity(3);
  auto rep = id.is_cptp();
  CHECK(rep.trace_preserving);
  CHECK(rep.completely_positive);
  // Choi of the identity is the unnormalized maximally entangled projector
  Mat expected = Mat::Zero(9, 9);
  for (Eigen::Index i = 0; i < 3; ++i)
    for (Eigen::Index j = 0; j < 3; ++j) expected(i * 3 + i, j * 3 + j) = 1.0;
  CHECK((id.choi() - expected).norm() < 1e-14);

  QuantumChannel tr = QuantumChannel::transpose_channel(2);
  auto trep = tr.is_cptp();
  CHECK(trep.trace_preserving);
  CHECK(!trep.completely_positive);
  CHECK(trep.choi_min_eigenvalue < -0.5);
  CHECK(tr.positivity_probe(100, 3) > -1e-10);  // positive on all states

  QuantumChannel dep = QuantumChannel::depolarizing(0.5);
  CHECK(dep.is_cptp().completely_positive);
  DensityMatrix rho = random_density(2, 2, 4);
  Mat expect = 0.5 * rho.matrix() + 0.25 * Mat::Identity(2, 2);
  CHECK((dep.apply(rho.matrix()) - expect).norm() < 1e-12);
}

TEST_CASE("adjoint, composition, ancilla extension") {
  QuantumChannel phi = QuantumChannel::random(2, 3, 11);
  Mat a = random_tangent(2, 12).matrix();
  Mat b = random_tangent(2, 13).matrix();
  Cplx lhs = (a * phi.apply(b)).trace();
  Cplx rhs = (phi.adjoint().apply(a) * b).trace();
  CHECK(std::abs(lhs - rhs) < 1e-12);

  QuantumChannel psi = QuantumChannel::random(2, 2, 14);
  DensityMatrix rho = random_density(2, 2, 15);
  CHECK((phi.compose(psi).apply(rho.matrix()) - phi.apply(psi.apply(rho.matrix())))
            .norm() < 1e-12);

  QuantumChannel ext = phi.tensor_with_identity(2);
  DensityMatrix tau = random_density(2, 2, 16);
  Mat prod = tensor(rho.matrix(), tau.matrix());
  CHECK((ext.apply(prod) - tensor(phi.apply(rho.matrix()), tau.matrix())).norm() <
        1e-12);
  // the superoperator-backed path agrees with the Kraus path
  QuantumChannel ext2 =
      QuantumChannel::from_superoperator(phi.superop()).tensor_with_identity(2);
  CHECK((ext.superop().matrix() - ext2.superop().matrix()).norm() < 1e-12);
}

TEST_CASE("depolarizing family schedules") {
  DepolarizingFamily mk = depolarizing_family("markov");
  DepolarizingFamily nm = depolarizing_family("nonmarkov");
  CHECK(mk.lambda(0.0) == 0.0);
  CHECK(nm.lambda(0.0) == 0.0);
  CHECK((mk.channel(0.0).superop().matrix() - Mat::Identity(4, 4)).norm() < 1e-12);

  double prev = -1;
  bool monotone = true;
  for (double t = 0; t <= 5.0; t += 0.01) {
    if (mk.lambda(t) < prev - 1e-12) monotone = false;
    prev = mk.lambda(t);
  }
  CHECK(monotone);

  bool nonmonotone = false;
  for (double t = 0; t <= 4.0; t += 0.01)
    if (nm.dlambda(t) < -1e-6) nonmonotone = true;
  CHECK(nonmonotone);

  // stationary points of 1 - lambda sit at tan(2t) = -1/2
  std::vector<double> roots = nonmarkov_rate_roots(4.0);
  REQUIRE(roots.size() == 2);
  for (double r : roots) {
    CHECK(std::abs(nm.dlambda(r)) < 1e-10);
    CHECK(std::tan(2.0 * r) == doctest::Approx(-0.5).epsilon(1e-8));
  }
  // the first local maximum of 1 - lambda is the second stationary point
  double r = roots[1];
  double f_at = std::exp(-r) * std::cos(2 * r);
  CHECK(f_at > std::exp(-(r - 1e-2)) * std::cos(2 * (r - 1e-2)));
  CHECK(f_at > std::exp(-(r + 1e-2)) * std::cos(2 * (r + 1e-2)));

  std::vector<double> crossings = nonmarkov_lambda_one_crossings(4.0);
  REQUIRE(crossings.size() == 3);
  CHECK(crossings[0] == doctest::Approx(M_PI / 4).epsilon(1e-8));
}

TEST_CASE("pure hamiltonian generator has zero canonical rates") {
  Mat h = random_tangent(2, 21).matrix();
  Lindbladian lh(h, {}, RVec());
  Lindbladian canon = canonical_form(lh.generator());
  CHECK(canon.rates(0).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((canon.hamiltonian() - h).norm() < 1e-10);
}

TEST_CASE("amplitude damping canonical roundtrip") {
  Lindbladian ad = amplitude_damping(0.8);
  SuperOperator g = ad.generator();
  Lindbladian canon = canonical_form(g);
  CHECK((canon.generator().matrix() - g.matrix()).norm() < 1e-10);
  RVec r = canon.rates(0);
  std::vector<double> nonzero;
  for (Eigen::Index i = 0; i < r.size(); ++i)
    if (std::abs(r(i)) > 1e-10) nonzero.push_back(r(i));
  REQUIRE(nonzero.size() == 1);
  CHECK(nonzero[0] == doctest::Approx(0.8).epsilon(1e-10));
}

TEST_CASE("canonical roundtrip sweep") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int rep = 0; rep < 1000; ++rep) {
    Eigen::Index d = 2 + (rep % 2);  // up to 3
    std::vector<Mat> basis = gell_mann_basis(d);
    Mat h = random_tangent(d, 3000 + std::uint64_t(rep)).matrix();
    std::vector<Mat> jumps;
    RVec rates(Eigen::Index(basis.size()));
    for (std::size_t k = 0; k < basis.size(); ++k) {
      jumps.push_back(basis[k]);
      rates(Eigen::Index(k)) = uni(rng);  // signed rates allowed
    }
    Lindbladian lind(h, jumps, rates);
    SuperOperator g = lind.generator();
    Lindbladian canon = canonical_form(g);
    CHECK((canon.generator().matrix() - g.matrix()).norm() < 1e-8);
  }
}

TEST_CASE("depolarizing generator rates") {
  DepolarizingFamily nm = depolarizing_family("nonmarkov");
  Lindbladian gen = nm.generator();
  for (double t : {0.1, 0.5, 1.7, 3.1}) {
    double expect =
        0.5 * (1.0 + 2.0 * std::tan(2.0 * t));  // -d/dt log(e^{-t} cos 2t) / 2
    RVec r = gen.rates(t);
    for (Eigen::Index a = 0; a < 3; ++a)
      CHECK(r(a) == doctest::Approx(expect).epsilon(1e-10));
  }
  // the generator reproduces the family states away from the poles
  DensityMatrix rho0 = random_density(2, 2, 31);
  Trajectory traj = evolve(gen, rho0, 0.5, 1e-3);
  Mat closed = nm.state(0.5, rho0.matrix());
  CHECK((traj.states.back().matrix() - closed).norm() < 1e-6);
}

TEST_CASE("evolve") {
  DensityMatrix rho0 = random_density(2, 2, 41);
  Lindbladian zero(Mat::Zero(2, 2), {}, RVec());
  Trajectory still = evolve(zero, rho0, 1.0, 1e-2);
  CHECK((still.states.back().matrix() - rho0.matrix()).norm() < 1e-12);

  Mat excited = Mat::Zero(2, 2);
  excited(1, 1) = 1.0;
  double gamma = 0.7;
  Trajectory decay = evolve(amplitude_damping(gamma), DensityMatrix(excited), 1.0, 1e-3);
  double population = decay.states.back().matrix()(1, 1).real();
  CHECK(population == doctest::Approx(std::exp(-gamma)).epsilon(1e-6));
  CHECK(std::abs(decay.states.back().matrix().trace().real() - 1.0) < 1e-12);

  DepolarizingFamily mk = depolarizing_family("markov");
  Trajectory dep = evolve(mk.generator(), rho0, 1.0, 1e-3);
  CHECK((dep.states.back().matrix() - mk.state(1.0, rho0.matrix())).norm() < 1e-6);
}

TEST_CASE("flux currents: classical single jump") {
  Mat pim = Mat::Zero(2, 2);
  pim(0, 0) = 0.65;
  pim(1, 1) = 0.35;
  DensityMatrix pi(pim);
  Mat drho = 0.12 * pauli_z();
  Mat a = Mat::Zero(2, 2);
  a(0, 1) = 1.0;  // jump 0 <- 1
  double d0 = drho(0, 0).real() / pim(0, 0).real();
  double d1 = drho(1, 1).real() / pim(1, 1).real();
  double expect = -(d1 - d0) * (d1 - d0) * pim(1, 1).real();
  for (const std::string& name :
       {"bures", "kmb", "wy", "harmonic", "sqrt", "alpha:0.3", "heinz-lt:0.3"}) {
    StandardMonotone f = monotone_by_name(name);
    RVec cur = flux_currents(f, {a}, pi, drho);
    INFO(name);
    CHECK(cur(0) == doctest::Approx(expect).epsilon(1e-9));
  }
  CHECK_THROWS_AS(flux_currents(info_variance(), {a}, pi, drho),
                  UnsupportedMeasureError);
}

TEST_CASE("hamiltonian-only evolution leaves the fisher information flat") {
  Mat h = pauli_x() * 0.9;
  Lindbladian lh(h, {}, RVec());
  DensityMatrix pi0 = random_density(2, 2, 51);
  TangentVector dr0 = random_tangent(2, 52);
  auto series = fisher_trajectory(bures(), lh, pi0, dr0, 1.0, 1e-3);
  double first = series.front().second;
  for (const auto& [t, v] : series) CHECK(v == doctest::Approx(first).epsilon(1e-8));
}

TEST_CASE("depolarizing flux matches the closed form at the mixed point") {
  DepolarizingFamily mk = depolarizing_family("markov");
  Lindbladian gen = mk.generator();
  Mat drho0 = 0.1 * pauli_x() + 0.05 * pauli_z();
  auto state = [&](double) { return Mat(0.5 * Mat::Identity(2, 2)); };
  auto tangent = [&](double t) { return Mat((1.0 - mk.lambda(t)) * drho0); };
  auto rates = [&](double t) { return gen.rates(t); };
  FluxReport rep = flux_report_family(bures(), gen.jumps(), rates, state, tangent,
                                      1.0, 1e-3);
  double tr2 = (drho0 * drho0).trace().real();
  for (const FluxSample& s : rep.samples) {
    double lam = mk.lambda(s.t);
    CHECK(s.fisher == doctest::Approx(2.0 * (1 - lam) * (1 - lam) * tr2).epsilon(1e-10));
    double analytic = -4.0 * (1 - lam) * mk.dlambda(s.t) * tr2;
    CHECK(s.fprime_flux == doctest::Approx(analytic).epsilon(1e-8));
    for (Eigen::Index a = 0; a < s.currents.size(); ++a)
      CHECK(s.currents(a) <= 1e-12);
  }
}

TEST_CASE("flux against Richardson finite differences") {
  DensityMatrix pi0(Mat(0.5 * Mat::Identity(2, 2) + 0.2 * pauli_z()));
  TangentVector dr0(Mat(0.08 * pauli_x() + 0.06 * pauli_z()));
  for (const StandardMonotone& f : {bures(), kmb(), wigner_yanase(), harmonic()}) {
    FluxReport rep = flux_report(f, amplitude_damping(1.0), pi0, dr0, 1.0, 1e-3);
    INFO(f.name);
    CHECK(rep.max_relative_flux_error() < 1e-4);
  }
}

TEST_CASE("markov reports") {
  Lindbladian ad = amplitude_damping(0.5);
  MarkovReport rep = markov_report(ad, 2.0, 1e-2);
  CHECK(rep.verdict == MarkovReport::Verdict::Markovian);
  CHECK(!rep.fisher_expansion_found);

  // a rate that turns negative marks the evolution non-Markovian
  Mat a = Mat::Zero(2, 2);
  a(0, 1) = 1.0;
  Lindbladian nm(Mat::Zero(2, 2), {a},
                 [](double t) {
                   RVec r(1);
                   r << 0.5 - t;
                   return r;
                 },
                 1);
  MarkovReport rep2 = markov_report(nm, 1.0, 1e-2);
  CHECK(rep2.verdict == MarkovReport::Verdict::NonMarkovian);
  CHECK(rep2.min_rate == doctest::Approx(-0.5).epsilon(1e-10));
  CHECK(rep2.witness_time == doctest::Approx(1.0));
}

TEST_CASE("markov depolarizing contracts the fisher information strictly") {
  DepolarizingFamily mk = depolarizing_family("markov");
  Lindbladian gen = mk.generator();
  Mat drho0 = 0.08 * pauli_x() + 0.06 * pauli_z();
  Mat pi0 = 0.5 * Mat::Identity(2, 2) + 0.2 * pauli_z();
  auto state = [&](double t) { return mk.state(t, pi0); };
  auto tangent = [&](double t) { return Mat((1.0 - mk.lambda(t)) * drho0); };
  auto rates = [&](double t) { return gen.rates(t); };
  FluxReport rep =
      flux_report_family(bures(), gen.jumps(), rates, state, tangent, 5.0, 1e-2);
  for (std::size_t k = 1; k < rep.samples.size(); ++k)
    CHECK(rep.samples[k].fisher < rep.samples[k - 1].fisher);
  CHECK(rep.fprime_sign_changes() == 0);
}

TEST_CASE("nonmarkov depolarizing fisher-prime sign structure") {
  DepolarizingFamily nm = depolarizing_family("nonmarkov");
  Lindbladian gen = nm.generator();
  Mat drho0 = 0.08 * pauli_x() + 0.06 * pauli_z();
  Mat pi0 = 0.5 * Mat::Identity(2, 2) + 0.2 * pauli_z();
  auto state = [&](double t) { return nm.state(t, pi0); };
  auto tangent = [&](double t) { return Mat((1.0 - nm.lambda(t)) * drho0); };
  auto rates = [&](double t) { return gen.rates(t); };
  FluxReport rep =
      flux_report_family(bures(), gen.jumps(), rates, state, tangent, 4.0, 1e-3);
  int changes = rep.fprime_sign_changes();
  // the flux flips sign at every stationary point of 1 - lambda_t AND at
  // every crossing of lambda_t through 1 (where the fisher series touches 0)
  int stationary = int(nonmarkov_rate_roots(4.0).size());
  int crossings = int(nonmarkov_lambda_one_crossings(4.0).size());
  CHECK(changes == stationary + crossings);
  // flux equals the finite difference wherever the derivative is defined
  CHECK(rep.max_relative_flux_error(1e-6) < 1e-3);
}

TEST_CASE("classical rate matrices") {
  RMat a = RMat::Zero(3, 3);
  a(0, 1) = 0.4;
  a(1, 0) = 0.2;
  a(2, 1) = 0.1;
  RateMatrix r(a);
  RMat m = r.matrix();
  for (Eigen::Index j = 0; j < 3; ++j)
    CHECK(std::abs(m.col(j).sum()) < 1e-14);
  RateMatrix back = RateMatrix::from_matrix(m);
  CHECK((back.rates() - r.rates()).norm() < 1e-14);
  CHECK(r.is_markov());

  RMat bad = m;
  bad(0, 0) += 0.3;
  CHECK_THROWS_AS(RateMatrix::from_matrix(bad), Error);
}

TEST_CASE("classical detailed balance check") {
  // symmetric rates with the uniform stationary state
  RMat sym = RMat::Zero(3, 3);
  sym(0, 1) = sym(1, 0) = 0.4;
  sym(1, 2) = sym(2, 1) = 0.7;
  RVec uniform = RVec::Constant(3, 1.0 / 3.0);
  CHECK(classical_db_check(RateMatrix(sym), uniform).holds);

  RMat asym = sym;
  asym(0, 1) = 0.9;
  auto rep = classical_db_check(RateMatrix(asym), uniform);
  CHECK(!rep.holds);
  CHECK(rep.max_residual == doctest::Approx((0.9 - 0.4) / 3.0).epsilon(1e-12));

  // thermal rates a_ij pi_j = a_ji pi_i hold by construction
  RVec pi(3);
  pi << 0.5, 0.3, 0.2;
  RMat th = RMat::Zero(3, 3);
  th(0, 1) = 0.8;
  th(1, 0) = 0.8 * pi(1) / pi(0);
  th(1, 2) = 0.3;
  th(2, 1) = 0.3 * pi(2) / pi(1);
  CHECK(classical_db_check(RateMatrix(th), pi).holds);
}

TEST_CASE("trace-distance counterexample") {
  TraceDistanceCounterexample ce = trace_distance_counterexample();
  CHECK(ce.rates.rate(0, 1) == doctest::Approx(-0.3));
  CHECK(ce.rates.rate(1, 0) == doctest::Approx(1.0));
  CHECK(!ce.rates.is_markov());
  CHECK(ce.worst_traceless_derivative <= 0.0);
  CHECK(ce.embedded_witness_derivative == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(std::abs(ce.witness.sum()) < 1e-14);

  // sign-sum formula oracle on a strictly nonzero vector
  RVec v(2);
  v << 1.0, -1.0;
  RMat m = ce.rates.matrix();
  RVec vdot = m * v;
  double expect = vdot(0) - vdot(1);  // signs are (+, -)
  CHECK(trace_distance_derivative(ce.rates, v) == doctest::Approx(expect));
}

TEST_CASE("transpose witness search finds fisher expansion") {
  WitnessResult res = transpose_witness_search(bures(), 10000, 7);
  REQUIRE(res.found);
  CHECK(res.trials_used <= 10000);
  CHECK(res.expansion > 0);
  // recompute both sides from the stored witness
  QuantumChannel probe = QuantumChannel::transpose_channel(2).tensor_with_identity(2);
  DensityMatrix in(res.state);
  DensityMatrix out(probe.apply(res.state));
  double fin = fisher_information(bures(), in, res.tangent);
  double fout = fisher_information(bures(), out, hermitian_part(probe.apply(res.tangent)));
  CHECK(fout - fin == doctest::Approx(res.expansion).epsilon(1e-10));
}
