#include "infogeom/detailed_balance.hpp"

#include <cmath>

namespace infogeom {

namespace {

SuperOperator hamiltonian_superop(const Mat& h) {
  Eigen::Index d = h.rows();
  Mat id = Mat::Identity(d, d);
  Cplx mi(0, -1);
  return SuperOperator(mi * (tensor(id, h) - tensor(h.transpose(), id)), d);
}

double comm_norm(const Mat& a, const Mat& b) { return (a * b - b * a).norm(); }

void require_nondegenerate(const DensityMatrix& pi, const char* who) {
  const RVec& ev = pi.spectral().eigenvalues;
  for (Eigen::Index i = 0; i + 1 < ev.size(); ++i)
    if (ev(i + 1) - ev(i) < 1e-9)
      throw Error(std::string(who) + ": degenerate pi spectrum is unsupported");
}

bool omega_close(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

// Matrix elements C[g][d](a, b) = <g| L(E_ab) |d> of a map in the pi eigenbasis.
struct ElementTensor {
  Eigen::Index d;
  std::vector<Mat> images;  // images[a + d*b] = L(E_ab) in the eigenbasis
  Cplx at(Eigen::Index g, Eigen::Index a, Eigen::Index dl, Eigen::Index b) const {
    return images[std::size_t(a + d * b)](g, dl);
  }
};

ElementTensor element_tensor(const SuperOperator& g, const DensityMatrix& pi) {
  Eigen::Index d = g.dim();
  const Mat& u = pi.spectral().eigenvectors;
  ElementTensor t;
  t.d = d;
  t.images.reserve(std::size_t(d * d));
  for (Eigen::Index b = 0; b < d; ++b)
    for (Eigen::Index a = 0; a < d; ++a) {
      Mat e = u.col(a) * u.col(b).adjoint();
      t.images.push_back(u.adjoint() * g.apply(e) * u);
    }
  return t;
}

}  // namespace

SuperOperator alicki_adjoint(const SuperOperator& o, const DensityMatrix& pi) {
  pi.require_full_rank("alicki_adjoint");
  SuperOperator r = right_mult_superop(pi.matrix());
  Mat pinv = pi.spectral().eigenvectors *
             pi.spectral().eigenvalues.cwiseInverse().asDiagonal() *
             pi.spectral().eigenvectors.adjoint();
  SuperOperator rinv = right_mult_superop(pinv);
  return rinv.compose(o.hs_adjoint()).compose(r);
}

SuperOperator fisher_adjoint(const SuperOperator& o, const DensityMatrix& pi,
                             const StandardMonotone& f) {
  FisherOperator jf(pi, f);
  return jf.as_superoperator(false).compose(o.hs_adjoint()).compose(
      jf.as_superoperator(true));
}

double modular_commutator_norm(const SuperOperator& g, const DensityMatrix& pi) {
  pi.require_full_rank("modular_commutator_norm");
  Mat pinv = pi.spectral().eigenvectors *
             pi.spectral().eigenvalues.cwiseInverse().asDiagonal() *
             pi.spectral().eigenvectors.adjoint();
  Mat mod = tensor(pinv.transpose(), pi.matrix());
  return comm_norm(g.matrix(), mod);
}

AlickiVerdict is_alicki_db(const SuperOperator& g, const Mat& hamiltonian,
                           const DensityMatrix& pi) {
  AlickiVerdict v;
  SuperOperator u = hamiltonian_superop(hamiltonian);
  SuperOperator diss = g - u;
  SuperOperator heis = g.hs_adjoint();
  SuperOperator heis_adj = alicki_adjoint(heis, pi);

  double scale = std::max(1.0, g.norm());
  v.normality_residual =
      comm_norm(heis.matrix(), heis_adj.matrix()) / (scale * scale);
  SuperOperator u_heis = u.hs_adjoint();
  v.skew_residual =
      (alicki_adjoint(u_heis, pi).matrix() + u_heis.matrix()).norm() / scale;
  SuperOperator d_heis = diss.hs_adjoint();
  v.dissipator_residual =
      (alicki_adjoint(d_heis, pi).matrix() - d_heis.matrix()).norm() / scale;
  v.pass = v.max_residual() < 1e-8;
  return v;
}

AlickiVerdict is_alicki_db(const Lindbladian& lind, const DensityMatrix& pi,
                           double t) {
  return is_alicki_db(lind.generator(t), lind.hamiltonian(), pi);
}

double FisherVerdict::max_residual() const {
  double m = std::max({offsector_residual, rate_relation_residual,
                       hamiltonian_residual, normality_residual});
  for (const auto& [name, r] : per_f_residual) m = std::max(m, r);
  return m;
}

std::vector<StandardMonotone> default_db_samples() {
  return {bures(),        harmonic(),         sqrt_monotone(), kmb(),
          wigner_yanase(), alpha_family(0.3), extreme_point(0.4)};
}

FisherVerdict is_fisher_db(const SuperOperator& g, const Mat& hamiltonian,
                           const DensityMatrix& pi,
                           const std::vector<StandardMonotone>& samples) {
  pi.require_full_rank("is_fisher_db");
  FisherVerdict v;
  Eigen::Index d = g.dim();
  SuperOperator u = hamiltonian_superop(hamiltonian);
  SuperOperator diss = g - u;
  double scale = std::max(1.0, g.norm());

  v.hamiltonian_residual = comm_norm(hamiltonian, pi.matrix()) / scale;
  v.normality_residual = comm_norm(u.matrix(), diss.matrix()) / (scale * scale);

  // exact selection rule on the dissipator elements in the pi eigenbasis
  ElementTensor c = element_tensor(diss, pi);
  const RVec& ev = pi.spectral().eigenvalues;
  RVec lg = ev.array().log().matrix();
  for (Eigen::Index al = 0; al < d; ++al)
    for (Eigen::Index be = 0; be < d; ++be) {
      double w1 = lg(al) - lg(be);
      for (Eigen::Index ga = 0; ga < d; ++ga)
        for (Eigen::Index de = 0; de < d; ++de) {
          double w2 = lg(ga) - lg(de);
          Cplx el = c.at(ga, al, de, be);
          if (omega_close(w1, w2)) {
            Cplx partner = c.at(be, de, al, ga);
            v.rate_relation_residual =
                std::max(v.rate_relation_residual,
                         std::abs(el * ev(be) - partner * ev(de)) / scale);
          } else if (omega_close(w1, -w2)) {
            Cplx partner = c.at(be, de, al, ga);
            v.rate_relation_residual =
                std::max(v.rate_relation_residual,
                         std::abs(el * ev(be) - partner * ev(ga)) / scale);
          } else {
            v.offsector_residual = std::max(v.offsector_residual, std::abs(el) / scale);
          }
        }
    }

  std::vector<StandardMonotone> fs = samples.empty() ? default_db_samples() : samples;
  for (const StandardMonotone& f : fs) {
    double rd = (fisher_adjoint(diss, pi, f).matrix() - diss.matrix()).norm() / scale;
    double ru = (fisher_adjoint(u, pi, f).matrix() + u.matrix()).norm() / scale;
    v.per_f_residual[f.name] = std::max(rd, ru);
  }
  v.pass = v.max_residual() < 1e-8;
  return v;
}

FisherVerdict is_fisher_db(const Lindbladian& lind, const DensityMatrix& pi,
                           const std::vector<StandardMonotone>& samples, double t) {
  return is_fisher_db(lind.generator(t), lind.hamiltonian(), pi, samples);
}

// ------------------------------------------------------------- builders

Lindbladian build_db_lindbladian(const DensityMatrix& pi,
                                 const std::vector<JumpSpec>& jumps,
                                 const Mat* hamiltonian) {
  pi.require_full_rank("build_db_lindbladian");
  require_nondegenerate(pi, "build_db_lindbladian");
  Eigen::Index d = pi.dim();
  const Mat& u = pi.spectral().eigenvectors;
  const RVec& ev = pi.spectral().eigenvalues;

  std::vector<Mat> ops;
  std::vector<double> rates;
  for (const JumpSpec& js : jumps) {
    if (js.to == js.from || js.to < 0 || js.from < 0 || js.to >= d || js.from >= d)
      throw Error("build_db_lindbladian: invalid level pair");
    if (js.rate < 0) throw Error("build_db_lindbladian: negative base rate");
    Mat up = u.col(js.to) * u.col(js.from).adjoint();
    double ratio = ev(js.to) / ev(js.from);  // e^{omega}
    ops.push_back(up);
    rates.push_back(js.rate);
    ops.push_back(up.adjoint());
    rates.push_back(js.rate / ratio);
  }
  Mat h = hamiltonian ? *hamiltonian : Mat::Zero(d, d);
  if (comm_norm(h, pi.matrix()) > 1e-10)
    throw Error("build_db_lindbladian: H must commute with pi");
  RVec r(Eigen::Index(rates.size()));
  for (std::size_t k = 0; k < rates.size(); ++k) r(Eigen::Index(k)) = rates[k];
  return Lindbladian(h, ops, r);
}

SuperOperator build_fisher_db_extra(const DensityMatrix& pi,
                                    const std::vector<JumpSpec>& jumps,
                                    const Mat& mu_coefficients,
                                    const Mat* hamiltonian) {
  pi.require_full_rank("build_fisher_db_extra");
  require_nondegenerate(pi, "build_fisher_db_extra");
  Eigen::Index d = pi.dim();
  if (mu_coefficients.rows() != d || mu_coefficients.cols() != d)
    throw DimensionError("build_fisher_db_extra: mu matrix must be d x d");
  if (!is_hermitian(mu_coefficients, 1e-12))
    throw Error("build_fisher_db_extra: mu matrix must be Hermitian");
  for (Eigen::Index i = 0; i < d; ++i)
    if (std::abs(mu_coefficients(i, i)) > 1e-12)
      throw Error("build_fisher_db_extra: mu matrix must have zero diagonal");

  SuperOperator total = jumps.empty()
                            ? SuperOperator::zero(d)
                            : build_db_lindbladian(pi, jumps, hamiltonian).generator();
  if (jumps.empty() && hamiltonian) total = total + hamiltonian_superop(*hamiltonian);

  // transpose term in the eigenbasis of pi, rotated back afterwards
  const Mat& u = pi.spectral().eigenvectors;
  Mat theta = Mat::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) theta(j + d * i, i + d * j) = 1.0;
  Mat extra = Mat::Zero(d * d, d * d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b) {
      if (mu_coefficients(a, b) == Cplx(0, 0)) continue;
      Mat fa = Mat::Zero(d, d);
      fa(a, a) = 1.0;
      Mat fb = Mat::Zero(d, d);
      fb(b, b) = 1.0;
      extra += mu_coefficients(a, b) * tensor(fb.conjugate(), fa);
    }
  Mat w = tensor(u.conjugate(), u);
  Mat rotated = w * (extra * theta) * w.adjoint();
  return total + SuperOperator(std::move(rotated), d);
}

// ------------------------------------------------------------- decomposition

namespace {

struct SectorIndex {
  std::vector<double> omegas;                       // distinct log ratios
  std::vector<std::vector<std::pair<Eigen::Index, Eigen::Index>>> pairs;
  Eigen::Index find(double w) const {
    for (std::size_t k = 0; k < omegas.size(); ++k)
      if (omega_close(omegas[k], w)) return Eigen::Index(k);
    return -1;
  }
};

SectorIndex build_sectors(const RVec& log_ev) {
  SectorIndex idx;
  Eigen::Index d = log_ev.size();
  for (Eigen::Index g = 0; g < d; ++g)
    for (Eigen::Index a = 0; a < d; ++a) {
      double w = log_ev(g) - log_ev(a);
      Eigen::Index k = idx.find(w);
      if (k < 0) {
        idx.omegas.push_back(w);
        idx.pairs.push_back({});
        k = Eigen::Index(idx.omegas.size()) - 1;
      }
      idx.pairs[std::size_t(k)].push_back({g, a});
    }
  return idx;
}

}  // namespace

StructuralDecomposition structural_decompose(const SuperOperator& g,
                                             const DensityMatrix& pi) {
  pi.require_full_rank("structural_decompose");
  require_nondegenerate(pi, "structural_decompose");
  // the canonical split of a Hermiticity-preserving trace-annihilating map
  // into Hamiltonian plus dissipator is unique, so the extracted H gates the
  // full selection-rule check
  Mat h_gate = canonical_form(g).hamiltonian();
  FisherVerdict fv = is_fisher_db(g, h_gate, pi, {bures()});
  if (!fv.pass)
    throw Error("structural_decompose: generator is not Fisher detailed balanced "
                "(residual " + std::to_string(fv.max_residual()) + ")");

  Eigen::Index d = g.dim();
  const Mat& u = pi.spectral().eigenvectors;
  Mat w_mat = tensor(u.conjugate(), u);
  Mat g_eig = w_mat.adjoint() * g.matrix() * w_mat;
  RVec lg = pi.spectral().eigenvalues.array().log().matrix();
  SectorIndex sectors = build_sectors(lg);

  StructuralDecomposition dec;
  dec.hamiltonian = Mat::Zero(d, d);

  // split by matrix elements: element ((ga,de) <- (al,be)) sits at
  // g_eig(ga + d*de, al + d*be)
  Mat g1 = Mat::Zero(d * d, d * d);
  Mat g2 = Mat::Zero(d * d, d * d);
  double off = 0;
  for (Eigen::Index al = 0; al < d; ++al)
    for (Eigen::Index be = 0; be < d; ++be) {
      double w1 = lg(al) - lg(be);
      for (Eigen::Index ga = 0; ga < d; ++ga)
        for (Eigen::Index de = 0; de < d; ++de) {
          double w2 = lg(ga) - lg(de);
          Cplx el = g_eig(ga + d * de, al + d * be);
          if (el == Cplx(0, 0)) continue;
          if (omega_close(w1, w2))
            g1(ga + d * de, al + d * be) = el;
          else if (omega_close(w1, -w2))
            g2(ga + d * de, al + d * be) = el;
          else
            off = std::max(off, std::abs(el));
        }
    }
  dec.offsector_residual = off;

  // the sector coefficient matrix entry (a, b) for pairs (ga, al) is the
  // coefficient of F_a rho F_b^dag, i.e. element ((ga_a, ga_b) <- (al_a, al_b))
  auto sector_matrix = [&](const Mat& src,
                           const std::vector<std::pair<Eigen::Index, Eigen::Index>>&
                               prs) {
    Eigen::Index n = Eigen::Index(prs.size());
    Mat m(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b)
        m(a, b) = src(prs[std::size_t(a)].first + d * prs[std::size_t(b)].first,
                      prs[std::size_t(a)].second + d * prs[std::size_t(b)].second);
    return m;
  };

  Mat id = Mat::Identity(d, d);
  Mat rebuilt = Mat::Zero(d * d, d * d);
  dec.min_jump_rate = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < sectors.omegas.size(); ++k) {
    double w = sectors.omegas[k];
    if (std::abs(w) < 1e-12) continue;  // diagonal sector handled below
    const auto& prs = sectors.pairs[k];
    Mat dmat = sector_matrix(g1, prs);
    if (dmat.norm() < 1e-12) continue;
    SpectralDecomposition s = eig_hermitian(dmat);
    for (Eigen::Index m = 0; m < Eigen::Index(prs.size()); ++m) {
      double rate = s.eigenvalues(m);
      if (std::abs(rate) < 1e-12) continue;
      Mat op = Mat::Zero(d, d);
      for (Eigen::Index a = 0; a < Eigen::Index(prs.size()); ++a)
        op(prs[std::size_t(a)].first, prs[std::size_t(a)].second) +=
            s.eigenvectors(a, m);
      dec.min_jump_rate = std::min(dec.min_jump_rate, rate);
      SectorTerm term;
      term.omega = w;
      term.weight = rate;
      term.op = u * op * u.adjoint();
      dec.jump_terms.push_back(std::move(term));
      Mat jj = op.adjoint() * op;
      rebuilt += rate * (tensor(op.conjugate(), op) - 0.5 * tensor(id, jj) -
                         0.5 * tensor(jj.transpose(), id));
    }
  }

  // leftover same-sector part: diagonal-sector dissipation plus Hamiltonian
  SuperOperator residual_op(w_mat * (g1 - rebuilt) * w_mat.adjoint(), d);
  Lindbladian canon = canonical_form(residual_op);
  dec.hamiltonian = canon.hamiltonian();
  RVec crates = canon.rates(0.0);
  for (Eigen::Index m = 0; m < crates.size(); ++m) {
    if (std::abs(crates(m)) < 1e-10) continue;
    dec.min_jump_rate = std::min(dec.min_jump_rate, crates(m));
    SectorTerm term;
    term.omega = 0.0;
    term.weight = crates(m);
    term.op = canon.jumps()[std::size_t(m)];
    dec.jump_terms.push_back(std::move(term));
  }
  if (!std::isfinite(dec.min_jump_rate)) dec.min_jump_rate = 0.0;

  // transpose part: rho -> G2(rho^T) is sector-diagonal
  Mat theta = Mat::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) theta(j + d * i, i + d * j) = 1.0;
  Mat t2 = g2 * theta;
  for (std::size_t k = 0; k < sectors.omegas.size(); ++k) {
    const auto& prs = sectors.pairs[k];
    Mat mmat = sector_matrix(t2, prs);
    if (mmat.norm() < 1e-12) continue;
    SpectralDecomposition s = eig_hermitian(mmat);
    double sum = 0;
    for (Eigen::Index m = 0; m < Eigen::Index(prs.size()); ++m) {
      double mu = s.eigenvalues(m);
      sum += mu;
      if (std::abs(mu) < 1e-12) continue;
      Mat op = Mat::Zero(d, d);
      for (Eigen::Index a = 0; a < Eigen::Index(prs.size()); ++a)
        op(prs[std::size_t(a)].first, prs[std::size_t(a)].second) +=
            s.eigenvectors(a, m);
      SectorTerm term;
      term.omega = sectors.omegas[k];
      term.weight = mu;
      term.op = u * op * u.adjoint();
      dec.transpose_terms.push_back(std::move(term));
    }
    dec.mu_sum_residual = std::max(dec.mu_sum_residual, std::abs(sum));
  }

  dec.resynthesis_residual =
      (synthesize_generator(dec, pi).matrix() - g.matrix()).norm();
  return dec;
}

SuperOperator synthesize_generator(const StructuralDecomposition& dec,
                                   const DensityMatrix& pi) {
  Eigen::Index d = dec.hamiltonian.rows();
  Mat id = Mat::Identity(d, d);
  SuperOperator total = hamiltonian_superop(dec.hamiltonian);
  for (const SectorTerm& t : dec.jump_terms) {
    Mat jj = t.op.adjoint() * t.op;
    total = total + SuperOperator(t.weight * (tensor(t.op.conjugate(), t.op) -
                                              0.5 * tensor(id, jj) -
                                              0.5 * tensor(jj.transpose(), id)),
                                  d);
  }
  if (!dec.transpose_terms.empty()) {
    const Mat& u = pi.spectral().eigenvectors;
    Mat w = tensor(u.conjugate(), u);
    Mat theta = Mat::Zero(d * d, d * d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) theta(j + d * i, i + d * j) = 1.0;
    Mat extra = Mat::Zero(d * d, d * d);
    for (const SectorTerm& t : dec.transpose_terms) {
      Mat op_eig = u.adjoint() * t.op * u;
      extra += t.weight * tensor(op_eig.conjugate(), op_eig);
    }
    total = total + SuperOperator(w * (extra * theta) * w.adjoint(), d);
  }
  return total;
}

DBReport db_report(const SuperOperator& g, const Mat& hamiltonian,
                   const DensityMatrix& pi, bool decompose) {
  DBReport rep;
  rep.alicki = is_alicki_db(g, hamiltonian, pi);
  rep.fisher = is_fisher_db(g, hamiltonian, pi);
  rep.modular_commutator = modular_commutator_norm(g, pi);
  if (decompose && rep.fisher.pass) rep.structural = structural_decompose(g, pi);
  return rep;
}

}  // namespace infogeom
