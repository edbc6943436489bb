#include "infogeom/channel.hpp"

#include <random>

namespace infogeom {

QuantumChannel QuantumChannel::from_kraus(std::vector<Mat> kraus) {
  if (kraus.empty()) throw Error("from_kraus: empty Kraus list");
  Eigen::Index d = kraus.front().rows();
  Mat s = Mat::Zero(d * d, d * d);
  for (const Mat& k : kraus) {
    if (k.rows() != d || k.cols() != d)
      throw DimensionError("from_kraus: Kraus operators must share dimensions");
    s += tensor(k.conjugate(), k);  // vec(K X K^dag) = (conj(K) (x) K) vec(X)
  }
  QuantumChannel c{SuperOperator(std::move(s), d)};
  c.kraus_ = std::move(kraus);
  return c;
}

QuantumChannel QuantumChannel::from_superoperator(SuperOperator s) {
  return QuantumChannel{std::move(s)};
}

QuantumChannel QuantumChannel::identity(Eigen::Index d) {
  std::vector<Mat> k{Mat::Identity(d, d)};
  return from_kraus(std::move(k));
}

QuantumChannel QuantumChannel::depolarizing(double lambda) {
  // Kraus form of (1-lambda) rho + lambda 1/2 on a qubit
  Mat id = Mat::Identity(2, 2);
  Mat sx{{Cplx(0, 0), Cplx(1, 0)}, {Cplx(1, 0), Cplx(0, 0)}};
  Mat sy{{Cplx(0, 0), Cplx(0, -1)}, {Cplx(0, 1), Cplx(0, 0)}};
  Mat sz{{Cplx(1, 0), Cplx(0, 0)}, {Cplx(0, 0), Cplx(-1, 0)}};
  double p = 3.0 * lambda / 4.0;
  if (lambda >= 0.0 && lambda <= 4.0 / 3.0) {
    std::vector<Mat> kraus{std::sqrt(1.0 - p) * id, std::sqrt(lambda / 4.0) * sx,
                           std::sqrt(lambda / 4.0) * sy, std::sqrt(lambda / 4.0) * sz};
    return from_kraus(std::move(kraus));
  }
  // outside the CP window only the superoperator form exists:
  // vec(out) = (1-lambda) vec(rho) + (lambda/2) vec(1) tr(rho)
  CVec vid = vectorize(id);
  Mat s = (1.0 - lambda) * Mat::Identity(4, 4) +
          (lambda / 2.0) * (vid * vid.transpose());
  return from_superoperator(SuperOperator(std::move(s), 2));
}

QuantumChannel QuantumChannel::transpose_channel(Eigen::Index d) {
  Mat s = Mat::Zero(d * d, d * d);
  // vec index i + d*j holds entry (i, j); transpose swaps (i, j)
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      s(j + d * i, i + d * j) = 1.0;
  return from_superoperator(SuperOperator(std::move(s), d));
}

QuantumChannel QuantumChannel::random(Eigen::Index d, Eigen::Index kraus_count,
                                      std::uint64_t seed) {
  if (kraus_count < 1) throw Error("random channel: kraus_count must be >= 1");
  // isometry from d to d * kraus_count, sliced into Kraus blocks
  Mat u = random_unitary(d * kraus_count, seed);
  Mat v = u.leftCols(d);
  std::vector<Mat> kraus;
  kraus.reserve(kraus_count);
  for (Eigen::Index k = 0; k < kraus_count; ++k)
    kraus.push_back(v.middleRows(k * d, d));
  return from_kraus(std::move(kraus));
}

QuantumChannel QuantumChannel::classical_stochastic(const RMat& t) {
  require_square(Mat(t.cast<Cplx>()), "classical_stochastic");
  Eigen::Index d = t.rows();
  for (Eigen::Index j = 0; j < d; ++j) {
    if (std::abs(t.col(j).sum() - 1.0) > 1e-10)
      throw Error("classical_stochastic: columns must sum to 1");
    for (Eigen::Index i = 0; i < d; ++i)
      if (t(i, j) < -1e-12) throw Error("classical_stochastic: negative entry");
  }
  std::vector<Mat> kraus;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      if (t(i, j) <= 0) continue;
      Mat k = Mat::Zero(d, d);
      k(i, j) = std::sqrt(t(i, j));
      kraus.push_back(std::move(k));
    }
  return from_kraus(std::move(kraus));
}

RMat QuantumChannel::random_stochastic(Eigen::Index d, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x5bf03635d1a2b4a7ULL);
  std::uniform_real_distribution<double> uni(0.05, 1.0);
  RMat t(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    double sum = 0;
    for (Eigen::Index i = 0; i < d; ++i) {
      t(i, j) = uni(rng);
      sum += t(i, j);
    }
    t.col(j) /= sum;
  }
  return t;
}

DensityMatrix QuantumChannel::apply_state(const DensityMatrix& rho) const {
  return DensityMatrix(apply(rho.matrix()));
}

QuantumChannel QuantumChannel::compose(const QuantumChannel& rhs) const {
  QuantumChannel out{superop_.compose(rhs.superop_)};
  if (has_kraus() && rhs.has_kraus()) {
    for (const Mat& a : kraus_)
      for (const Mat& b : rhs.kraus_) out.kraus_.push_back(a * b);
  }
  return out;
}

QuantumChannel QuantumChannel::adjoint() const {
  QuantumChannel out{superop_.hs_adjoint()};
  for (const Mat& k : kraus_) out.kraus_.push_back(k.adjoint());
  return out;
}

QuantumChannel QuantumChannel::tensor_with_identity(Eigen::Index d_anc) const {
  Eigen::Index d = dim();
  if (has_kraus()) {
    std::vector<Mat> kraus;
    for (const Mat& k : kraus_) kraus.push_back(tensor(k, Mat::Identity(d_anc, d_anc)));
    return from_kraus(std::move(kraus));
  }
  // apply basis-by-basis on the composite space
  Eigen::Index dd = d * d_anc;
  Mat s(dd * dd, dd * dd);
  for (Eigen::Index col = 0; col < dd * dd; ++col) {
    Mat e = Mat::Zero(dd, dd);
    e(col % dd, col / dd) = 1.0;
    // (Phi (x) I)(e): act on the first factor blockwise
    Mat out = Mat::Zero(dd, dd);
    for (Eigen::Index p = 0; p < d_anc; ++p)
      for (Eigen::Index q = 0; q < d_anc; ++q) {
        Mat block(d, d);
        for (Eigen::Index i = 0; i < d; ++i)
          for (Eigen::Index j = 0; j < d; ++j)
            block(i, j) = e(i * d_anc + p, j * d_anc + q);
        Mat mapped = superop_.apply(block);
        for (Eigen::Index i = 0; i < d; ++i)
          for (Eigen::Index j = 0; j < d; ++j)
            out(i * d_anc + p, j * d_anc + q) = mapped(i, j);
      }
    s.col(col) = vectorize(out);
  }
  return from_superoperator(SuperOperator(std::move(s), dd));
}

const Mat& QuantumChannel::choi() const {
  if (!choi_) {
    Eigen::Index d = dim();
    Mat c = Mat::Zero(d * d, d * d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) {
        Mat e = Mat::Zero(d, d);
        e(i, j) = 1.0;
        Mat img = superop_.apply(e);
        for (Eigen::Index k = 0; k < d; ++k)
          for (Eigen::Index l = 0; l < d; ++l)
            c(i * d + k, j * d + l) = img(k, l);
      }
    choi_ = std::move(c);
  }
  return *choi_;
}

QuantumChannel::CptpReport QuantumChannel::is_cptp() const {
  CptpReport r;
  Eigen::Index d = dim();
  Mat id = Mat::Identity(d, d);
  r.tp_residual = (superop_.hs_adjoint().apply(id) - id).norm();
  r.trace_preserving = r.tp_residual < 1e-10;
  SpectralDecomposition s = eig_hermitian(choi());
  r.choi_min_eigenvalue = s.eigenvalues(0);
  r.completely_positive = r.choi_min_eigenvalue >= -1e-10;
  return r;
}

double QuantumChannel::positivity_probe(int trials, std::uint64_t seed) const {
  Eigen::Index d = dim();
  double worst = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    Eigen::Index rank = 1 + (t % d);
    DensityMatrix rho = random_density(d, rank, seed + std::uint64_t(t));
    SpectralDecomposition s = eig_hermitian(apply(rho.matrix()));
    worst = std::min(worst, s.eigenvalues(0));
  }
  return worst;
}

}  // namespace infogeom
