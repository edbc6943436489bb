#pragma once

#include <optional>

#include "infogeom/linalg.hpp"

namespace infogeom {

// Square linear map on d x d matrices, stored as a superoperator with an
// optional Kraus list when one is known.
class QuantumChannel {
 public:
  static QuantumChannel from_kraus(std::vector<Mat> kraus);
  static QuantumChannel from_superoperator(SuperOperator s);
  static QuantumChannel identity(Eigen::Index d);
  // Qubit depolarizer: rho -> (1 - lambda) rho + lambda 1/2.
  static QuantumChannel depolarizing(double lambda);
  // Transpose map: trace preserving, positive, not completely positive.
  static QuantumChannel transpose_channel(Eigen::Index d);
  // Haar-isometry channel with the given number of Kraus operators.
  static QuantumChannel random(Eigen::Index d, Eigen::Index kraus_count,
                               std::uint64_t seed);
  // Embeds a column-stochastic matrix as a channel diagonal in the basis.
  static QuantumChannel classical_stochastic(const RMat& t);
  static RMat random_stochastic(Eigen::Index d, std::uint64_t seed);

  Eigen::Index dim() const { return superop_.dim(); }
  Mat apply(const Mat& x) const { return superop_.apply(x); }
  DensityMatrix apply_state(const DensityMatrix& rho) const;

  QuantumChannel compose(const QuantumChannel& rhs) const;  // this after rhs
  QuantumChannel adjoint() const;
  QuantumChannel tensor_with_identity(Eigen::Index d_anc) const;

  const SuperOperator& superop() const { return superop_; }
  const std::vector<Mat>& kraus() const { return kraus_; }
  bool has_kraus() const { return !kraus_.empty(); }

  // Choi matrix sum_ij E_ij (x) Phi(E_ij); cached.
  const Mat& choi() const;

  struct CptpReport {
    bool trace_preserving = false;
    bool completely_positive = false;
    double tp_residual = 0;
    double choi_min_eigenvalue = 0;
  };
  CptpReport is_cptp() const;

  // Applies the map to random pure and mixed states and reports the most
  // negative output eigenvalue seen.
  double positivity_probe(int trials, std::uint64_t seed) const;

 private:
  explicit QuantumChannel(SuperOperator s) : superop_(std::move(s)) {}
  SuperOperator superop_;
  std::vector<Mat> kraus_;
  mutable std::optional<Mat> choi_;
};

}  // namespace infogeom
