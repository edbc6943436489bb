#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace infogeom {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

// ---------------------------------------------------------------- errors

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionError : Error {
  using Error::Error;
};
struct RankError : Error {
  using Error::Error;
};
struct SingularOperatorError : Error {
  using Error::Error;
};
struct UnsupportedMeasureError : Error {
  using Error::Error;
};
struct ConvergenceError : Error {
  using Error::Error;
};
struct SchemaError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------- tolerances

namespace tol {
inline constexpr double hermiticity = 1e-12;   // relative to Frobenius norm
inline constexpr double trace_one = 1e-12;
inline constexpr double psd_floor = -1e-10;    // absolute on eigenvalues
inline constexpr double rank_eps = 1e-12;      // full-rank threshold
inline constexpr double denom_floor = 1e-14;   // sandwich-inverse denominators
}  // namespace tol

// ---------------------------------------------------------------- basics

inline Mat dagger(const Mat& a) { return a.adjoint(); }

inline Mat hermitian_part(const Mat& a) { return 0.5 * (a + a.adjoint()); }

inline double fro_norm(const Mat& a) { return a.norm(); }

inline Mat identity(Eigen::Index d) { return Mat::Identity(d, d); }

inline Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

inline Mat anticommutator(const Mat& a, const Mat& b) { return a * b + b * a; }

void require_square(const Mat& a, const char* who);
void require_same_dim(const Mat& a, const Mat& b, const char* who);

// Checks A = A^dag within tol::hermiticity * ||A||_F.
bool is_hermitian(const Mat& a, double rel_tol = tol::hermiticity);

// ---------------------------------------------------------------- spectral

struct SpectralDecomposition {
  RVec eigenvalues;   // ascending
  Mat eigenvectors;   // unitary, columns

  Eigen::Index dim() const { return eigenvalues.size(); }
  Mat reconstruct() const {
    return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.adjoint();
  }
};

// Hermitian eigendecomposition with ascending eigenvalues. Input is
// symmetrized first; throws ConvergenceError if the solver fails.
SpectralDecomposition eig_hermitian(const Mat& h);

// Applies a scalar function to a Hermitian matrix through its spectrum.
Mat mat_func(const Mat& h, const std::function<double(double)>& fn);

// Principal square root / logarithm / real power of a PSD matrix.
// mat_log and negative powers require all eigenvalues > rank threshold.
Mat mat_sqrt(const Mat& h);
Mat mat_log(const Mat& h);
Mat mat_pow(const Mat& h, double p);
// pi^z for complex z (used by rotated recovery maps).
Mat mat_cpow(const Mat& h, Cplx z);

// ---------------------------------------------------------------- states

class DensityMatrix {
 public:
  DensityMatrix() = default;
  // Symmetrizes, checks trace one and PSD within tolerances.
  explicit DensityMatrix(const Mat& rho);

  const Mat& matrix() const { return m_; }
  const SpectralDecomposition& spectral() const { return spec_; }
  Eigen::Index dim() const { return m_.rows(); }
  bool full_rank() const { return full_rank_; }
  double min_eigenvalue() const { return spec_.eigenvalues(0); }

  void require_full_rank(const char* who) const;

 private:
  Mat m_;
  SpectralDecomposition spec_;
  bool full_rank_ = false;
};

class TangentVector {
 public:
  TangentVector() = default;
  // Symmetrizes and checks tracelessness.
  explicit TangentVector(const Mat& a);

  const Mat& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  Mat m_;
};

// ---------------------------------------------------------------- vectorization

// Column-stacking convention throughout: vec(A)(i + d*j) = A(i, j).
CVec vectorize(const Mat& a);
Mat devectorize(const CVec& v, Eigen::Index d);

// d^2 x d^2 matrix acting on column-stacked vectorizations.
class SuperOperator {
 public:
  SuperOperator() = default;
  SuperOperator(Mat m, Eigen::Index d);

  static SuperOperator identity_op(Eigen::Index d);
  static SuperOperator zero(Eigen::Index d);

  const Mat& matrix() const { return m_; }
  Mat& matrix() { return m_; }
  Eigen::Index dim() const { return d_; }

  Mat apply(const Mat& x) const;
  SuperOperator compose(const SuperOperator& rhs) const;  // this after rhs
  // Hilbert-Schmidt adjoint.
  SuperOperator hs_adjoint() const;

  SuperOperator operator+(const SuperOperator& o) const;
  SuperOperator operator-(const SuperOperator& o) const;
  SuperOperator operator*(double s) const;

  double norm() const { return m_.norm(); }
  // True if the map sends Hermitian matrices to Hermitian matrices.
  bool hermiticity_preserving(double tolabs = 1e-8) const;
  // True if the adjoint annihilates the identity (trace preservation of e^{tG}).
  bool trace_annihilating(double tolabs = 1e-10) const;

 private:
  Mat m_;
  Eigen::Index d_ = 0;
};

// L_rho[A] = rho A  and  R_rho[A] = A rho.
SuperOperator left_mult_superop(const Mat& rho);
SuperOperator right_mult_superop(const Mat& rho);

// Solves (L_sigma + s R_rho)[B] = X entrywise in the paired eigenbases.
// Throws SingularOperatorError when a denominator falls below tol::denom_floor.
Mat sandwich_inverse(const DensityMatrix& sigma, const DensityMatrix& rho,
                     double s, const Mat& x);
// Same solver on raw Hermitian PSD matrices (used for time-dependent states).
Mat sandwich_inverse(const SpectralDecomposition& sigma,
                     const SpectralDecomposition& rho, double s, const Mat& x);

// ---------------------------------------------------------------- tensor algebra

Mat tensor(const Mat& a, const Mat& b);
// Partial trace of a (dA*dB x dA*dB) matrix over the chosen factor.
enum class TraceSide { First, Second };
Mat partial_trace(const Mat& a, Eigen::Index d_first, Eigen::Index d_second,
                  TraceSide which);

// ---------------------------------------------------------------- randoms

// Deterministic Ginibre-based generators (fixed seed -> fixed output).
DensityMatrix random_density(Eigen::Index d, Eigen::Index rank, std::uint64_t seed);
TangentVector random_tangent(Eigen::Index d, std::uint64_t seed);
// Haar-ish random unitary from QR of a Ginibre matrix.
Mat random_unitary(Eigen::Index d, std::uint64_t seed);

}  // namespace infogeom
