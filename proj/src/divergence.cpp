#include "infogeom/divergence.hpp"

#include <cmath>

namespace infogeom {

namespace {

// Classifies whether g diverges as x -> 0+ by probing a shrinking sequence.
bool unbounded_at_zero(const std::function<double(double)>& g) {
  double g1 = g(1e-12), g2 = g(1e-15), g3 = g(1e-18);
  if (!std::isfinite(g2) || !std::isfinite(g3)) return true;
  double growth = std::abs(g3) - std::abs(g2);
  double earlier = std::abs(g2) - std::abs(g1);
  return growth > 1e-6 * (1.0 + std::abs(g2)) || earlier > 1e-6 * (1.0 + std::abs(g1));
}

// Power with the support convention lambda^0 = projector weight.
RVec spectral_pow(const RVec& ev, double p) {
  RVec out(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    double v = std::max(ev(i), 0.0);
    out(i) = (v <= 1e-15) ? 0.0 : std::pow(v, p);
  }
  return out;
}

Mat state_pow(const DensityMatrix& rho, double p) {
  const SpectralDecomposition& s = rho.spectral();
  RVec w = spectral_pow(s.eigenvalues, p);
  return s.eigenvectors * w.asDiagonal() * s.eigenvectors.adjoint();
}

}  // namespace

DivergenceResult contrast(const StandardConvex& g, const DensityMatrix& rho,
                          const DensityMatrix& sigma) {
  rho.require_full_rank("contrast");
  if (rho.dim() != sigma.dim()) throw DimensionError("contrast: dimension mismatch");
  const SpectralDecomposition& sr = rho.spectral();
  const SpectralDecomposition& ss = sigma.spectral();
  Mat overlap = ss.eigenvectors.adjoint() * sr.eigenvectors;  // (j, i) = <s_j|r_i>
  bool checked_unbounded = false, diverges = false;

  DivergenceResult res;
  res.method = DivergenceMethod::Coordinate;
  double total = 0;
  for (Eigen::Index j = 0; j < ss.dim(); ++j) {
    double sj = std::max(ss.eigenvalues(j), 0.0);
    for (Eigen::Index i = 0; i < sr.dim(); ++i) {
      double w = std::norm(overlap(j, i));
      double ri = sr.eigenvalues(i);
      double ratio = sj / ri;
      if (ratio < 1e-15) {
        if (!checked_unbounded) {
          diverges = unbounded_at_zero(g.eval);
          checked_unbounded = true;
        }
        if (diverges) {
          if (w > 1e-12) {
            res.infinite = true;
            return res;
          }
          continue;  // negligible weight on a divergent direction
        }
        total += ri * g.eval(1e-18) * w;
        continue;
      }
      total += ri * g.eval(ratio) * w;
    }
  }
  res.value = total;
  return res;
}

// ------------------------------------------------------- named divergences

DivergenceResult relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw DimensionError("relative_entropy: dimension mismatch");
  sigma.require_full_rank("relative_entropy");
  rho.require_full_rank("relative_entropy");
  Mat diff = mat_log(rho.matrix()) - mat_log(sigma.matrix());
  DivergenceResult res;
  res.value = (rho.matrix() * diff).trace().real();
  return res;
}

DivergenceResult alpha_divergence(double alpha, const DensityMatrix& rho,
                                  const DensityMatrix& sigma) {
  if (std::abs(alpha) < 1e-12) return relative_entropy(rho, sigma);
  if (std::abs(alpha - 1.0) < 1e-12) return relative_entropy(sigma, rho);
  rho.require_full_rank("alpha_divergence");
  sigma.require_full_rank("alpha_divergence");
  double q = (state_pow(sigma, alpha) * state_pow(rho, 1.0 - alpha)).trace().real();
  DivergenceResult res;
  res.value = (q - 1.0) / (alpha * (alpha - 1.0));
  return res;
}

double renyi(double alpha, const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (std::abs(alpha - 1.0) < 1e-12) return relative_entropy(rho, sigma).value;
  sigma.require_full_rank("renyi");
  double q = (state_pow(rho, alpha) * state_pow(sigma, 1.0 - alpha)).trace().real();
  if (q <= 0) throw Error("renyi: nonpositive trace functional");
  return std::log(q) / (alpha - 1.0);
}

DivergenceResult wy_contrast(const DensityMatrix& rho, const DensityMatrix& sigma) {
  DivergenceResult res;
  res.symmetric = true;
  res.value = 4.0 * (1.0 - (mat_sqrt(rho.matrix()) * mat_sqrt(sigma.matrix()))
                               .trace()
                               .real());
  return res;
}

DivergenceResult bures_contrast(const DensityMatrix& rho, const DensityMatrix& sigma) {
  Mat diff = rho.matrix() - sigma.matrix();
  Mat b = sandwich_inverse(sigma, rho, 1.0, diff);
  DivergenceResult res;
  res.symmetric = true;
  res.value = (diff * b).trace().real();
  return res;
}

DivergenceResult harmonic_contrast(const DensityMatrix& rho, const DensityMatrix& sigma) {
  rho.require_full_rank("harmonic_contrast");
  Mat inv = state_pow(rho, -1.0);
  DivergenceResult res;
  res.value = 0.5 * ((sigma.matrix() * sigma.matrix() * inv).trace().real() - 1.0);
  return res;
}

DivergenceResult sq_contrast(const DensityMatrix& rho, const DensityMatrix& sigma) {
  sigma.require_full_rank("sq_contrast");
  Mat diff = rho.matrix() - sigma.matrix();
  DivergenceResult res;
  res.value = (mat_sqrt(rho.matrix()) * diff * state_pow(sigma, -0.5)).trace().real();
  return res;
}

DivergenceResult quantum_info_variance(const DensityMatrix& rho,
                                       const DensityMatrix& sigma) {
  rho.require_full_rank("quantum_info_variance");
  sigma.require_full_rank("quantum_info_variance");
  Mat diff = mat_log(rho.matrix()) - mat_log(sigma.matrix());
  DivergenceResult res;
  res.value = 0.5 * (rho.matrix() * diff * diff).trace().real();
  return res;
}

DivergenceResult chi2(const StandardMonotone& f, const DensityMatrix& rho,
                      const DensityMatrix& sigma) {
  rho.require_full_rank("chi2");
  Mat diff = rho.matrix() - sigma.matrix();
  DivergenceResult res;
  res.value = fisher_information(f, rho, diff);
  return res;
}

// ------------------------------------------------------- geometry

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  Mat sr = mat_sqrt(rho.matrix());
  SpectralDecomposition s = eig_hermitian(sr * sigma.matrix() * sr);
  double f = 0;
  for (Eigen::Index i = 0; i < s.dim(); ++i)
    f += std::sqrt(std::max(s.eigenvalues(i), 0.0));
  return std::min(f, 1.0);
}

double bures_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return 2.0 * std::acos(std::clamp(fidelity(rho, sigma), 0.0, 1.0));
}

double bures_length(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - fidelity(rho, sigma))));
}

double wy_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  double c = (mat_sqrt(rho.matrix()) * mat_sqrt(sigma.matrix())).trace().real();
  return 2.0 * std::acos(std::clamp(c, 0.0, 1.0));
}

DensityMatrix wy_geodesic_path(const DensityMatrix& rho, const DensityMatrix& sigma,
                               double t) {
  if (t < 0.0 || t > 1.0) throw Error("wy_geodesic_path: t must lie in [0, 1]");
  Mat mid = (1.0 - t) * mat_sqrt(rho.matrix()) + t * mat_sqrt(sigma.matrix());
  Mat sq = mid * mid;
  return DensityMatrix(sq / sq.trace().real());
}

double unnormalized_length_sq(double delta_theta, double r0, double r1) {
  if (r0 <= 0 || r1 <= 0) throw Error("unnormalized_length_sq: radii must be positive");
  return (r0 + r1) - 2.0 * std::sqrt(r0 * r1) * std::cos(delta_theta);
}

// ------------------------------------------------------- ordering

OrderingReport symmetrized_ordering_check(const StandardConvex& g,
                                          const DensityMatrix& rho,
                                          const DensityMatrix& sigma, double slack) {
  OrderingReport rep;
  rep.lower = contrast(l_transform(bures()), rho, sigma).value;
  rep.value = contrast(g, rho, sigma).value;
  rep.upper = contrast(l_transform(harmonic()), rho, sigma).value;
  rep.ok = rep.lower <= rep.value + slack && rep.value <= rep.upper + slack;
  return rep;
}

// ------------------------------------------------------- hypothesis testing

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  SpectralDecomposition s = eig_hermitian(rho.matrix() - sigma.matrix());
  return s.eigenvalues.array().abs().sum();
}

ChernoffResult chernoff_optimize(const DensityMatrix& rho0, const DensityMatrix& rho1) {
  if (rho0.dim() != rho1.dim())
    throw DimensionError("chernoff_optimize: dimension mismatch");
  auto q = [&](double s) {
    return std::max((state_pow(rho0, s) * state_pow(rho1, 1.0 - s)).trace().real(),
                    1e-300);
  };
  // Q(s) is convex on [0,1]; golden-section minimization
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = 0.0, b = 1.0;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double qc = q(c), qd = q(d);
  while (b - a > 1e-8) {
    if (qc < qd) {
      b = d;
      d = c;
      qd = qc;
      c = b - gr * (b - a);
      qc = q(c);
    } else {
      a = c;
      c = d;
      qc = qd;
      d = a + gr * (b - a);
      qd = q(d);
    }
  }
  ChernoffResult res;
  res.s_star = 0.5 * (a + b);
  res.xi = -std::log(q(res.s_star));
  // the endpoints also compete when Q is monotone
  for (double s : {0.0, 1.0}) {
    double v = -std::log(q(s));
    if (v > res.xi) {
      res.xi = v;
      res.s_star = s;
    }
  }
  return res;
}

double chernoff_local(const DensityMatrix& rho0, const Mat& drho, double eps) {
  rho0.require_full_rank("chernoff_local");
  return eps * eps / 8.0 * fisher_information(wigner_yanase(), rho0, drho);
}

}  // namespace infogeom
