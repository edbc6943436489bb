#pragma once

// Test-only independent oracles: quadratures, brute-force reductions and
// closed-form scalar formulas kept separate from the library paths they check.

#include <cmath>
#include <functional>

#include "infogeom/linalg.hpp"

namespace oracles {

using infogeom::Cplx;
using infogeom::Mat;
using infogeom::RVec;

// Composite trapezoid on [0, T].
inline Mat trapezoid_matrix(const std::function<Mat(double)>& f, double total,
                            double h) {
  std::size_t n = std::size_t(std::round(total / h));
  Mat acc = 0.5 * (f(0.0) + f(total));
  for (std::size_t k = 1; k < n; ++k) acc += f(double(k) * h);
  return h * acc;
}

// 64-node Gauss-Legendre on [0, 1].
struct GaussLegendre64 {
  std::vector<double> x, w;
  GaussLegendre64() {
    const int n = 64;
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
      // Newton iteration from the Chebyshev initial guess, on [-1, 1]
      double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        double dp = n * (t * p1 - p0) / (t * t - 1.0);
        double step = p1 / dp;
        t -= step;
        if (std::abs(step) < 1e-15) break;
      }
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (t * p1 - p0) / (t * t - 1.0);
      x[i] = 0.5 * (1.0 - t);  // map to [0, 1], ascending in i
      w[i] = 1.0 / ((1.0 - t * t) * dp * dp);
    }
  }
};

inline Mat gauss_legendre_matrix(const std::function<Mat(double)>& f) {
  static const GaussLegendre64 rule;
  Mat acc = rule.w[0] * f(rule.x[0]);
  for (int i = 1; i < 64; ++i) acc += rule.w[i] * f(rule.x[i]);
  return acc;
}

inline double gauss_legendre(const std::function<double(double)>& f) {
  static const GaussLegendre64 rule;
  double acc = 0;
  for (int i = 0; i < 64; ++i) acc += rule.w[i] * f(rule.x[i]);
  return acc;
}

// Least-squares slope of log|y| against log(x).
inline double loglog_slope(const std::vector<double>& xs,
                           const std::vector<double>& ys) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = xs.size();
  for (std::size_t i = 0; i < n; ++i) {
    double lx = std::log(xs[i]), ly = std::log(std::abs(ys[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (double(n) * sxy - sx * sy) / (double(n) * sxx - sx * sx);
}

// Theil-Sen slope of log|y| against log(x): robust against single grid points
// where higher-order terms accidentally cancel the leading residual.
inline double theil_sen_slope(const std::vector<double>& xs,
                              const std::vector<double>& ys) {
  std::vector<double> slopes;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      slopes.push_back((std::log(std::abs(ys[j])) - std::log(std::abs(ys[i]))) /
                       (std::log(xs[j]) - std::log(xs[i])));
  std::sort(slopes.begin(), slopes.end());
  return slopes[slopes.size() / 2];
}

// Mixed central second difference of a scalar field.
inline double mixed_second_difference(const std::function<double(double, double)>& f,
                                      double h) {
  return (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h * h);
}

}  // namespace oracles
