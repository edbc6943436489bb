#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "infogeom/linalg.hpp"

namespace infogeom {

enum class TriState { Yes, No, Unknown };

// dN measure on [0,1]: Dirac points plus an absolutely continuous part.
// singular_exponent p >= 0 is declared so that density(s) * s^p stays bounded
// near zero; the quadrature engine uses it to bound truncation.
struct MeasureDescriptor {
  std::vector<std::pair<double, double>> dirac_points;  // (location, weight)
  std::function<double(double)> density;                // may be empty
  double singular_exponent = 0.0;
};

// Integrates integrand against the measure. Dirac points are summed exactly;
// the density part goes through a fixed tanh-sinh rule, so results are
// deterministic bit-for-bit.
double measure_quadrature(const MeasureDescriptor& m,
                          const std::function<double(double)>& integrand);

// Vector-valued variant over the same node set (one shared state per node).
RVec measure_quadrature_vec(const MeasureDescriptor& m,
                            const std::function<RVec(double)>& integrand,
                            Eigen::Index size);

struct StandardMonotone {
  std::string name;
  std::function<double(double)> eval;                 // x > 0 -> f(x)
  std::function<double(double, double)> mean;         // (a, b) -> b f(a/b), stable
  std::optional<MeasureDescriptor> measure;           // dN_g, where known
  TriState cp_plus = TriState::Unknown;               // J_f CP for all pi
  TriState cp_minus = TriState::Unknown;              // J_f^{-1} CP for all pi

  double operator()(double x) const { return eval(x); }
};

struct StandardConvex {
  std::string name;
  std::function<double(double)> eval;  // x > 0, symmetric, g''(1) = 1
  double operator()(double x) const { return eval(x); }
};

// b f(a/b) with the removable singularity at a = b handled by a three-term
// Taylor form using f(1) = 1, f'(1) = 1/2 and a numerically estimated f''(1).
std::function<double(double, double)> generic_mean(std::function<double(double)> f);

// mean(f, a, a) = a for every standard monotone.
double mean(const StandardMonotone& f, double a, double b);

// ------------------------------------------------------------- the garden

StandardMonotone bures();
StandardMonotone harmonic();
StandardMonotone sqrt_monotone();
StandardMonotone kmb();
StandardMonotone wigner_yanase();
StandardMonotone alpha_family(double alpha);     // alpha in [-1, 2]
StandardMonotone heinz_gt(double gamma);         // (x^g + x^{1-g})/2, g in [0,1]
StandardMonotone heinz_lt(double gamma);         // 2x/(x^g + x^{1-g})
StandardMonotone info_variance();
StandardMonotone extreme_point(double lambda);   // lambda in [0,1]

// The named members used by property sweeps: bures, wy, sqrt, kmb, variance,
// harmonic plus representative alpha/heinz/lambda members.
std::vector<StandardMonotone> catalog();

// Registry keys: "bures", "harmonic", "sqrt", "kmb", "wy", "variance",
// "alpha:<a>", "heinz-gt:<g>", "heinz-lt:<g>", "lambda:<l>".
StandardMonotone monotone_by_name(const std::string& name);

// ------------------------------------------------------------- transforms

// [Tf](x) = x / f(x); involutive and order reversing.
StandardMonotone t_transform(const StandardMonotone& f);
// [Lf](x) = (x-1)^2 / (2 f(x)); maps monotones to standard convex functions.
StandardConvex l_transform(const StandardMonotone& f);
// Inverse of L: g -> (x-1)^2 / (2 g(x)).
StandardMonotone l_inverse(const StandardConvex& g);

StandardConvex convex_from_raw(std::string name, std::function<double(double)> g);

// ------------------------------------------------------------- diagnostics

// 401-point grid x = 10^u, u in [-4, 4].
const std::vector<double>& log_grid();

struct MonotoneCheck {
  double fisher_adjusted_err = 0;   // |f(1) - 1|
  double symmetry_err = 0;          // max |f(x) - x f(1/x)| over grid
  double bound_violation = 0;       // max breach of 2x/(x+1) <= f <= (x+1)/2
  double monotone_violation = 0;    // max decrease along the grid
  bool pass(double tol_sym = 1e-10, double tol_bound = 1e-10) const;
};
MonotoneCheck check_monotone(const StandardMonotone& f);

// f1(x) <= f2(x) on the whole grid (within slack).
bool pointwise_leq(const StandardMonotone& f1, const StandardMonotone& f2,
                   double slack = 1e-12);

}  // namespace infogeom
