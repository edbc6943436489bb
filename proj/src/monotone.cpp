#include "infogeom/monotone.hpp"

#include <cmath>

namespace infogeom {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Fixed tanh-sinh rule on (0,1). Handles integrable endpoint singularities
// s^{-p}, p < 1, and endpoint cusps to well below 1e-10.
struct TanhSinhRule {
  std::vector<double> s;
  std::vector<double> w;
  TanhSinhRule() {
    const double h = 1.0 / 24.0;
    const int kmax = 108;  // t up to 4.5
    for (int k = -kmax; k <= kmax; ++k) {
      double t = k * h;
      double u = 0.5 * kPi * std::sinh(t);
      // s = (1 + tanh(u)) / 2 computed in a form accurate near both endpoints
      double e = std::exp(-2.0 * u);
      double sk = 1.0 / (1.0 + e);
      double ch = std::cosh(u);
      double wk = h * 0.25 * kPi * std::cosh(t) / (ch * ch);
      if (sk > 0.0 && sk < 1.0 && wk > 0.0) {
        s.push_back(sk);
        w.push_back(wk);
      }
    }
  }
};

const TanhSinhRule& ts_rule() {
  static const TanhSinhRule rule;
  return rule;
}

double logarithmic_mean(double a, double b) {
  // (a - b) / (log a - log b), stable near a = b
  double u = (a - b) / (a + b);
  if (std::abs(u) < 1e-5) {
    double u2 = u * u;
    return 0.5 * (a + b) * (1.0 - u2 / 3.0 - 4.0 * u2 * u2 / 45.0);
  }
  return (a - b) / (std::log(a) - std::log(b));
}

void require_positive(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw Error("mean: arguments must be positive");
}

MeasureDescriptor dirac_measure(double loc, double weight) {
  MeasureDescriptor m;
  m.dirac_points.push_back({loc, weight});
  return m;
}

}  // namespace

double measure_quadrature(const MeasureDescriptor& m,
                          const std::function<double(double)>& integrand) {
  if (m.dirac_points.empty() && !m.density)
    throw UnsupportedMeasureError("measure_quadrature: empty measure descriptor");
  double total = 0.0;
  for (const auto& [loc, weight] : m.dirac_points) total += weight * integrand(loc);
  if (m.density) {
    const TanhSinhRule& rule = ts_rule();
    double acc = 0.0;
    for (std::size_t k = 0; k < rule.s.size(); ++k)
      acc += rule.w[k] * m.density(rule.s[k]) * integrand(rule.s[k]);
    total += acc;
  }
  return total;
}

RVec measure_quadrature_vec(const MeasureDescriptor& m,
                            const std::function<RVec(double)>& integrand,
                            Eigen::Index size) {
  RVec total = RVec::Zero(size);
  for (const auto& [loc, weight] : m.dirac_points) total += weight * integrand(loc);
  if (m.density) {
    const TanhSinhRule& rule = ts_rule();
    for (std::size_t k = 0; k < rule.s.size(); ++k)
      total += rule.w[k] * m.density(rule.s[k]) * integrand(rule.s[k]);
  }
  return total;
}

std::function<double(double, double)> generic_mean(std::function<double(double)> f) {
  // second derivative at 1 from a central difference, fixed once
  const double h = 1e-4;
  const double f2 = (f(1.0 + h) - 2.0 * f(1.0) + f(1.0 - h)) / (h * h);
  return [f = std::move(f), f2](double a, double b) {
    require_positive(a, b);
    double x = a / b;
    if (std::abs(x - 1.0) < 1e-8) {
      double u = x - 1.0;
      return b * (1.0 + 0.5 * u + 0.5 * f2 * u * u);
    }
    return b * f(x);
  };
}

double mean(const StandardMonotone& f, double a, double b) {
  require_positive(a, b);
  return f.mean(a, b);
}

// ------------------------------------------------------------- the garden

StandardMonotone bures() {
  StandardMonotone f;
  f.name = "bures";
  f.eval = [](double x) { return 0.5 * (x + 1.0); };
  f.mean = [](double a, double b) {
    require_positive(a, b);
    return 0.5 * (a + b);
  };
  f.measure = dirac_measure(1.0, 1.0);
  f.cp_plus = TriState::No;
  f.cp_minus = TriState::Yes;
  return f;
}

StandardMonotone harmonic() {
  StandardMonotone f;
  f.name = "harmonic";
  f.eval = [](double x) { return 2.0 * x / (x + 1.0); };
  f.mean = [](double a, double b) {
    require_positive(a, b);
    return 2.0 * a * b / (a + b);
  };
  f.measure = dirac_measure(0.0, 0.5);
  f.cp_plus = TriState::Yes;
  f.cp_minus = TriState::No;
  return f;
}

StandardMonotone sqrt_monotone() {
  StandardMonotone f;
  f.name = "sqrt";
  f.eval = [](double x) { return std::sqrt(x); };
  f.mean = [](double a, double b) {
    require_positive(a, b);
    return std::sqrt(a) * std::sqrt(b);
  };
  MeasureDescriptor m;
  m.density = [](double s) { return 1.0 / (kPi * std::sqrt(s)); };
  m.singular_exponent = 0.5;
  f.measure = m;
  f.cp_plus = TriState::Yes;
  f.cp_minus = TriState::Yes;
  return f;
}

StandardMonotone kmb() {
  StandardMonotone f;
  f.name = "kmb";
  f.eval = [](double x) {
    if (std::abs(x - 1.0) < 1e-8) {
      double u = x - 1.0;
      return 1.0 + 0.5 * u - u * u / 12.0;
    }
    return (x - 1.0) / std::log(x);
  };
  f.mean = [](double a, double b) {
    require_positive(a, b);
    return logarithmic_mean(a, b);
  };
  MeasureDescriptor m;
  m.density = [](double s) { return 1.0 / (1.0 + s); };
  f.measure = m;
  f.cp_plus = TriState::No;
  f.cp_minus = TriState::Yes;
  return f;
}

StandardMonotone wigner_yanase() {
  StandardMonotone f;
  f.name = "wy";
  f.eval = [](double x) {
    double t = 0.5 * (1.0 + std::sqrt(x));
    return t * t;
  };
  f.mean = [](double a, double b) {
    require_positive(a, b);
    double t = 0.5 * (std::sqrt(a) + std::sqrt(b));
    return t * t;
  };
  // alpha measure at alpha = 1/2: c_{1/2} = 4/pi
  MeasureDescriptor m;
  m.density = [](double s) {
    double den = (1.0 + s) * (1.0 + s);
    return (8.0 / kPi) * std::sqrt(s) / den;
  };
  f.measure = m;
  f.cp_plus = TriState::No;
  f.cp_minus = TriState::Yes;
  return f;
}

StandardMonotone alpha_family(double alpha) {
  if (alpha < -1.0 - 1e-12 || alpha > 2.0 + 1e-12)
    throw Error("alpha_family: alpha must lie in [-1, 2]");
  // limits alpha -> 0 and alpha -> 1 both give the KMB function
  if (std::abs(alpha) < 1e-9 || std::abs(alpha - 1.0) < 1e-9) {
    StandardMonotone f = kmb();
    f.name = "alpha:" + std::to_string(alpha);
    return f;
  }
  StandardMonotone f;
  f.name = "alpha:" + std::to_string(alpha);
  const double a = alpha;
  f.eval = [a](double x) {
    if (std::abs(x - 1.0) < 1e-7) {
      double u = x - 1.0;
      double f2 = -(a * a - a + 1.0) / 6.0;  // f''(1) of the alpha family
      return 1.0 + 0.5 * u + 0.5 * f2 * u * u;
    }
    return a * (1.0 - a) * (x - 1.0) * (x - 1.0) /
           ((1.0 - std::pow(x, a)) * (1.0 - std::pow(x, 1.0 - a)));
  };
  f.mean = generic_mean(f.eval);
  if (alpha > 1e-9 && alpha < 1.0 - 1e-9) {
    MeasureDescriptor m;
    const double c = std::sin(kPi * a) / (kPi * a * (1.0 - a));
    m.density = [a, c](double s) {
      double den = (1.0 + s) * (1.0 + s);
      return c * (std::pow(s, a) + std::pow(s, 1.0 - a)) / den;
    };
    f.measure = m;
  }
  if (alpha >= 0.0 && alpha <= 1.0) {
    f.cp_plus = TriState::No;
    f.cp_minus = TriState::Yes;
  } else if (alpha <= -0.5 || alpha >= 1.5) {
    f.cp_plus = TriState::Yes;
    f.cp_minus = TriState::No;
  } else {
    f.cp_plus = TriState::No;
    f.cp_minus = TriState::No;
  }
  return f;
}

StandardMonotone heinz_gt(double gamma) {
  if (gamma < -1e-12 || gamma > 1.0 + 1e-12)
    throw Error("heinz_gt: gamma must lie in [0, 1]");
  StandardMonotone f;
  f.name = "heinz-gt:" + std::to_string(gamma);
  const double g = gamma;
  f.eval = [g](double x) { return 0.5 * (std::pow(x, g) + std::pow(x, 1.0 - g)); };
  f.mean = [g](double a, double b) {
    require_positive(a, b);
    return 0.5 * (std::pow(a, g) * std::pow(b, 1.0 - g) +
                  std::pow(a, 1.0 - g) * std::pow(b, g));
  };
  f.cp_plus = TriState::No;
  f.cp_minus = TriState::Yes;
  return f;
}

StandardMonotone heinz_lt(double gamma) {
  if (gamma < -1e-12 || gamma > 1.0 + 1e-12)
    throw Error("heinz_lt: gamma must lie in [0, 1]");
  StandardMonotone f;
  f.name = "heinz-lt:" + std::to_string(gamma);
  const double g = gamma;
  f.eval = [g](double x) {
    return 2.0 * x / (std::pow(x, g) + std::pow(x, 1.0 - g));
  };
  f.mean = [g](double a, double b) {
    require_positive(a, b);
    return 2.0 * a * b /
           (std::pow(a, g) * std::pow(b, 1.0 - g) + std::pow(a, 1.0 - g) * std::pow(b, g));
  };
  if (gamma > 1e-9 && gamma < 1.0 - 1e-9) {
    MeasureDescriptor m;
    const double c = std::sin(kPi * g) / kPi;
    m.density = [g, c](double s) {
      return 0.5 * c * (std::pow(s, g - 1.0) + std::pow(s, -g));
    };
    m.singular_exponent = std::max(g, 1.0 - g);
    f.measure = m;
  } else {
    // gamma in {0, 1} degenerates to the harmonic function
    f.measure = dirac_measure(0.0, 0.5);
  }
  f.cp_plus = TriState::Yes;
  f.cp_minus = TriState::No;
  return f;
}

StandardMonotone info_variance() {
  StandardMonotone f;
  f.name = "variance";
  f.eval = [](double x) {
    if (std::abs(x - 1.0) < 1e-7) {
      double u = x - 1.0;
      // from f_V = f_L^2 / f_B: f''(1) = -1/3
      return 1.0 + 0.5 * u - u * u / 6.0;
    }
    double lg = std::log(x);
    return 2.0 * (x - 1.0) * (x - 1.0) / ((x + 1.0) * lg * lg);
  };
  f.mean = [](double a, double b) {
    require_positive(a, b);
    double lm = logarithmic_mean(a, b);
    return lm * lm / (0.5 * (a + b));
  };
  f.cp_plus = TriState::No;
  f.cp_minus = TriState::No;
  return f;
}

StandardMonotone extreme_point(double lambda) {
  if (lambda < -1e-12 || lambda > 1.0 + 1e-12)
    throw Error("extreme_point: lambda must lie in [0, 1]");
  StandardMonotone f;
  f.name = "lambda:" + std::to_string(lambda);
  const double l = lambda;
  f.eval = [l](double x) {
    return 0.5 * (1.0 + l) * (x / (x + l) + x / (1.0 + l * x));
  };
  f.mean = [l](double a, double b) {
    require_positive(a, b);
    return 0.5 * (1.0 + l) * (a * b / (a + l * b) + a * b / (b + l * a));
  };
  if (lambda > 1.0 - 1e-12) {
    f.cp_plus = TriState::Yes;
    f.cp_minus = TriState::No;
  } else if (lambda < 1e-12) {
    f.cp_plus = TriState::No;
    f.cp_minus = TriState::Yes;
  } else {
    f.cp_plus = TriState::No;
    f.cp_minus = TriState::No;
  }
  return f;
}

std::vector<StandardMonotone> catalog() {
  return {bures(),          wigner_yanase(),  sqrt_monotone(), kmb(),
          info_variance(),  harmonic(),       alpha_family(0.3),
          heinz_gt(0.3),    heinz_lt(0.3),    extreme_point(0.5)};
}

StandardMonotone monotone_by_name(const std::string& name) {
  auto parse_param = [&](const std::string& prefix) {
    return std::stod(name.substr(prefix.size()));
  };
  if (name == "bures") return bures();
  if (name == "harmonic") return harmonic();
  if (name == "sqrt") return sqrt_monotone();
  if (name == "kmb") return kmb();
  if (name == "wy") return wigner_yanase();
  if (name == "variance") return info_variance();
  if (name.rfind("alpha:", 0) == 0) return alpha_family(parse_param("alpha:"));
  if (name.rfind("heinz-gt:", 0) == 0) return heinz_gt(parse_param("heinz-gt:"));
  if (name.rfind("heinz-lt:", 0) == 0) return heinz_lt(parse_param("heinz-lt:"));
  if (name.rfind("lambda:", 0) == 0) return extreme_point(parse_param("lambda:"));
  throw Error("monotone_by_name: unknown monotone '" + name + "'");
}

// ------------------------------------------------------------- transforms

StandardMonotone t_transform(const StandardMonotone& f) {
  StandardMonotone t;
  t.name = "T(" + f.name + ")";
  auto eval = f.eval;
  t.eval = [eval](double x) { return x / eval(x); };
  auto m = f.mean;
  t.mean = [m](double a, double b) {
    require_positive(a, b);
    return a * b / m(a, b);
  };
  // T exchanges the two CP classes
  t.cp_plus = f.cp_minus;
  t.cp_minus = f.cp_plus;
  return t;
}

StandardConvex l_transform(const StandardMonotone& f) {
  StandardConvex g;
  g.name = "L(" + f.name + ")";
  auto eval = f.eval;
  g.eval = [eval](double x) {
    double u = x - 1.0;
    return u * u / (2.0 * eval(x));
  };
  return g;
}

StandardMonotone l_inverse(const StandardConvex& g) {
  StandardMonotone f;
  f.name = "L(" + g.name + ")";
  auto eval = g.eval;
  f.eval = [eval](double x) {
    if (std::abs(x - 1.0) < 1e-5) {
      // quadratic model through the edge of the stable window
      const double h = 1e-4;
      auto direct = [&](double y) {
        double u = y - 1.0;
        return u * u / (2.0 * eval(y));
      };
      double fp = direct(1.0 + h), fm = direct(1.0 - h);
      double f2 = (fp - 2.0 + fm) / (h * h);
      double u = x - 1.0;
      return 1.0 + 0.5 * u + 0.5 * f2 * u * u;
    }
    double u = x - 1.0;
    return u * u / (2.0 * eval(x));
  };
  f.mean = generic_mean(f.eval);
  return f;
}

StandardConvex convex_from_raw(std::string name, std::function<double(double)> g) {
  StandardConvex out;
  out.name = std::move(name);
  out.eval = std::move(g);
  return out;
}

// ------------------------------------------------------------- diagnostics

const std::vector<double>& log_grid() {
  static const std::vector<double> grid = [] {
    std::vector<double> g;
    g.reserve(401);
    for (int i = 0; i <= 400; ++i) g.push_back(std::pow(10.0, -4.0 + i * 0.02));
    return g;
  }();
  return grid;
}

bool MonotoneCheck::pass(double tol_sym, double tol_bound) const {
  return fisher_adjusted_err < 1e-12 && symmetry_err < tol_sym &&
         bound_violation < tol_bound && monotone_violation < 1e-10;
}

MonotoneCheck check_monotone(const StandardMonotone& f) {
  MonotoneCheck c;
  c.fisher_adjusted_err = std::abs(f.eval(1.0) - 1.0);
  double prev = -std::numeric_limits<double>::infinity();
  for (double x : log_grid()) {
    double v = f.eval(x);
    c.symmetry_err = std::max(c.symmetry_err, std::abs(v - x * f.eval(1.0 / x)));
    double lo = 2.0 * x / (x + 1.0), hi = 0.5 * (x + 1.0);
    c.bound_violation = std::max({c.bound_violation, lo - v, v - hi});
    c.monotone_violation = std::max(c.monotone_violation, prev - v);
    prev = v;
  }
  return c;
}

bool pointwise_leq(const StandardMonotone& f1, const StandardMonotone& f2,
                   double slack) {
  for (double x : log_grid())
    if (f1.eval(x) > f2.eval(x) + slack) return false;
  return true;
}

}  // namespace infogeom
