#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "infogeom/monotone.hpp"
#include "oracles.hpp"

using namespace infogeom;

TEST_CASE("catalog members satisfy the standard-monotone invariants") {
  for (const StandardMonotone& f : catalog()) {
    MonotoneCheck c = check_monotone(f);
    INFO(f.name);
    CHECK(c.fisher_adjusted_err < 1e-12);
    CHECK(c.symmetry_err < 1e-10);
    CHECK(c.bound_violation < 1e-10);
    CHECK(c.monotone_violation < 1e-10);
  }
}

TEST_CASE("pinned values of the extreme members") {
  CHECK(bures().eval(3.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(harmonic().eval(3.0) == doctest::Approx(1.5).epsilon(1e-14));
  StandardMonotone half = alpha_family(0.5);
  StandardMonotone wy = wigner_yanase();
  for (double x : log_grid())
    CHECK(std::abs(half.eval(x) - wy.eval(x)) <= 1e-12 * std::max(1.0, wy.eval(x)));
}

TEST_CASE("mean forms") {
  for (const StandardMonotone& f : catalog())
    for (double a : {1e-3, 0.2, 1.0, 3.7, 80.0}) {
      INFO(f.name);
      CHECK(mean(f, a, a) == doctest::Approx(a).epsilon(1e-12));
    }
  CHECK(mean(bures(), 0.3, 1.1) == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(mean(kmb(), 2.0, 1.0) == doctest::Approx(1.0 / std::log(2.0)).epsilon(1e-13));

  // the stable window agrees with the raw formula just outside of it
  StandardMonotone fl = kmb();
  double a = 1.0 + 2e-8, b = 1.0;
  double direct = b * (a / b - 1.0) / std::log(a / b);
  CHECK(mean(fl, a, b) == doctest::Approx(direct).epsilon(1e-11));

  CHECK_THROWS_AS(mean(bures(), -1.0, 1.0), Error);
}

TEST_CASE("generic mean matches closed forms near the diagonal") {
  StandardMonotone al = alpha_family(0.3);
  double a = 1.0, b = 1.0 + 1e-9;
  // forced by f(1) = 1 and f'(1) = 1/2
  double expect = 0.5 * (a + b);
  CHECK(mean(al, a, b) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("T transform") {
  StandardMonotone fb = bures(), fh = harmonic(), fsq = sqrt_monotone();
  StandardMonotone tb = t_transform(fb);
  CHECK(tb.eval(3.0) == doctest::Approx(1.5).epsilon(1e-14));
  for (double x : log_grid()) {
    CHECK(std::abs(tb.eval(x) - fh.eval(x)) < 1e-12 * std::max(1.0, fh.eval(x)));
    CHECK(std::abs(t_transform(fsq).eval(x) - fsq.eval(x)) <
          1e-12 * std::max(1.0, fsq.eval(x)));
  }
  for (const StandardMonotone& f : catalog()) {
    StandardMonotone tt = t_transform(t_transform(f));
    for (double x : {1e-4, 0.03, 0.7, 1.0, 12.0, 1e4})
      CHECK(std::abs(tt.eval(x) - f.eval(x)) < 1e-12 * std::max(1.0, f.eval(x)));
  }
}

TEST_CASE("L transform and its inverse") {
  StandardConvex gwy = l_transform(wigner_yanase());
  CHECK(gwy.eval(4.0) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(gwy.eval(1.0) == doctest::Approx(0.0));

  for (const StandardMonotone& f : {bures(), kmb(), wigner_yanase(), harmonic()}) {
    StandardMonotone back = l_inverse(l_transform(f));
    for (double x : {1e-3, 0.4, 1.0 + 1e-7, 2.2, 900.0})
      CHECK(std::abs(back.eval(x) - f.eval(x)) < 1e-9 * std::max(1.0, f.eval(x)));
  }

  // standard convex invariants for the L images
  for (const StandardMonotone& f : catalog()) {
    StandardConvex g = l_transform(f);
    CHECK(std::abs(g.eval(1.0)) < 1e-14);
    for (double x : log_grid()) {
      CHECK(g.eval(x) >= -1e-12);
      CHECK(std::abs(g.eval(x) - x * g.eval(1.0 / x)) <
            1e-10 * std::max(1.0, g.eval(x)));
    }
  }
}

TEST_CASE("extreme points") {
  StandardMonotone f1 = extreme_point(1.0), f0 = extreme_point(0.0);
  for (double x : log_grid()) {
    CHECK(std::abs(f1.eval(x) - harmonic().eval(x)) < 1e-12 * std::max(1.0, x));
    CHECK(std::abs(f0.eval(x) - bures().eval(x)) < 1e-12 * std::max(1.0, x));
  }
  for (double l : {0.0, 0.25, 0.5, 1.0})
    CHECK(extreme_point(l).eval(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(extreme_point(1.5), Error);
  CHECK_THROWS_AS(alpha_family(2.5), Error);
  CHECK_THROWS_AS(heinz_gt(1.2), Error);
}

TEST_CASE("measure quadrature") {
  auto normalization = [](double s) { return 2.0 / (1.0 + s); };
  // KMB: 2 * integral of (1+s)^{-2} over [0,1] is exactly 1
  CHECK(measure_quadrature(*kmb().measure, normalization) ==
        doctest::Approx(1.0).epsilon(1e-10));
  // Bures is a Dirac at s = 1
  auto h = [](double s) { return 3.0 + s * s; };
  CHECK(measure_quadrature(*bures().measure, h) == doctest::Approx(4.0));
  CHECK(measure_quadrature(*sqrt_monotone().measure, normalization) ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(measure_quadrature(*harmonic().measure, normalization) ==
        doctest::Approx(1.0).epsilon(1e-14));

  MeasureDescriptor empty;
  CHECK_THROWS_AS(measure_quadrature(empty, normalization), UnsupportedMeasureError);

  CHECK(!info_variance().measure.has_value());
  CHECK(!heinz_gt(0.3).measure.has_value());
}

TEST_CASE("normalization across the parametrized measures") {
  auto normalization = [](double s) { return 2.0 / (1.0 + s); };
  for (double a : {0.1, 0.3, 0.5, 0.7})
    CHECK(measure_quadrature(*alpha_family(a).measure, normalization) ==
          doctest::Approx(1.0).epsilon(1e-9));
  for (double g : {0.2, 0.5})
    CHECK(measure_quadrature(*heinz_lt(g).measure, normalization) ==
          doctest::Approx(1.0).epsilon(1e-9));
  CHECK(measure_quadrature(*wigner_yanase().measure, normalization) ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("convex combinations remain standard monotones") {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  auto garden = catalog();
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> w(garden.size());
    double sum = 0;
    for (double& v : w) {
      v = uni(rng);
      sum += v;
    }
    for (double& v : w) v /= sum;
    StandardMonotone mix;
    mix.name = "mix";
    mix.eval = [garden, w](double x) {
      double acc = 0;
      for (std::size_t i = 0; i < garden.size(); ++i) acc += w[i] * garden[i].eval(x);
      return acc;
    };
    mix.mean = generic_mean(mix.eval);
    MonotoneCheck c = check_monotone(mix);
    CHECK(c.pass());
  }
}

TEST_CASE("garden identities") {
  StandardMonotone fb = bures(), fh = harmonic(), fl = kmb(), fv = info_variance(),
                   fwy = wigner_yanase();
  for (double x : log_grid()) {
    // alpha symmetry
    CHECK(std::abs(alpha_family(0.3).eval(x) - alpha_family(0.7).eval(x)) <
          1e-10 * std::max(1.0, x));
    // f_WY(x) = f_B(sqrt(x))^2
    double fbx = fb.eval(std::sqrt(x));
    CHECK(std::abs(fwy.eval(x) - fbx * fbx) < 1e-12 * std::max(1.0, fbx * fbx));
    // f_V = f_L^2 / f_B
    double flx = fl.eval(x);
    CHECK(std::abs(fv.eval(x) - flx * flx / fb.eval(x)) <
          1e-12 * std::max(1.0, fv.eval(x)));
    // Heinz duality
    CHECK(std::abs(heinz_lt(0.3).eval(x) - t_transform(heinz_gt(0.3)).eval(x)) <
          1e-12 * std::max(1.0, x));
  }
}

TEST_CASE("registry") {
  CHECK(monotone_by_name("bures").name == "bures");
  CHECK(monotone_by_name("alpha:0.3").eval(2.0) ==
        doctest::Approx(alpha_family(0.3).eval(2.0)));
  CHECK(monotone_by_name("heinz-gt:0.2").eval(2.0) ==
        doctest::Approx(heinz_gt(0.2).eval(2.0)));
  CHECK(monotone_by_name("lambda:0.7").eval(2.0) ==
        doctest::Approx(extreme_point(0.7).eval(2.0)));
  CHECK_THROWS_AS(monotone_by_name("nope"), Error);
}
