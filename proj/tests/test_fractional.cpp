#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fracmech/fractional.hpp"

using namespace fracmech;

TEST_CASE("fractional order range is enforced at construction") {
  CHECK_NOTHROW(FractionalOrder(0.5));
  CHECK_NOTHROW(FractionalOrder(1.0));
  CHECK_NOTHROW(FractionalOrder(0.77));
  CHECK_THROWS_AS(FractionalOrder(0.49), std::invalid_argument);
  CHECK_THROWS_AS(FractionalOrder(1.01), std::invalid_argument);
  CHECK_THROWS_AS(FractionalOrder(-0.5), std::invalid_argument);
  CHECK(FractionalOrder::unchecked(0.3).value() == 0.3);
}

TEST_CASE("gamma prefactor") {
  CHECK(gamma_prefactor(FractionalOrder(1.0)) == doctest::Approx(0.5).epsilon(1e-15));
  // 0.5*Gamma(1.5) = sqrt(pi)/4
  CHECK(gamma_prefactor(FractionalOrder(0.5)) ==
        doctest::Approx(0.44311346272637900682).epsilon(1e-14));
  // frozen from a 40-digit Gamma evaluation
  CHECK(gamma_prefactor(FractionalOrder(0.75)) ==
        doctest::Approx(0.45320123852773853899).epsilon(1e-14));
}

TEST_CASE("attenuation kernel point values") {
  const Horizon h(1.0, 1.0);
  SUBCASE("vanishes at integer order") {
    CHECK(attenuation_kernel(0.0, 0.25, h, FractionalOrder(1.0)).weight == 0.0);
    CHECK(attenuation_kernel(0.0, -0.5, h, FractionalOrder(1.0)).weight == 0.0);
  }
  SUBCASE("direct substitution at alpha = 0.5") {
    // 0.5*(1-a)*l^(a-1)*d^(-a) = 0.25 * 1 * 0.25^(-0.5) = 0.5
    const KernelEval k = attenuation_kernel(0.0, 0.25, h, FractionalOrder(0.5));
    CHECK(k.weight == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(k.side == KernelSide::right);
  }
  SUBCASE("left-right symmetry for symmetric horizons") {
    const FractionalOrder a(0.7);
    for (double d : {0.05, 0.3, 0.9}) {
      CHECK(attenuation_kernel(0.0, -d, h, a).weight ==
            doctest::Approx(attenuation_kernel(0.0, d, h, a).weight).epsilon(1e-15));
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(attenuation_kernel(0.0, 0.0, h, FractionalOrder(0.7)), std::domain_error);
    CHECK_THROWS_AS(attenuation_kernel(0.0, 1.5, h, FractionalOrder(0.7)), std::out_of_range);
    CHECK_THROWS_AS(attenuation_kernel(0.0, -1.0, h, FractionalOrder(0.7)), std::out_of_range);
  }
}

TEST_CASE("kernel moments: analytic values against an independent quadrature oracle") {
  // elem left of the evaluation point, symmetric horizon; frozen from an
  // adaptive quadrature with graded subdivision toward the singularity
  const Horizon h(0.5, 0.5);
  const auto m = element_kernel_moments(0.2, 0.3, 0.35, FractionalOrder(0.75), h, 2);
  CHECK(m[0] == doctest::Approx(0.088870739650968085086).epsilon(1e-13));
  CHECK(m[1] == doctest::Approx(0.022815223436406296424).epsilon(1e-13));
  CHECK(m[2] == doctest::Approx(0.0059309913420241807088).epsilon(1e-13));
}

TEST_CASE("kernel moments: integer order gives the zero vector") {
  const auto m = element_kernel_moments(0.2, 0.6, 0.5, FractionalOrder(1.0), Horizon(0.5, 0.5), 2);
  CHECK(m[0] == 0.0);
  CHECK(m[1] == 0.0);
  CHECK(m[2] == 0.0);
}

TEST_CASE("kernel moments: empty intersection is a zero vector, not an error") {
  const auto m = element_kernel_moments(2.0, 3.0, 0.5, FractionalOrder(0.6), Horizon(0.2, 0.2), 1);
  CHECK(m[0] == 0.0);
  CHECK(m[1] == 0.0);
}

TEST_CASE("kernel normalization: moments over any covering sum to exactly 1") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> ua(0.5, 1.0), ul(0.05, 2.0), ux(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const FractionalOrder a(ua(rng));
    if (a.value() == 1.0) continue;
    const Horizon h(ul(rng), ul(rng));
    const double x = ux(rng);
    // random subdivision of the horizon into 7 elements
    double lo = x - h.l_a, hi = x + h.l_b;
    double total = 0.0;
    const int ne = 7;
    for (int e = 0; e < ne; ++e) {
      const double a0 = lo + (hi - lo) * e / ne;
      const double a1 = lo + (hi - lo) * (e + 1) / ne;
      total += element_kernel_moments(a0, a1, x, a, h, 0)[0];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("reference derivative: constant fields map to zero") {
  auto zero = [](double) { return 0.0; };
  for (double a : {0.5, 0.75, 0.99, 1.0}) {
    CHECK(std::abs(rc_derivative_point(zero, 0.3, FractionalOrder(a), Horizon(0.3, 0.7))) < 1e-12);
  }
}

TEST_CASE("reference derivative: exact slope of linear fields on any truncated horizon") {
  auto one = [](double) { return 1.0; };
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ua(0.5, 1.0), ul(0.01, 1.5);
  for (int trial = 0; trial < 20; ++trial) {
    const FractionalOrder a(ua(rng));
    const Horizon h(ul(rng), ul(rng));
    const double d = rc_derivative_point(one, 0.0, a, h);
    CHECK(d == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("reference derivative: quadratic closed form") {
  // For f(x) = x^2: D^a f(x) = 2x + (1-a)(l_b - l_a)/(2-a), by closed-form
  // integration of the two one-sided integrals; the symmetric case is 2x.
  auto df = [](double s) { return 2.0 * s; };
  SUBCASE("symmetric horizon") {
    for (double a : {0.5, 0.65, 0.8, 0.95}) {
      for (double x : {0.4, 1.7}) {
        const double d = rc_derivative_point(df, x, FractionalOrder(a), Horizon(0.35, 0.35));
        CHECK(d == doctest::Approx(2.0 * x).epsilon(1e-11));
      }
    }
  }
  SUBCASE("asymmetric horizon") {
    for (double a : {0.5, 0.72, 0.9}) {
      const Horizon h(0.2, 0.6);
      const double x = 0.9;
      const double expect = 2.0 * x + (1.0 - a) * (h.l_b - h.l_a) / (2.0 - a);
      CHECK(rc_derivative_point(df, x, FractionalOrder(a), h) ==
            doctest::Approx(expect).epsilon(1e-11));
    }
  }
}

TEST_CASE("reference derivative: one-sided boundary reduction") {
  // With l_a = 0 the left contribution collapses to half the local slope.
  auto df = [](double s) { return 2.0 * s; };
  const double x = 0.0;
  const FractionalOrder a(0.75);
  const Horizon h(0.0, 0.5);
  // right side of the quadratic formula: x + (1-a) l_b/(2-a); left: f'(x)/2
  const double expect = 0.5 * (2.0 * x) + (x + (1.0 - a.value()) * h.l_b / (2.0 - a.value()));
  CHECK(rc_derivative_point(df, x, a, h) == doctest::Approx(expect).epsilon(1e-11));
}

TEST_CASE("reference derivative: degenerate horizon is an error") {
  auto df = [](double) { return 1.0; };
  CHECK_THROWS_AS(rc_derivative_point(df, 0.0, FractionalOrder(0.8), Horizon(0.0, 0.0)),
                  std::invalid_argument);
}

TEST_CASE("integer-order limit approaches the first derivative monotonically") {
  auto f_prime = [](double s) { return std::cos(s) + 0.4 * s; };
  const double x = 0.6;
  const Horizon h(0.4, 0.4);
  const double eps = 1e-6;
  const double fd = (std::sin(x + eps) + 0.2 * (x + eps) * (x + eps) -
                     std::sin(x - eps) - 0.2 * (x - eps) * (x - eps)) /
                    (2.0 * eps);
  double prev = 1e9;
  for (double a : {0.9, 0.99, 0.999}) {
    const double err = std::abs(rc_derivative_point(f_prime, x, FractionalOrder(a), h) - fd);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("gauss rules integrate polynomials exactly") {
  const GaussRule g3 = gauss_legendre(3);
  double s = 0.0;
  for (int i = 0; i < 3; ++i) s += g3.weights[i] * std::pow(g3.points[i], 4);
  CHECK(s == doctest::Approx(2.0 / 5.0).epsilon(1e-14));
  const GaussRule g16 = gauss_legendre(16);
  double w = 0.0;
  for (double wi : g16.weights) w += wi;
  CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
}
