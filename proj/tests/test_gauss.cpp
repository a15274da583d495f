#include "doctest.h"

#include <cmath>

#include "gsmt/gauss.hpp"
#include "generators.hpp"

using namespace gsmt;

TEST_SUITE_BEGIN("gauss");

TEST_CASE("cdf at zero and symmetry") {
  CHECK(normal_cdf(0.0) == 0.5);
  for (double x : {0.1, 0.7, 1.3, 2.5, 4.0, 7.0}) {
    CHECK(std::fabs(normal_cdf(-x) + normal_cdf(x) - 1.0) <= 1e-15);
    CHECK(normal_tail(x) == doctest::Approx(normal_cdf(-x)).epsilon(1e-14));
  }
}

TEST_CASE("quantile reference constants") {
  CHECK(std::fabs(normal_quantile(0.975) - 1.959963984540054) <= 1e-12);
  CHECK(std::fabs(normal_quantile(0.99) - 2.3263478740408408) <= 1e-12);
  CHECK(normal_quantile(0.5) == 0.0);
  CHECK(std::fabs(normal_quantile(0.025) + 1.959963984540054) <= 1e-12);
}

TEST_CASE("cdf and quantile are mutually inverse") {
  // log-spaced p down to 1e-10 on both tails
  for (double p = 1e-10; p < 0.5; p *= 3.7) {
    for (double q : {p, 1.0 - p}) {
      const double x = normal_quantile(q);
      CHECK(std::fabs(normal_cdf(x) - q) <= 1e-12);
    }
  }
  CHECK(std::fabs(normal_quantile(normal_cdf(1.7)) - 1.7) <= 1e-12);
}

TEST_CASE("quantile rejects the endpoints") {
  CHECK_THROWS_AS(normal_quantile(0.0), std::invalid_argument);
  CHECK_THROWS_AS(normal_quantile(1.0), std::invalid_argument);
  CHECK_THROWS_AS(normal_quantile(-0.1), std::invalid_argument);
}

TEST_CASE("bivariate cdf closed-form identities") {
  // independence
  for (double h : {-1.0, 0.3, 2.0}) {
    for (double k : {-0.5, 1.2}) {
      CHECK(std::fabs(bivariate_normal_cdf(h, k, 0.0) - normal_cdf(h) * normal_cdf(k)) <= 1e-14);
    }
  }
  // Phi2(0,0,rho) = 1/4 + asin(rho)/(2 pi), exact
  for (double rho : {-0.95, -0.6, -0.2, 0.0, 0.33, 0.7, 0.925, 0.99}) {
    const double expected = 0.25 + std::asin(rho) / (2.0 * std::acos(-1.0));
    CHECK(std::fabs(bivariate_normal_cdf(0.0, 0.0, rho) - expected) <= 1e-13);
  }
  // degenerate correlations
  CHECK(bivariate_normal_cdf(1.0, 2.0, 1.0) == doctest::Approx(normal_cdf(1.0)).epsilon(1e-15));
  CHECK(bivariate_normal_cdf(0.5, -0.5, -1.0) ==
        doctest::Approx(normal_cdf(0.5) + normal_cdf(-0.5) - 1.0).epsilon(1e-12));
}

TEST_CASE("bivariate cdf against plain Monte Carlo") {
  gen::Rng rng(20240811u);
  for (int trial = 0; trial < 6; ++trial) {
    const double h = rng.uniform(-2.0, 2.5);
    const double k = rng.uniform(-2.0, 2.5);
    const double rho = rng.uniform(-0.99, 0.99);
    const long n = 2000000;
    const double s = std::sqrt(1.0 - rho * rho);
    long count = 0;
    for (long i = 0; i < n; ++i) {
      // Box-Muller keeps the oracle independent of the quantile code
      const double u1 = std::max(rng.uniform(), 1e-300);
      const double u2 = rng.uniform();
      const double r = std::sqrt(-2.0 * std::log(u1));
      const double z1 = r * std::cos(6.283185307179586 * u2);
      const double z2 = r * std::sin(6.283185307179586 * u2);
      const double y = rho * z1 + s * z2;
      if (z1 <= h && y <= k) ++count;
    }
    const double mc = static_cast<double>(count) / n;
    const double se = std::sqrt(mc * (1.0 - mc) / n);
    const double exact = bivariate_normal_cdf(h, k, rho);
    CHECK(std::fabs(exact - mc) <= 4.0 * se + 1e-12);
  }
}

TEST_SUITE_END();
