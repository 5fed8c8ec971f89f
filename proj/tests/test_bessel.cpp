#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ramanmem/bessel.hpp"
#include "test_support.hpp"

using ramanmem::bessel_j0;
using ramanmem::bessel_j1;
using testsupport::bessel_oracle;

TEST_CASE("known values") {
  CHECK(bessel_j0(0.0) == 1.0);
  CHECK(bessel_j1(0.0) == 0.0);
  // first zeros
  CHECK(std::abs(bessel_j0(2.404825557695773)) < 1e-13);
  CHECK(std::abs(bessel_j1(3.831705970207512)) < 1e-13);
}

TEST_CASE("matches the integral oracle on [0, 50]") {
  double worst0 = 0.0;
  double worst1 = 0.0;
  for (double x = 0.0; x <= 50.0; x += 0.1) {
    worst0 = std::max(worst0, std::abs(bessel_j0(x) - static_cast<double>(bessel_oracle(0, x))));
    worst1 = std::max(worst1, std::abs(bessel_j1(x) - static_cast<double>(bessel_oracle(1, x))));
  }
  CHECK(worst0 < 1e-10);
  CHECK(worst1 < 1e-10);
}

TEST_CASE("dense scan across the series/asymptotic crossover") {
  for (double x = 11.0; x <= 16.0; x += 0.003) {
    CHECK(std::abs(bessel_j0(x) - static_cast<double>(bessel_oracle(0, x))) < 1e-10);
    CHECK(std::abs(bessel_j1(x) - static_cast<double>(bessel_oracle(1, x))) < 1e-10);
  }
}

TEST_CASE("large arguments stay accurate") {
  for (double x : {75.0, 120.0, 500.0, 1000.0}) {
    CHECK(std::abs(bessel_j0(x) - static_cast<double>(bessel_oracle(0, x, 8192))) < 1e-10);
    CHECK(std::abs(bessel_j1(x) - static_cast<double>(bessel_oracle(1, x, 8192))) < 1e-10);
  }
}

TEST_CASE("negative arguments are rejected") {
  CHECK_THROWS_AS(bessel_j0(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(bessel_j1(-0.5), std::invalid_argument);
}
