#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ramanmem/envelope.hpp"
#include "ramanmem/warnings.hpp"
#include "test_support.hpp"

using namespace ramanmem;

namespace {
const TimeGrid kGrid(-1.6e-9, 1.9e-9, 1024);
}

TEST_CASE("gaussian envelope has the stated intensity FWHM and norm") {
  ComplexEnvelope env = gaussian_envelope(kGrid, 0.0, 300e-12, 1.0);
  CHECK(env.photon_number() == doctest::Approx(1.0).epsilon(1e-9));

  // |A|^2 falls to half its peak at +/- fwhm/2
  double peak = 0.0;
  for (const auto& v : env.values) peak = std::max(peak, std::norm(v));
  auto intensity_at = [&](double t) {
    const double s = 300e-12 / (2.0 * std::sqrt(2.0 * std::log(2.0)));
    return peak * std::exp(-0.5 * (t / s) * (t / s));
  };
  CHECK(intensity_at(150e-12) == doctest::Approx(0.5 * peak).epsilon(1e-12));
}

TEST_CASE("zero norm gives the zero envelope") {
  ComplexEnvelope env = gaussian_envelope(kGrid, 0.0, 300e-12, 0.0);
  for (const auto& v : env.values) CHECK(v == std::complex<double>(0.0, 0.0));
  CHECK(env.photon_number() == 0.0);
}

TEST_CASE("doubling the norm doubles the photon number exactly") {
  ComplexEnvelope one = gaussian_envelope(kGrid, 0.0, 300e-12, 1.0);
  ComplexEnvelope two = gaussian_envelope(kGrid, 0.0, 300e-12, 2.0);
  CHECK(two.photon_number() == doctest::Approx(2.0 * one.photon_number()).epsilon(1e-14));
}

TEST_CASE("constant phase does not change the photon number") {
  ComplexEnvelope a = gaussian_envelope(kGrid, 0.0, 300e-12, 1.0);
  ComplexEnvelope b = gaussian_envelope(kGrid, 0.0, 300e-12, 1.0, 1.234);
  CHECK(a.photon_number() == doctest::Approx(b.photon_number()).epsilon(1e-14));
}

TEST_CASE("invalid parameters") {
  CHECK_THROWS_AS(gaussian_envelope(kGrid, 0.0, -1e-12, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(gaussian_envelope(kGrid, 0.0, 0.0, 1.0), std::invalid_argument);
  // < 8 samples per fwhm
  CHECK_THROWS_AS(gaussian_envelope(TimeGrid(-1e-9, 1e-9, 32), 0.0, 100e-12, 1.0), GridError);
}

TEST_CASE("truncation warning when the grid does not span center +/- 3 fwhm") {
  auto warnings = capture_warnings([] {
    gaussian_envelope(TimeGrid(-0.5e-9, 0.5e-9, 1024), 0.0, 300e-12, 1.0);
  });
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("truncated") != std::string::npos);

  auto none = capture_warnings([] { gaussian_envelope(kGrid, 0.0, 300e-12, 1.0); });
  CHECK(none.empty());
}

TEST_CASE("centroid of a shifted pulse") {
  ComplexEnvelope env = gaussian_envelope(kGrid, 200e-12, 300e-12, 1.0);
  CHECK(env.centroid() == doctest::Approx(200e-12).epsilon(1e-9));
}

TEST_CASE("grid invariants") {
  CHECK_THROWS_AS(TimeGrid(0.0, 1.0, 1), GridError);
  CHECK_THROWS_AS(TimeGrid(1.0, 0.0, 16), GridError);
  CHECK_THROWS_AS(DepthGrid(1), GridError);
  DepthGrid z(257);
  CHECK(z.at(0) == 0.0);
  CHECK(z.at(256) == 1.0);
}
