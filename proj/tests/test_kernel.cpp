#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ramanmem/kernel.hpp"
#include "ramanmem/warnings.hpp"
#include "test_support.hpp"

using namespace ramanmem;

namespace {

const TimeGrid kGrid(-1.6e-9, 1.9e-9, 1024);
const DepthGrid kDepth(512);

PhysicalParams params_with_coupling(double c) {
  PhysicalParams p;
  p.optical_depth = 1800.0;
  p.gamma = 2.0 * M_PI * 8.5e6;
  p.detuning = 2.0 * M_PI * 18.4e9;
  p.pulse_energy = 4.8e-9;
  p.control_fwhm = 300e-12;
  p.signal_fwhm = 300e-12;
  p.signal_delay = 200e-12;
  const double w = c * c * p.detuning * p.detuning / (p.optical_depth * p.gamma);
  p.kappa = w / p.pulse_energy;
  return p;
}

ControlProfile control_with_coupling(double c, const TimeGrid& grid = kGrid) {
  return build_control(params_with_coupling(c), grid, 0.0);
}

ComplexEnvelope signal_envelope(const TimeGrid& grid = kGrid, double delay = 200e-12) {
  return gaussian_envelope(grid, delay, 300e-12, 1.0);
}

}  // namespace

TEST_CASE("zero coupling: no storage, full transmission") {
  ControlProfile c0 = control_with_coupling(0.0);
  ComplexEnvelope a_in = signal_envelope();
  SpinWaveProfile b = store(a_in, c0, kDepth);
  CHECK(b.excitation_number() == 0.0);
  ComplexEnvelope a_tr = transmit(a_in, c0);
  for (std::size_t i = 0; i < a_in.values.size(); ++i) CHECK(a_tr.values[i] == a_in.values[i]);
}

TEST_CASE("zero input: nothing stored, nothing retrieved") {
  ControlProfile c = control_with_coupling(1.0);
  ComplexEnvelope zero(kGrid);
  SpinWaveProfile b = store(zero, c, kDepth);
  CHECK(b.excitation_number() == 0.0);
  ComplexEnvelope out = retrieve(b, c, Direction::forward);
  CHECK(out.photon_number() == 0.0);
}

TEST_CASE("store is linear in the input") {
  ControlProfile c = control_with_coupling(1.3);
  ComplexEnvelope x = testsupport::random_envelope(kGrid, 11);
  ComplexEnvelope y = testsupport::random_envelope(kGrid, 22);
  const std::complex<double> alpha(0.7, -0.4);
  const std::complex<double> beta(-0.2, 1.1);

  ComplexEnvelope mix(kGrid);
  for (std::size_t i = 0; i < mix.values.size(); ++i)
    mix.values[i] = alpha * x.values[i] + beta * y.values[i];

  SpinWaveProfile bx = store(x, c, kDepth);
  SpinWaveProfile by = store(y, c, kDepth);
  SpinWaveProfile bmix = store(mix, c, kDepth);

  std::vector<std::complex<double>> expected(bx.values.size());
  for (std::size_t i = 0; i < expected.size(); ++i)
    expected[i] = alpha * bx.values[i] + beta * by.values[i];
  CHECK(testsupport::rel_l2_diff(bmix.values, expected) < 1e-10);
}

TEST_CASE("passivity over couplings in [0, 10]") {
  ComplexEnvelope a_in = signal_envelope();
  for (double c : {0.25, 0.5, 1.0, 2.0, 4.0, 7.0, 10.0}) {
    ControlProfile ctrl = control_with_coupling(c);
    SpinWaveProfile b = store(a_in, ctrl, kDepth);
    const double eta_store = b.excitation_number() / a_in.photon_number();
    CHECK(eta_store >= 0.0);
    CHECK(eta_store <= 1.0 + 1e-9);
    ComplexEnvelope out = retrieve(b, ctrl, Direction::forward);
    const double eta_tot = out.photon_number() / a_in.photon_number();
    CHECK(eta_tot <= eta_store + 1e-9);  // readout is passive too
  }
}

TEST_CASE("energy closure and its grid-refinement order") {
  ComplexEnvelope a_in = signal_envelope();
  for (double c : {0.5, 1.0, 2.0, 5.0}) {
    ControlProfile ctrl = control_with_coupling(c);
    SpinWaveProfile b = store(a_in, ctrl, kDepth);
    ComplexEnvelope a_tr = transmit(a_in, ctrl);
    const double n_in = a_in.photon_number();
    const double residual = (n_in - b.excitation_number() - a_tr.photon_number()) / n_in;
    CAPTURE(c);
    CHECK(std::abs(residual) <= 1e-4);
  }

  // refinement shrinks the residual roughly like h^2
  const TimeGrid fine_grid(-1.6e-9, 1.9e-9, 2048);
  const DepthGrid fine_depth(1024);
  ComplexEnvelope a_fine = signal_envelope(fine_grid);
  ControlProfile ctrl_coarse = control_with_coupling(2.0);
  ControlProfile ctrl_fine = control_with_coupling(2.0, fine_grid);

  const double n_in = a_in.photon_number();
  SpinWaveProfile b_c = store(a_in, ctrl_coarse, kDepth);
  ComplexEnvelope t_c = transmit(a_in, ctrl_coarse);
  const double res_c = std::abs((n_in - b_c.excitation_number() - t_c.photon_number()) / n_in);

  const double n_in_f = a_fine.photon_number();
  SpinWaveProfile b_f = store(a_fine, ctrl_fine, fine_depth);
  ComplexEnvelope t_f = transmit(a_fine, ctrl_fine);
  const double res_f =
      std::abs((n_in_f - b_f.excitation_number() - t_f.photon_number()) / n_in_f);
  CHECK(res_f < res_c / 2.0);  // ~4x expected; require at least 2x
}

TEST_CASE("backward retrieval beats forward at large coupling") {
  ComplexEnvelope a_in = signal_envelope();
  for (double c : {2.0, 3.0, 5.0}) {
    ControlProfile ctrl = control_with_coupling(c);
    SpinWaveProfile b = store(a_in, ctrl, kDepth);
    const double fwd = retrieve(b, ctrl, Direction::forward).photon_number();
    const double bwd = retrieve(b, ctrl, Direction::backward).photon_number();
    CAPTURE(c);
    CHECK(bwd >= fwd);
  }
}

TEST_CASE("efficiencies bookkeeping") {
  ControlProfile ctrl = control_with_coupling(0.8);
  ComplexEnvelope a_in = signal_envelope();
  SpinWaveProfile b = store(a_in, ctrl, kDepth);
  ComplexEnvelope a_tr = transmit(a_in, ctrl);
  ComplexEnvelope a_out = retrieve(b, ctrl, Direction::forward);
  EfficiencyReport report = efficiencies(a_in, a_tr, b, a_out);

  CHECK(report.eta_store == doctest::Approx(report.n_mem / report.n_in));
  CHECK(report.eta_tot == doctest::Approx(report.n_out / report.n_in));
  REQUIRE(report.eta_ret.has_value());
  CHECK(*report.eta_ret == doctest::Approx(report.eta_tot / report.eta_store));
  CHECK(std::abs(report.closure_residual) <= 1e-4);
}

TEST_CASE("zero control efficiencies: eta = 0, transmission = 1") {
  ControlProfile c0 = control_with_coupling(0.0);
  ComplexEnvelope a_in = signal_envelope();
  SpinWaveProfile b = store(a_in, c0, kDepth);
  ComplexEnvelope a_tr = transmit(a_in, c0);
  ComplexEnvelope a_out = retrieve(b, c0, Direction::forward);
  EfficiencyReport report = efficiencies(a_in, a_tr, b, a_out);
  CHECK(report.eta_store == 0.0);
  CHECK(report.eta_tot == 0.0);
  CHECK_FALSE(report.eta_ret.has_value());
  CHECK(report.n_trans == doctest::Approx(report.n_in).epsilon(1e-12));
}

TEST_CASE("efficiencies rejects zero input") {
  ControlProfile ctrl = control_with_coupling(0.5);
  ComplexEnvelope zero(kGrid);
  SpinWaveProfile b(kDepth);
  CHECK_THROWS_AS(efficiencies(zero, zero, b, zero), NumericsError);
}

TEST_CASE("mismatched grids are rejected") {
  ControlProfile ctrl = control_with_coupling(1.0);
  ComplexEnvelope other(TimeGrid(-1e-9, 1e-9, 512));
  CHECK_THROWS_AS(store(other, ctrl, kDepth), GridError);
  CHECK_THROWS_AS(transmit(other, ctrl), GridError);
}

TEST_CASE("NaN input is rejected") {
  ControlProfile ctrl = control_with_coupling(1.0);
  ComplexEnvelope bad = signal_envelope();
  bad.values[10] = std::complex<double>(std::nan(""), 0.0);
  CHECK_THROWS_AS(store(bad, ctrl, kDepth), std::invalid_argument);
}

TEST_CASE("visibility: proportional fields give exactly 1") {
  ComplexEnvelope a = testsupport::random_envelope(kGrid, 5);
  ComplexEnvelope b = a;
  const std::complex<double> scale(0.3, -0.8);
  for (auto& v : b.values) v *= scale;
  Visibility v = overlap_visibility(a, b);
  CHECK(v.balanced == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(v.raw <= v.balanced + 1e-15);
}

TEST_CASE("visibility: disjoint fields give 0") {
  ComplexEnvelope a = gaussian_envelope(kGrid, -1.0e-9, 80e-12, 1.0);
  ComplexEnvelope b = gaussian_envelope(kGrid, 1.2e-9, 80e-12, 1.0);
  Visibility v = overlap_visibility(a, b);
  CHECK(v.balanced < 1e-12);
}

TEST_CASE("visibility is invariant under global phase") {
  ComplexEnvelope a = testsupport::random_envelope(kGrid, 7);
  ComplexEnvelope b = testsupport::random_envelope(kGrid, 8);
  Visibility v1 = overlap_visibility(a, b);
  for (auto& x : b.values) x *= std::polar(1.0, 2.1);
  Visibility v2 = overlap_visibility(a, b);
  CHECK(v1.balanced == doctest::Approx(v2.balanced).epsilon(1e-13));
  CHECK(v1.balanced >= 0.0);
  CHECK(v1.balanced <= 1.0 + 1e-12);
}

TEST_CASE("visibility rejects zero-norm input") {
  ComplexEnvelope a = signal_envelope();
  ComplexEnvelope zero(kGrid);
  CHECK_THROWS_AS(overlap_visibility(a, zero), NumericsError);
}

TEST_CASE("out-of-support warning fires for a far-delayed signal") {
  ControlProfile ctrl = control_with_coupling(1.0);
  ComplexEnvelope late = gaussian_envelope(kGrid, 1.3e-9, 150e-12, 1.0);
  auto warnings = capture_warnings([&] { transmit(late, ctrl); });
  REQUIRE(!warnings.empty());
  CHECK(warnings.back().find("outside the control support") != std::string::npos);
}
