#include "ramanmem/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ramanmem/bessel.hpp"
#include "ramanmem/warnings.hpp"
#include "measure.hpp"

namespace ramanmem {

namespace {

void check_common_grid(const ComplexEnvelope& a, const ControlProfile& control) {
  if (!(a.grid == control.grid))
    throw GridError("signal and control must share a common time grid");
}

void check_finite(const std::vector<std::complex<double>>& v, const char* what) {
  for (const auto& x : v)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
      throw std::invalid_argument(std::string(what) + " contains non-finite samples");
}

// Fraction of signal energy outside the control support (|Omega|^2 below
// kSupportCut of its peak). There the u = omega(t) map is non-invertible and
// the field passes through unchanged.
constexpr double kSupportCut = 1e-12;

double energy_outside_support(const ComplexEnvelope& a, const ControlProfile& control) {
  double peak = 0.0;
  for (const auto& r : control.rabi) peak = std::max(peak, std::norm(r));
  const double cut = kSupportCut * peak;
  const double h = a.grid.spacing();
  double outside = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    const double w = trapezoid_weight(i, a.values.size(), h) * std::norm(a.values[i]);
    total += w;
    if (std::norm(control.rabi[i]) < cut) outside += w;
  }
  return total > 0.0 ? outside / total : 0.0;
}

}  // namespace

SpinWaveProfile store(const ComplexEnvelope& a_in, const ControlProfile& control,
                      const DepthGrid& zgrid) {
  check_common_grid(a_in, control);
  check_finite(a_in.values, "a_in");
  check_finite(control.rabi, "control");

  const std::size_t nt = a_in.grid.n_points;
  const double ht = a_in.grid.spacing();
  const double c = control.coupling;

  SpinWaveProfile b(zgrid);
  if (c == 0.0) return b;

  // weighted integrand samples f(t) A(t) w_t, reused for every depth
  std::vector<std::complex<double>> weighted(nt);
  for (std::size_t k = 0; k < nt; ++k)
    weighted[k] = trapezoid_weight(k, nt, ht) * control.f[k] * a_in.values[k];

  for (std::size_t m = 0; m < zgrid.n_points; ++m) {
    const double z = zgrid.at(m);
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t k = 0; k < nt; ++k) {
      const double arg = 2.0 * c * std::sqrt(std::max(0.0, (1.0 - control.omega[k]) * z));
      acc += weighted[k] * bessel_j0(arg);
    }
    b.values[m] = acc;
  }
  return b;
}

// The Volterra correction is integrated on a fine uniform lattice in
// u = omega(t). Two pieces make the discretization robust and conservative:
//
//  * the input enters as cell averages of the measure
//      alpha_in(u) du = (f(t)/C) A_in(t) dt,
//    accumulated on the time grid and transferred through the monotone
//    inverse of omega, so signal energy in regions where Omega ~ 0 (where
//    pointwise alpha = sqrt(W) A/Omega diverges) is never sampled pointwise;
//
//  * the kernel is integrated exactly over each cell using
//      d/ds J0(2C sqrt(s)) = -C J1(2C sqrt(s))/sqrt(s),
//    so only the piecewise-constant representation of alpha_in limits the
//    order (O(h_u^2), h_u = 1/(oversample * n_t)).
//
// The correction is mapped back as A_trans = A_in - (f*(t)/C) S(omega(t));
// f* vanishes outside the control support, which implements the documented
// pass-through limit there.
ComplexEnvelope transmit(const ComplexEnvelope& a_in, const ControlProfile& control) {
  check_common_grid(a_in, control);
  check_finite(a_in.values, "a_in");
  check_finite(control.rabi, "control");

  ComplexEnvelope out = a_in;
  const double c = control.coupling;
  if (c == 0.0) return out;

  if (energy_outside_support(a_in, control) > 0.01)
    emit_warning("transmit: more than 1% of signal energy lies outside the control support");

  const std::size_t nt = a_in.grid.n_points;
  const detail::RefinedMeasure measure = detail::build_refined_measure(a_in, control);

  // The cell representation must resolve the Stark twist and the kernel
  // curvature, both of which sharpen like C^2.
  const std::size_t oversample =
      4 * std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((c * c) / 6.0)));
  const std::size_t n_cells = oversample * nt;
  const double hu = 1.0 / static_cast<double>(n_cells);

  // cell averages of alpha_in on the uniform u lattice
  std::vector<std::complex<double>> avg(n_cells);
  std::complex<double> left = measure.at(0.0);
  for (std::size_t j = 0; j < n_cells; ++j) {
    const std::complex<double> right = measure.at(static_cast<double>(j + 1) * hu);
    avg[j] = (right - left) / hu;
    left = right;
  }

  // S(u) = sum_j avg_j [J0(2C sqrt(u - e_{j+1})) - J0(2C sqrt(u - e_j))] over cells below u
  for (std::size_t k = 0; k < nt; ++k) {
    const double u = control.omega[k];
    if (u <= 0.0) continue;
    const std::size_t full = std::min(n_cells, static_cast<std::size_t>(u / hu));
    std::complex<double> s_acc(0.0, 0.0);
    double j0_lower = bessel_j0(2.0 * c * std::sqrt(u));  // edge e_0 = 0
    for (std::size_t j = 0; j < full; ++j) {
      const double upper_edge = static_cast<double>(j + 1) * hu;
      const double j0_upper = bessel_j0(2.0 * c * std::sqrt(std::max(0.0, u - upper_edge)));
      s_acc += avg[j] * (j0_upper - j0_lower);
      j0_lower = j0_upper;
    }
    if (full < n_cells && u > static_cast<double>(full) * hu) {
      s_acc += avg[full] * (1.0 - j0_lower);  // partial top cell, J0(0) = 1
    }
    out.values[k] = a_in.values[k] - std::conj(control.f[k]) / c * s_acc;
  }
  return out;
}

ComplexEnvelope retrieve(const SpinWaveProfile& b, const ControlProfile& control,
                         Direction direction) {
  check_finite(b.values, "spin wave");

  ComplexEnvelope out(control.grid);
  const double c = control.coupling;
  if (c == 0.0) return out;

  const SpinWaveProfile source = direction == Direction::backward ? b.depth_flipped() : b;
  const std::size_t nz = source.grid.n_points;
  const double hz = source.grid.spacing();

  std::vector<std::complex<double>> weighted(nz);
  for (std::size_t m = 0; m < nz; ++m)
    weighted[m] = trapezoid_weight(m, nz, hz) * source.values[m];

  for (std::size_t k = 0; k < control.grid.n_points; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t m = 0; m < nz; ++m) {
      const double arg =
          2.0 * c * std::sqrt(std::max(0.0, control.omega[k] * (1.0 - source.grid.at(m))));
      acc += weighted[m] * bessel_j0(arg);
    }
    out.values[k] = std::conj(control.f[k]) * acc;
  }
  return out;
}

EfficiencyReport efficiencies(const ComplexEnvelope& a_in, const ComplexEnvelope& a_trans,
                              const SpinWaveProfile& b_mem, const ComplexEnvelope& a_out) {
  EfficiencyReport report;
  report.n_in = a_in.photon_number();
  if (!(report.n_in > 0.0)) throw NumericsError("efficiencies: N_in = 0, ratios are undefined");
  report.n_mem = b_mem.excitation_number();
  report.n_trans = a_trans.photon_number();
  report.n_out = a_out.photon_number();
  report.eta_store = report.n_mem / report.n_in;
  report.eta_tot = report.n_out / report.n_in;
  if (report.n_mem > 0.0) report.eta_ret = report.eta_tot / report.eta_store;
  report.closure_residual = (report.n_in - report.n_mem - report.n_trans) / report.n_in;
  return report;
}

Visibility overlap_visibility(const ComplexEnvelope& a_ref, const ComplexEnvelope& a_out) {
  if (!(a_ref.grid == a_out.grid))
    throw GridError("overlap_visibility: fields must share a common time grid");
  const double n_ref = a_ref.photon_number();
  const double n_out = a_out.photon_number();
  if (!(n_ref > 0.0) || !(n_out > 0.0))
    throw NumericsError("overlap_visibility: zero-norm input");

  const double ov = std::abs(inner_product(a_ref.values, a_out.values, a_ref.grid.spacing()));
  Visibility v;
  v.balanced = ov / std::sqrt(n_ref * n_out);
  v.raw = 2.0 * ov / (n_ref + n_out);
  return v;
}

}  // namespace ramanmem
