#include "ramanmem/measurement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

#include "ramanmem/errors.hpp"
#include "ramanmem/warnings.hpp"
#include "interp.hpp"

namespace ramanmem {

namespace {

// Deterministic standard normals: mt19937_64 + Box-Muller, so artifacts are
// reproducible across standard-library implementations.
class NormalSource {
public:
  explicit NormalSource(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

private:
  double uniform() {
    return static_cast<double>(engine_()) * 0x1.0p-64;  // [0, 1)
  }
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace

ComplexEnvelope etalon_adjust(const ComplexEnvelope& a, double delay, double stretch) {
  if (!(stretch > 0.0)) throw std::invalid_argument("etalon_adjust: stretch must be positive");
  if (delay == 0.0 && stretch == 1.0) return a;

  const double n_before = a.photon_number();
  ComplexEnvelope out(a.grid);
  const double inv_sqrt = 1.0 / std::sqrt(stretch);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const double t = (a.grid.at(i) - delay) / stretch;
    out.values[i] = inv_sqrt * detail::lagrange6(a.values, a.grid, t);
  }
  if (n_before > 0.0 && out.photon_number() < 0.99 * n_before)
    emit_warning("etalon_adjust: more than 1% of the pulse energy was pushed off the grid");
  return out;
}

SpinWaveProfile spinwave_decay(const SpinWaveProfile& b, double t_store, double gamma_b) {
  if (t_store < 0.0) throw std::invalid_argument("spinwave_decay: t_store must be >= 0");
  if (gamma_b < 0.0) throw std::invalid_argument("spinwave_decay: decay rate must be >= 0");
  SpinWaveProfile out = b;
  const double factor = std::exp(-gamma_b * t_store);
  for (auto& v : out.values) v *= factor;
  return out;
}

double IntensityTrace::integral() const {
  double acc = 0.0;
  const double h = grid.spacing();
  for (std::size_t i = 0; i < values.size(); ++i) acc += trapezoid_weight(i, values.size(), h) * values[i];
  return acc;
}

double IntensityTrace::fwhm() const {
  const auto it = std::max_element(values.begin(), values.end());
  if (it == values.end() || *it <= 0.0) throw NumericsError("fwhm: empty trace");
  const double half = 0.5 * (*it);
  const std::size_t peak = static_cast<std::size_t>(it - values.begin());

  auto cross = [&](std::size_t from, bool rising) -> double {
    if (rising) {
      for (std::size_t i = from; i > 0; --i) {
        if (values[i - 1] < half && values[i] >= half) {
          const double s = (half - values[i - 1]) / (values[i] - values[i - 1]);
          return grid.at(i - 1) + s * grid.spacing();
        }
      }
    } else {
      for (std::size_t i = from; i + 1 < values.size(); ++i) {
        if (values[i] >= half && values[i + 1] < half) {
          const double s = (values[i] - half) / (values[i] - values[i + 1]);
          return grid.at(i) + s * grid.spacing();
        }
      }
    }
    throw NumericsError("fwhm: half-maximum crossing not contained in the grid");
  };

  return cross(peak, false) - cross(peak, true);
}

IntensityTrace intensity(const ComplexEnvelope& a) {
  IntensityTrace trace;
  trace.grid = a.grid;
  trace.values.resize(a.values.size());
  for (std::size_t i = 0; i < a.values.size(); ++i) trace.values[i] = std::norm(a.values[i]);
  return trace;
}

IntensityTrace detector_convolve(const ComplexEnvelope& a, double response_fwhm) {
  if (response_fwhm < 0.0)
    throw std::invalid_argument("detector_convolve: response width must be >= 0");
  IntensityTrace raw = intensity(a);
  if (response_fwhm == 0.0) return raw;

  const double h = a.grid.spacing();
  if (response_fwhm > 0.5 * a.grid.span())
    emit_warning("detector_convolve: response is long compared to the grid span, trace truncated");

  // discretely unit-normalized Gaussian kernel over +/- 6 sigma
  const double sigma = response_fwhm / (2.0 * std::sqrt(2.0 * std::log(2.0)));
  const std::size_t half_width = static_cast<std::size_t>(std::ceil(6.0 * sigma / h));
  std::vector<double> kernel(2 * half_width + 1);
  double sum = 0.0;
  for (std::size_t j = 0; j < kernel.size(); ++j) {
    const double x = (static_cast<double>(j) - static_cast<double>(half_width)) * h / sigma;
    kernel[j] = std::exp(-0.5 * x * x);
    sum += kernel[j];
  }
  for (auto& k : kernel) k /= sum * h;

  IntensityTrace out;
  out.grid = a.grid;
  out.values.assign(raw.values.size(), 0.0);
  for (std::size_t i = 0; i < raw.values.size(); ++i) {
    if (raw.values[i] == 0.0) continue;
    const double contribution = raw.values[i] * h;
    const std::size_t j_lo = i >= half_width ? i - half_width : 0;
    const std::size_t j_hi = std::min(raw.values.size() - 1, i + half_width);
    for (std::size_t j = j_lo; j <= j_hi; ++j)
      out.values[j] += contribution * kernel[j - i + half_width];
  }
  const double area_in = raw.integral();
  if (area_in > 0.0 && std::abs(out.integral() - area_in) > 1e-3 * area_in)
    emit_warning("detector_convolve: trace pushed off the grid, integrated area not preserved");
  return out;
}

FringeScan synthesize_fringes(const ComplexEnvelope& a_ref, const ComplexEnvelope& a_out,
                              const std::vector<double>& positions, double wavelength,
                              double noise_sd, std::uint64_t seed) {
  if (!(wavelength > 0.0)) throw std::invalid_argument("synthesize_fringes: wavelength must be > 0");
  const double n_ref = a_ref.photon_number();
  const double n_out = a_out.photon_number();
  if (!(n_ref > 0.0) || !(n_out > 0.0))
    throw NumericsError("synthesize_fringes: zero-norm input field");

  const std::complex<double> overlap =
      inner_product(a_ref.values, a_out.values, a_ref.grid.spacing());

  NormalSource normals(seed);
  FringeScan scan;
  scan.positions = positions;
  scan.noise_seed = seed;
  scan.intensities.reserve(positions.size());
  for (const double x : positions) {
    const std::complex<double> rot = std::polar(1.0, 2.0 * M_PI * x / wavelength);
    double value = n_ref + n_out + 2.0 * (rot * overlap).real();
    if (noise_sd > 0.0) value += noise_sd * normals.next();
    scan.intensities.push_back(std::max(0.0, value));
  }
  return scan;
}

namespace {

struct SinusoidFit {
  double i0 = 0.0;
  double a = 0.0;  // sin coefficient
  double b = 0.0;  // cos coefficient
  double rss = 0.0;
};

// Linear least squares of I = i0 + a sin(2 pi x/p) + b cos(2 pi x/p) via the
// 3x3 normal equations.
SinusoidFit fit_at_period(const FringeScan& scan, double p) {
  const std::size_t n = scan.positions.size();
  std::array<double, 9> m{};
  std::array<double, 3> rhs{};
  for (std::size_t i = 0; i < n; ++i) {
    const double arg = 2.0 * M_PI * scan.positions[i] / p;
    const std::array<double, 3> g{1.0, std::sin(arg), std::cos(arg)};
    for (int r = 0; r < 3; ++r) {
      rhs[r] += g[r] * scan.intensities[i];
      for (int c2 = 0; c2 < 3; ++c2) m[3 * r + c2] += g[r] * g[c2];
    }
  }
  // Gaussian elimination with partial pivoting
  std::array<double, 3> sol = rhs;
  std::array<double, 9> a = m;
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(a[3 * r + col]) > std::abs(a[3 * pivot + col])) pivot = r;
    if (std::abs(a[3 * pivot + col]) < 1e-300) throw NumericsError("fit_fringes: singular system");
    if (pivot != col) {
      for (int c2 = 0; c2 < 3; ++c2) std::swap(a[3 * pivot + c2], a[3 * col + c2]);
      std::swap(sol[pivot], sol[col]);
    }
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double factor = a[3 * r + col] / a[3 * col + col];
      for (int c2 = 0; c2 < 3; ++c2) a[3 * r + c2] -= factor * a[3 * col + c2];
      sol[r] -= factor * sol[col];
    }
  }
  SinusoidFit fit;
  fit.i0 = sol[0] / a[0];
  fit.a = sol[1] / a[4];
  fit.b = sol[2] / a[8];

  for (std::size_t i = 0; i < n; ++i) {
    const double arg = 2.0 * M_PI * scan.positions[i] / p;
    const double model = fit.i0 + fit.a * std::sin(arg) + fit.b * std::cos(arg);
    const double r = scan.intensities[i] - model;
    fit.rss += r * r;
  }
  return fit;
}

}  // namespace

FringeFit fit_fringes(const FringeScan& scan, double period_guess) {
  if (scan.positions.size() != scan.intensities.size())
    throw std::invalid_argument("fit_fringes: positions/intensities length mismatch");
  if (scan.positions.size() < 8) throw std::invalid_argument("fit_fringes: need >= 8 points");
  if (!(period_guess > 0.0)) throw std::invalid_argument("fit_fringes: period guess must be > 0");
  const auto [min_it, max_it] = std::minmax_element(scan.positions.begin(), scan.positions.end());
  if (*max_it - *min_it < period_guess)
    throw std::invalid_argument("fit_fringes: scan must span at least one period");

  // coarse scan +/- 10% around the guess, then two parabolic refinements
  double best_p = period_guess;
  double best_rss = fit_at_period(scan, period_guess).rss;
  double step = 0.02 * period_guess;
  for (int k = -5; k <= 5; ++k) {
    const double p = period_guess + step * k;
    if (p <= 0.0) continue;
    const double rss = fit_at_period(scan, p).rss;
    if (rss < best_rss) {
      best_rss = rss;
      best_p = p;
    }
  }
  for (int refine = 0; refine < 2; ++refine) {
    const double r_minus = fit_at_period(scan, best_p - step).rss;
    const double r_plus = fit_at_period(scan, best_p + step).rss;
    const double denom = r_minus - 2.0 * best_rss + r_plus;
    if (std::abs(denom) > 0.0) {
      const double shift = 0.5 * step * (r_minus - r_plus) / denom;
      const double p_new = best_p + std::clamp(shift, -step, step);
      const double rss_new = fit_at_period(scan, p_new).rss;
      if (rss_new < best_rss) {
        best_rss = rss_new;
        best_p = p_new;
      }
    }
    step *= 0.25;
  }

  const SinusoidFit fit = fit_at_period(scan, best_p);
  if (!(fit.i0 > 0.0)) throw NumericsError("fit_fringes: nonpositive mean intensity");

  FringeFit result;
  result.mean_intensity = fit.i0;
  result.period = best_p;
  result.phase = std::atan2(fit.b, fit.a);
  result.residual_norm = std::sqrt(fit.rss);
  const double v = std::hypot(fit.a, fit.b) / fit.i0;
  result.visibility = std::clamp(v, 0.0, 1.0);
  result.visibility_clamped = v > 1.0;
  return result;
}

}  // namespace ramanmem
