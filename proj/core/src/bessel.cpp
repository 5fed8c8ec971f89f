#include "ramanmem/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace ramanmem {

namespace {

constexpr double kSeriesAsymptoticCrossover = 13.0;

// Ascending power series. Roundoff grows like the largest term, which stays
// below ~5e3 for x <= 13, so absolute error is a few 1e-13 at the crossover.
double j0_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 80; ++k) {
    term *= -q / (static_cast<double>(k) * static_cast<double>(k));
    sum += term;
    if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
  }
  return sum;
}

double j1_series(double x) {
  const double q = 0.25 * x * x;
  double term = 0.5 * x;
  double sum = term;
  for (int k = 1; k < 80; ++k) {
    term *= -q / (static_cast<double>(k) * static_cast<double>(k + 1));
    sum += term;
    if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
  }
  return sum;
}

// Hankel expansion J_n(x) ~ sqrt(2/(pi x)) [P cos(chi) - Q sin(chi)],
// chi = x - (2n+1) pi/4. Terms are summed until they stop decreasing; at
// x >= 13 the smallest term is ~e^{-2x}, far below the accuracy target.
double j_asymptotic(int n, double x) {
  const double mu = 4.0 * n * n;
  const double inv8x = 1.0 / (8.0 * x);

  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double prev_mag = 1e300;
  for (int k = 1; k < 40; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) * inv8x / static_cast<double>(k);
    const double mag = std::abs(term);
    if (mag >= prev_mag || mag < 1e-19) break;
    prev_mag = mag;
    // k odd -> contributes to Q, k even -> contributes to P, alternating sign
    const int quad = k % 4;
    if (quad == 1) q += term;
    else if (quad == 2) p -= term;
    else if (quad == 3) q -= term;
    else p += term;
  }

  const double chi = x - (2 * n + 1) * 0.25 * M_PI;
  return std::sqrt(2.0 / (M_PI * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j0(double x) {
  if (!(x >= 0.0)) throw std::invalid_argument("bessel_j0: argument must be real nonnegative");
  if (x <= kSeriesAsymptoticCrossover) return j0_series(x);
  return j_asymptotic(0, x);
}

double bessel_j1(double x) {
  if (!(x >= 0.0)) throw std::invalid_argument("bessel_j1: argument must be real nonnegative");
  if (x <= kSeriesAsymptoticCrossover) return j1_series(x);
  return j_asymptotic(1, x);
}

}  // namespace ramanmem
