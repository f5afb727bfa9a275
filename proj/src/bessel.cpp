#include <cmath>
#include <numbers>

#include "pxp/special.hpp"

namespace pxp {

namespace {

constexpr double kSeriesLimit = 20.0;

double series(double x) {
  // sum_k (-x^2/4)^k / (k!)^2; terms peak near k = x/2, so carry the sum in
  // long double to keep the cancellation error well below 1e-12.
  const long double q = -static_cast<long double>(x) * x / 4.0L;
  long double term = 1.0L, sum = 1.0L;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<long double>(k) * k);
    sum += term;
    if (std::fabs(term) < 1e-22L) break;
  }
  return static_cast<double>(sum);
}

double asymptotic(double x) {
  // J0(x) = sqrt(2/(pi x)) (P cos(x - pi/4) - Q sin(x - pi/4))
  const double inv8x = 1.0 / (8.0 * x);
  double p = 1.0, q = 0.0;
  double term = 1.0;
  double best = 1.0;
  for (int k = 1; k < 60; ++k) {
    // Hankel coefficients for nu = 0: a_k = prod_{i=1..k} (-(2i-1)^2) / (i * 8x)
    const double f = -static_cast<double>((2 * k - 1) * (2 * k - 1)) * inv8x / k;
    term *= f;
    if (std::fabs(term) > best) break;
    best = std::fabs(term);
    // term carries the sign of a_k; P and Q alternate over every second order.
    const double alt = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) {
      p += alt * term;
    } else {
      q += alt * term;
    }
    if (best < 1e-18) break;
  }
  const double chi = x - std::numbers::pi / 4.0;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j0(double x) {
  const double ax = std::fabs(x);
  if (ax <= kSeriesLimit) return series(ax);
  return asymptotic(ax);
}

}  // namespace pxp
