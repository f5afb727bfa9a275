#pragma once

namespace pxp {

/// Bessel function of the first kind, order zero. Absolute error below 1e-12
/// for |x| <= 30: power series (extended precision) up to |x| = 20, Hankel
/// asymptotic expansion beyond.
double bessel_j0(double x);

/// First two zeros of J0, which locate the spectrum-narrowing regions in
/// units of h / omega_d.
inline constexpr double kBesselJ0FirstZero = 2.404825557695773;
inline constexpr double kBesselJ0SecondZero = 5.520078110286311;

}  // namespace pxp
