#pragma once

namespace spiralcap::specfun {

/// Modified Bessel function of the first kind I_n(z), integer order n >= 0.
///
/// Power series for order 0/1 at small argument, asymptotic expansion at
/// large argument, normalized downward (Miller) recurrence for n >= 2.
/// Relative error below 1e-12 for z in [0, 100], n <= 10.
///
/// Throws std::domain_error for n < 0 or z < 0, std::range_error on overflow.
double bessel_i(int n, double z);

/// Modified Bessel function of the second kind K_n(z), integer order n >= 0.
///
/// Log-form power series for z <= 2, Steed continued fraction for z > 2,
/// upward recurrence in the order (stable for K). Relative error below
/// 1e-12 for z in [1e-3, 100], n <= 10.
///
/// Throws std::domain_error for n < 0 or z <= 0, std::range_error on
/// overflow (z extremely small combined with large n).
double bessel_k(int n, double z);

/// Robin coefficient of the open-boundary condition on the truncation
/// circle of radius R:
///
///   beta = omega (K_0(omega R) + K_2(omega R)) / (2 K_1(omega R))
///
/// For omega*R < 0.01 the K-ratio is within O((omega R)^2) of 1/(omega R)
/// and the function returns the plain 2D-dipole value 1/R instead.
///
/// Throws std::domain_error for R <= 0 or omega < 0.
double robin_coefficient(double omega, double R);

}  // namespace spiralcap::specfun
