#pragma once

#include <functional>

namespace spiralcap::oracle {

/// K_n(z) from the integral representation
///   K_n(z) = \int_0^inf e^{-z cosh t} cosh(nt) dt
/// evaluated by composite Gauss-Legendre quadrature with panel doubling.
/// Independent of the series/continued-fraction path in specfun, so
/// agreement between the two is evidence of correctness.
double bessel_k_quad(int n, double z);

/// I_n(z) from the integral representation
///   I_n(z) = (1/pi) \int_0^pi e^{z cos t} cos(nt) dt
/// evaluated by the trapezoidal rule, which is spectrally accurate for
/// this periodic integrand.
double bessel_i_quad(int n, double z);

/// One separated-variables solution of the winding Laplace operator:
/// amplitude * K_n(n omega r) sin(n phi) (decaying) or the I_n twin
/// (regular). The constant mode is excluded along with all cosine modes
/// by the plate placement's odd symmetry.
struct HarmonicMode {
    enum class Kind { decaying, regular };

    int n = 1;
    double omega = 1.0;
    double amplitude = 1.0;
    Kind kind = Kind::decaying;
};

double mode_value(const HarmonicMode& mode, double r, double phi);

/// Central-difference evaluation of the winding-reduced Laplacian
///   (1/r) d/dr (r df/dr) + ((1 + omega^2 r^2)/r^2) d^2f/dphi^2
/// applied to an arbitrary smooth function of (r, phi).
double spiral_laplacian_fd(const std::function<double(double, double)>& fn,
                           double r, double phi, double omega, double h);

/// Potential of an infinite twisted dipole wire at cross-section point
/// (r, phi), computed by direct quadrature of
///   \int_{-inf}^{inf} r sin(omega z + phi) / (z^2 + r^2)^{3/2} dz.
/// Truncated at |z| = 40/omega + 40 r with analytic tail terms from
/// integration by parts; the remainder bound is checked against abs_tol
/// and the window is widened if necessary. Equals 2 omega K_1(omega r)
/// sin(phi) analytically.
double wire_dipole_integral(double omega, double r, double phi,
                            double abs_tol = 1e-8);

/// Closed-form coaxial (full-ring, omega = 0) reference:
/// u(r) = ln(R/r)/ln(R/r0), u(r0) = 1, u(R) = 0, and the stored energy
/// in this project's unit convention, E = 2 pi / ln(R/r0).
struct CoaxialReference {
    double r0 = 1.0;
    double R = 5.0;
    double energy = 0.0;

    double potential(double r) const;
};

CoaxialReference coaxial_reference(double r0, double R);

/// Manufactured solution u* = x y with the source f = -div(K grad u*)
/// = 4 omega^2 x y, for exercising the nonzero-source assembly path.
struct ManufacturedSolution {
    double omega = 0.0;

    double exact(double x, double y) const { return x * y; }
    double source(double x, double y) const { return 4.0 * omega * omega * x * y; }
};

inline ManufacturedSolution manufactured_source(double omega) { return {omega}; }

/// Composite Gauss-Legendre quadrature over [a, b] with panel doubling
/// until two refinement levels agree to the given tolerances. min_panels
/// sets the coarsest subdivision (oscillatory integrands must be resolved
/// before the agreement check means anything).
double integrate(const std::function<double(double)>& fn, double a, double b,
                 double rel_tol, double abs_tol, int min_panels = 1);

}  // namespace spiralcap::oracle
