#include "spiralcap/oracle.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace spiralcap::oracle {

namespace {

constexpr double kPi = 3.14159265358979323846264338;

// 16-point Gauss-Legendre rule on [-1, 1], nodes solved by Newton iteration
// on the Legendre polynomial (computed once, cached).
struct GaussRule {
    std::array<double, 16> x{};
    std::array<double, 16> w{};

    GaussRule() {
        const int n = 16;
        for (int i = 0; i < (n + 1) / 2; ++i) {
            double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = 0.0;
                for (int j = 0; j < n; ++j) {
                    const double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
                }
                pp = n * (z * p0 - p1) / (z * z - 1.0);
                const double dz = p0 / pp;
                z -= dz;
                if (std::abs(dz) < 1e-15) break;
            }
            x[i] = -z;
            x[n - 1 - i] = z;
            w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
            w[n - 1 - i] = w[i];
        }
    }
};

const GaussRule& gauss16() {
    static const GaussRule rule;
    return rule;
}

double panel_sum(const std::function<double(double)>& fn, double a, double b,
                 int panels) {
    const GaussRule& g = gauss16();
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        double s = 0.0;
        for (int i = 0; i < 16; ++i) s += g.w[i] * fn(mid + 0.5 * h * g.x[i]);
        total += 0.5 * h * s;
    }
    return total;
}

}  // namespace

double integrate(const std::function<double(double)>& fn, double a, double b,
                 double rel_tol, double abs_tol, int min_panels) {
    int panels = std::max(1, min_panels);
    double prev = panel_sum(fn, a, b, panels);
    for (panels *= 2; panels <= 1 << 16; panels *= 2) {
        const double cur = panel_sum(fn, a, b, panels);
        if (std::abs(cur - prev) <= std::max(abs_tol, rel_tol * std::abs(cur)))
            return cur;
        prev = cur;
    }
    throw std::runtime_error("oracle::integrate: quadrature did not converge");
}

double bessel_k_quad(int n, double z) {
    if (n < 0) throw std::domain_error("bessel_k_quad: order must be non-negative");
    if (z <= 0.0) throw std::domain_error("bessel_k_quad: argument must be positive");

    // Truncation point T with z cosh(T) - n T >= z + 45, so the neglected
    // tail is below e^{-45} relative to the e^{-z} scale of K_n.
    double T = 5.0;
    for (int it = 0; it < 8; ++it) T = std::acosh((z + 45.0 + n * T) / z);
    return integrate(
        [n, z](double t) { return std::exp(-z * std::cosh(t)) * std::cosh(n * t); },
        0.0, T, 1e-13, 0.0);
}

namespace {

// Tail of the exponential series, sum_{k>=n} x^k/k!. For x <= n the first
// term dominates and the series is evaluated directly; above that the
// subtraction e^x - P_{n-1}(x) loses at most a bit.
double exp_tail(double x, int n) {
    if (n == 0) return std::exp(x);
    if (x > n) {
        double poly = 0.0, term = 1.0;
        for (int k = 0; k < n; ++k) {
            poly += term;
            term *= x / (k + 1);
        }
        return std::exp(x) - poly;
    }
    double term = 1.0;
    for (int k = 1; k <= n; ++k) term *= x / k;
    double sum = term;
    for (int k = n + 1; k < n + 400; ++k) {
        term *= x / k;
        sum += term;
        if (std::abs(term) <= std::abs(sum) * 1e-18) break;
    }
    return sum;
}

}  // namespace

double bessel_i_quad(int n, double z) {
    if (n < 0) throw std::domain_error("bessel_i_quad: order must be non-negative");
    if (z < 0.0) throw std::domain_error("bessel_i_quad: argument must be non-negative");
    if (z == 0.0) return n == 0 ? 1.0 : 0.0;

    // Trapezoidal rule on [0, pi]; the discretization error is a sum of
    // I_{2Nm +- n}(z) terms, negligible once 2N comfortably exceeds z + n.
    // The exponential-series terms below order n integrate to exactly zero
    // against cos(nt), so only their stably computed tail enters; keeping
    // them would cancel the result down from an O(1) integrand.
    const int N = 64 + n + static_cast<int>(std::ceil(z));
    const double h = kPi / N;
    double sum = 0.5 * (exp_tail(z, n) + exp_tail(-z, n) * std::cos(n * kPi));
    for (int j = 1; j < N; ++j) {
        const double t = j * h;
        sum += exp_tail(z * std::cos(t), n) * std::cos(n * t);
    }
    return sum * h / kPi;
}

double mode_value(const HarmonicMode& mode, double r, double phi) {
    if (mode.n < 1) throw std::domain_error("mode_value: mode index must be >= 1");
    if (mode.omega <= 0.0) throw std::domain_error("mode_value: omega must be positive");
    const double arg = mode.n * mode.omega * r;
    if (mode.kind == HarmonicMode::Kind::decaying) {
        if (r <= 0.0) throw std::domain_error("mode_value: r must be positive for K modes");
        return mode.amplitude * bessel_k_quad(mode.n, arg) * std::sin(mode.n * phi);
    }
    return mode.amplitude * bessel_i_quad(mode.n, arg) * std::sin(mode.n * phi);
}

double spiral_laplacian_fd(const std::function<double(double, double)>& fn,
                           double r, double phi, double omega, double h) {
    // (1/r) d/dr (r df/dr) via a conservative three-point stencil
    const double fr_plus = fn(r + h, phi);
    const double fr_minus = fn(r - h, phi);
    const double f0 = fn(r, phi);
    const double radial =
        ((r + 0.5 * h) * (fr_plus - f0) - (r - 0.5 * h) * (f0 - fr_minus)) /
        (r * h * h);
    const double fp_plus = fn(r, phi + h);
    const double fp_minus = fn(r, phi - h);
    const double angular = (fp_plus - 2.0 * f0 + fp_minus) / (h * h);
    return radial + (1.0 + omega * omega * r * r) / (r * r) * angular;
}

double wire_dipole_integral(double omega, double r, double phi, double abs_tol) {
    if (r <= 0.0) throw std::domain_error("wire_dipole_integral: r must be positive");
    if (omega <= 0.0) throw std::domain_error("wire_dipole_integral: omega must be positive");

    // envelope g(z) = r (z^2 + r^2)^{-3/2} and its derivatives, used for the
    // integration-by-parts tail of int_Z^inf g(z) cos(omega z) dz
    const auto g0 = [r](double z) { return r * std::pow(z * z + r * r, -1.5); };
    const auto g1 = [r](double z) { return -3.0 * r * z * std::pow(z * z + r * r, -2.5); };
    const auto g2 = [r](double z) {
        return 3.0 * r * (4.0 * z * z - r * r) * std::pow(z * z + r * r, -3.5);
    };
    const auto g3 = [r](double z) {
        return -15.0 * r * z * (4.0 * z * z - 3.0 * r * r) * std::pow(z * z + r * r, -4.5);
    };

    double Z = 40.0 / omega + 40.0 * r;
    // remainder after three tail terms is bounded by 2 |g'''(Z)| / omega^4
    while (2.0 * std::abs(g3(Z)) / std::pow(omega, 4) > 0.25 * abs_tol) Z *= 2.0;

    const int min_panels = static_cast<int>(std::ceil(2.0 * Z * omega / 3.0));
    const double body = integrate(
        [omega, r, phi](double z) {
            return r * std::sin(omega * z + phi) * std::pow(z * z + r * r, -1.5);
        },
        -Z, Z, 0.0, 0.25 * abs_tol, min_panels);

    // two-sided tail: 2 sin(phi) int_Z^inf g(z) cos(omega z) dz
    const double sz = std::sin(omega * Z);
    const double cz = std::cos(omega * Z);
    const double tail = 2.0 * std::sin(phi) *
                        (-g0(Z) * sz / omega - g1(Z) * cz / (omega * omega) +
                         g2(Z) * sz / (omega * omega * omega));
    return body + tail;
}

double CoaxialReference::potential(double r) const {
    return std::log(R / r) / std::log(R / r0);
}

CoaxialReference coaxial_reference(double r0, double R) {
    if (!(0.0 < r0 && r0 < R))
        throw std::domain_error("coaxial_reference: need 0 < r0 < R");
    CoaxialReference ref;
    ref.r0 = r0;
    ref.R = R;
    ref.energy = 2.0 * kPi / std::log(R / r0);
    return ref;
}

}  // namespace spiralcap::oracle
