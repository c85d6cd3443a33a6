#include "spiralcap/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace spiralcap::specfun {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209;
constexpr double kPi = 3.14159265358979323846264338;

// I_n(z) = (z/2)^n sum_k (z^2/4)^k / (k! (n+k)!). All terms positive, so the
// sum is cancellation-free; usable for any z but the term count grows ~z.
double bessel_i_series(int n, double z) {
    double term = 1.0;
    for (int k = 1; k <= n; ++k) term *= 0.5 * z / k;
    const double q = 0.25 * z * z;
    double sum = term;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<double>(k) * (n + k));
        sum += term;
        if (term <= sum * 1e-17) break;
    }
    return sum;
}

// Large-argument expansion I_n(z) ~ e^z/sqrt(2 pi z) sum_k (-1)^k a_k / z^k.
// Truncation floor ~ e^{-2z}; callers keep z >= 15 so the floor is < 1e-12.
double bessel_i_asymptotic(int n, double z) {
    const double mu = 4.0 * n * n;
    double term = 1.0;
    double sum = 1.0;
    double prev = 1.0;
    for (int k = 1; k <= 40; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= -(mu - odd * odd) / (8.0 * z * k);
        if (std::abs(term) >= prev) break;  // past the smallest term
        sum += term;
        prev = std::abs(term);
        if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return std::exp(z) / std::sqrt(2.0 * kPi * z) * sum;
}

// Miller downward recurrence i_{k-1} = i_{k+1} + (2k/z) i_k, normalized by
// e^z = I_0 + 2 sum_{k>=1} I_k. Upward recurrence is unstable for I.
double bessel_i_miller(int n, double z) {
    const int start = std::max(n, static_cast<int>(z)) + 40;
    double above = 0.0;   // i_{k+1}
    double cur = 1e-30;   // i_k, seeded tiny at k = start
    double result = 0.0;
    double tail = cur;    // sum of i_k for k >= 1
    for (int k = start; k >= 1; --k) {
        const double below = above + (2.0 * k / z) * cur;
        above = cur;
        cur = below;  // now holds i_{k-1}
        if (k - 1 == n) result = cur;
        if (k - 1 >= 1) tail += cur;
        if (cur > 1e250) {
            above *= 1e-250;
            cur *= 1e-250;
            result *= 1e-250;
            tail *= 1e-250;
        }
    }
    const double norm = cur + 2.0 * tail;  // cur == i_0 here
    return result * std::exp(z) / norm;
}

// K_0 by its exact log-form series; accurate for z <= 2.
double bessel_k0_series(double z) {
    const double q = 0.25 * z * z;
    double ik = 1.0;       // (z^2/4)^k / (k!)^2
    double harmonic = 0.0; // H_k
    double sum = 0.0;
    double i0 = 1.0;
    for (int k = 1; k < 60; ++k) {
        ik *= q / (static_cast<double>(k) * k);
        harmonic += 1.0 / k;
        i0 += ik;
        const double term = ik * harmonic;
        sum += term;
        if (term <= (std::abs(sum) + 1.0) * 1e-18) break;
    }
    return -(std::log(0.5 * z) + kEulerGamma) * i0 + sum;
}

// K_1 by its exact log-form series; accurate for z <= 2.
double bessel_k1_series(double z) {
    const double q = 0.25 * z * z;
    double ck = 1.0;       // (z^2/4)^k / (k! (k+1)!)
    double sum = ck * (1.0 - 2.0 * kEulerGamma);  // k = 0: H_0 + H_1 - 2g = 1 - 2g
    double i1 = 0.5 * z;
    double hk = 0.0, hk1 = 1.0;
    double ik = 0.5 * z;   // (z/2)^{2k+1} / (k!(k+1)!)
    for (int k = 1; k < 60; ++k) {
        ck *= q / (static_cast<double>(k) * (k + 1));
        ik *= q / (static_cast<double>(k) * (k + 1));
        hk += 1.0 / k;
        hk1 += 1.0 / (k + 1);
        i1 += ik;
        const double term = ck * (hk + hk1 - 2.0 * kEulerGamma);
        sum += term;
        if (std::abs(term) <= (std::abs(sum) + 1.0) * 1e-18) break;
    }
    return 1.0 / z + std::log(0.5 * z) * i1 - 0.25 * z * sum;
}

// Steed continued fraction (CF2) evaluating K_0(z) and K_1(z) for z >= 2.
// A truncated asymptotic series cannot reach 1e-9 until z is ~11, so the
// continued fraction covers the whole upper range instead.
void bessel_k01_cf2(double z, double& k0, double& k1) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    double b = 2.0 * (1.0 + z);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25;
    double q = a1, c = a1, a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 1; i < 1000; ++i) {
        a -= 2.0 * i;
        c = -a * c / (i + 1.0);
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) <= eps) {
            h = a1 * h;
            k0 = std::sqrt(kPi / (2.0 * z)) * std::exp(-z) / s;
            k1 = k0 * (z + 0.5 - h) / z;
            return;
        }
    }
    throw std::range_error("bessel_k: continued fraction failed to converge");
}

}  // namespace

double bessel_i(int n, double z) {
    if (n < 0) throw std::domain_error("bessel_i: order must be non-negative");
    if (z < 0.0) throw std::domain_error("bessel_i: argument must be non-negative");
    if (z == 0.0) return n == 0 ? 1.0 : 0.0;

    double value;
    if (n <= 1) {
        value = (z <= 15.0) ? bessel_i_series(n, z) : bessel_i_asymptotic(n, z);
    } else {
        value = bessel_i_miller(n, z);
    }
    if (!std::isfinite(value)) throw std::range_error("bessel_i: overflow");
    return value;
}

double bessel_k(int n, double z) {
    if (n < 0) throw std::domain_error("bessel_k: order must be non-negative");
    if (z <= 0.0) throw std::domain_error("bessel_k: argument must be positive");

    double k0, k1;
    if (z <= 2.0) {
        k0 = bessel_k0_series(z);
        k1 = bessel_k1_series(z);
    } else {
        bessel_k01_cf2(z, k0, k1);
    }
    if (n == 0) return k0;

    // upward recurrence K_{k+1} = K_{k-1} + (2k/z) K_k, stable for K
    double prev = k0;
    double cur = k1;
    for (int k = 1; k < n; ++k) {
        const double next = prev + (2.0 * k / z) * cur;
        prev = cur;
        cur = next;
        if (!std::isfinite(cur)) throw std::range_error("bessel_k: overflow");
    }
    if (!std::isfinite(cur)) throw std::range_error("bessel_k: overflow");
    return cur;
}

double robin_coefficient(double omega, double R) {
    if (R <= 0.0) throw std::domain_error("robin_coefficient: R must be positive");
    if (omega < 0.0) throw std::domain_error("robin_coefficient: omega must be non-negative");
    const double arg = omega * R;
    if (arg < 0.01) return 1.0 / R;
    const double k0 = bessel_k(0, arg);
    const double k1 = bessel_k(1, arg);
    const double k2 = bessel_k(2, arg);
    return omega * (k0 + k2) / (2.0 * k1);
}

}  // namespace spiralcap::specfun
