#pragma once

#include <cmath>
#include <stdexcept>

#include "chaoslab/common.hpp"
#include "chaoslab/quadrature.hpp"

namespace chaoslab {

// ---------------------------------------------------------------------------
// surface constants of the unit sphere in R^d
// ---------------------------------------------------------------------------

struct SurfaceConstants {
    int d;
    double tau;  // pi^{d/2} / Gamma(d/2), half the sphere area
    double s;    // 2 * tau, the sphere area
};

inline SurfaceConstants surface_constants(int d) {
    if (d < 1) throw std::domain_error("surface_constants: d >= 1 required");
    double tau = std::pow(pi, 0.5 * d) / std::tgamma(0.5 * d);
    return {d, tau, 2.0 * tau};
}

// ---------------------------------------------------------------------------
// modified Bessel function I_0 and friends
// ---------------------------------------------------------------------------

namespace detail {

// power series sum_m (x^2/4)^m / (m!)^2; valid for all x, overflow-safe to ~700
inline double i0_series(double x) {
    const double y = x * x;
    double term = 1.0, sum = 1.0;
    for (int m = 1; m < 500; ++m) {
        term *= y / (4.0 * m * m);
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return sum;
}

inline double i1_series(double x) {
    const double y = x * x;
    double term = 0.5 * x, sum = term;
    for (int m = 1; m < 500; ++m) {
        term *= y / (4.0 * m * (m + 1));
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-17) break;
    }
    return sum;
}

// I_0(x) ~ e^x/sqrt(2 pi x) * (1 + 1/(8x) + ...); correction polynomial
inline double i0_asym_poly(double ix) {
    static const double c[6] = {1.0 / 8, 9.0 / 128, 75.0 / 1024, 3675.0 / 32768,
                                59535.0 / 262144, 2401245.0 / 4194304};
    double p = 0.0, xp = ix;
    for (int k = 0; k < 6; ++k) { p += c[k] * xp; xp *= ix; }
    return p;
}

inline double i1_asym_poly(double ix) {
    static const double c[6] = {-3.0 / 8, -15.0 / 128, -105.0 / 1024, -4725.0 / 32768,
                                -72765.0 / 262144, -2837835.0 / 4194304};
    double p = 0.0, xp = ix;
    for (int k = 0; k < 6; ++k) { p += c[k] * xp; xp *= ix; }
    return p;
}

// log I_0(x) for |x| <= ~1.6, series in y = x^2 nested to machine precision;
// cheap path for the hot product-oracle loops
inline double log_i0_small(double x) {
    const double y = x * x;
    double q = 1.0 + y / 324.0;                 // m = 9 level: 4*81
    q = 1.0 + y / 256.0 * q;
    q = 1.0 + y / 196.0 * q;
    q = 1.0 + y / 144.0 * q;
    q = 1.0 + y / 100.0 * q;
    q = 1.0 + y / 64.0 * q;
    q = 1.0 + y / 36.0 * q;
    q = 1.0 + y / 16.0 * q;
    return std::log1p(0.25 * y * q);
}

} // namespace detail

// I_0(x), relative error below 1e-12; overflows past |x| = 700 so we refuse
inline double bessel_i0(double x) {
    if (!std::isfinite(x)) throw std::domain_error("bessel_i0: non-finite argument");
    double ax = std::abs(x);
    if (ax > 700.0) throw std::range_error("bessel_i0: |x| <= 700 required (unscaled value overflows)");
    return detail::i0_series(ax);
}

// log I_0(x), no overflow for |x| <= 1e4; asymptotic branch above 30
inline double log_i0(double x) {
    if (!std::isfinite(x)) throw std::domain_error("log_i0: non-finite argument");
    double ax = std::abs(x);
    if (ax <= 1.6) return detail::log_i0_small(ax);
    if (ax <= 30.0) return std::log(detail::i0_series(ax));
    return ax - 0.5 * std::log(two_pi * ax) + std::log1p(detail::i0_asym_poly(1.0 / ax));
}

// I_0'(x) / I_0(x); odd, values in (-1, 1)
inline double i0_log_derivative(double x) {
    if (!std::isfinite(x)) throw std::domain_error("i0_log_derivative: non-finite argument");
    double ax = std::abs(x), r;
    if (ax <= 30.0) {
        r = detail::i1_series(ax) / detail::i0_series(ax);
    } else {
        r = (1.0 + detail::i1_asym_poly(1.0 / ax)) / (1.0 + detail::i0_asym_poly(1.0 / ax));
    }
    return x < 0 ? -r : r;
}

// ---------------------------------------------------------------------------
// Jacobi theta on T^d: theta(u,x) = sum_{n in Z^d} exp(-|n|^2 u) exp(i n.x),
// computed as a product of 1-d factors. theta0 = theta - 1.
// ---------------------------------------------------------------------------

namespace detail {

inline double theta1d_direct(double u, double x) {
    x = std::abs(wrap_angle(x));  // even in x, exactly as computed
    double s = 1.0;
    int nmax = static_cast<int>(std::ceil(std::sqrt(40.0 / u))) + 1;
    for (int n = 1; n <= nmax; ++n)
        s += 2.0 * std::exp(-static_cast<double>(n) * n * u) * std::cos(n * x);
    return s;
}

// Poisson-dual form sqrt(pi/u) sum_k exp(-(x-2 pi k)^2 / (4u))
inline double theta1d_dual(double u, double x) {
    x = std::abs(wrap_angle(x));
    double s = 0.0;
    int kmax = static_cast<int>(std::ceil((std::sqrt(160.0 * u) + pi) / two_pi)) + 1;
    for (int k = -kmax; k <= kmax; ++k) {
        double r = x - two_pi * k;
        s += std::exp(-r * r / (4.0 * u));
    }
    return std::sqrt(pi / u) * s;
}

inline double theta1d(double u, double x, bool dual) {
    return dual ? theta1d_dual(u, x) : theta1d_direct(u, x);
}

inline double theta_full(double u, const double* x, int d, bool dual) {
    double p = 1.0;
    for (int j = 0; j < d; ++j) p *= theta1d(u, x[j], dual);
    return p;
}

} // namespace detail

// theta0(u,x) on T^d for d in {1,2}; direct series for u >= 1, dual for u < 1
inline double jacobi_theta0(double u, const double* x, int d) {
    if (!(u > 0)) throw std::domain_error("jacobi_theta0: u > 0 required");
    if (d != 1 && d != 2) throw std::domain_error("jacobi_theta0: d in {1,2}");
    return detail::theta_full(u, x, d, /*dual=*/u < 1.0) - 1.0;
}

inline double jacobi_theta0(double u, double x) { return jacobi_theta0(u, &x, 1); }
inline double jacobi_theta0(double u, vec2 x) { return jacobi_theta0(u, x.data(), 2); }

// both representations, for the duality property checks
inline double jacobi_theta0_direct(double u, const double* x, int d) {
    if (!(u > 0)) throw std::domain_error("jacobi_theta0: u > 0 required");
    return detail::theta_full(u, x, d, false) - 1.0;
}
inline double jacobi_theta0_dual(double u, const double* x, int d) {
    if (!(u > 0)) throw std::domain_error("jacobi_theta0: u > 0 required");
    return detail::theta_full(u, x, d, true) - 1.0;
}

// ---------------------------------------------------------------------------
// Jacobi function G(x) = sum_{k != 0} |k|^{-d} exp(i k.x), via
// Gamma(d/2) G = A + B,  A = int_0^1 theta0 u^{d/2-1} du,  B = int_1^inf ...
// For d=1 this equals -2 log(2 |sin(x/2)|).
// ---------------------------------------------------------------------------

inline double jacobi_G(const double* xin, int d) {
    if (d != 1 && d != 2) throw std::domain_error("jacobi_G: d in {1,2}");
    double x[2] = {wrap_angle(xin[0]), d == 2 ? wrap_angle(xin[1]) : 0.0};
    double r = (d == 1) ? std::abs(x[0]) : norm2({x[0], x[1]});
    if (r == 0.0) throw std::domain_error("jacobi_G: singular at x = 0");

    const double half_d = 0.5 * d;
    // A = int_0^1 theta(u,x) u^{d/2-1} du - 2/d, dual form (smooth integrand, theta -> 0 at u -> 0)
    auto fa = [&](double u) {
        return detail::theta_full(u, x, d, true) * std::pow(u, half_d - 1.0);
    };
    double A = integrate(fa, 0.0, 1.0, 1e-11) - 2.0 / d;
    // B: theta0 decays like e^{-u}; cut where it is below 1e-16
    auto fb = [&](double u) {
        return (detail::theta_full(u, x, d, false) - 1.0) * std::pow(u, half_d - 1.0);
    };
    double B = integrate(fb, 1.0, 42.0, 1e-11);
    return (A + B) / std::tgamma(half_d);
}

inline double jacobi_G(double x, int d) {
    if (d != 1) throw std::domain_error("jacobi_G: scalar overload is d=1 only");
    return jacobi_G(&x, 1);
}
inline double jacobi_G(vec2 x) { return jacobi_G(x.data(), 2); }

// d=1 closed form used by tests and the d=1 kernels
inline double jacobi_G_closed_1d(double x) {
    double s = 2.0 * std::abs(std::sin(0.5 * wrap_angle(x)));
    if (s == 0.0) throw std::domain_error("jacobi_G: singular at x = 0");
    return -2.0 * std::log(s);
}

} // namespace chaoslab
