#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "chaoslab/quadrature.hpp"
#include "chaoslab/specfun.hpp"

using namespace chaoslab;

namespace {

// independent oracle: I_0 by its integral definition (1/2pi) int e^{x sin u} du
double i0_by_quadrature(double x) {
    return integrate([&](double u) { return std::exp(x * std::sin(u)); }, 0.0, two_pi, 1e-13) /
           two_pi;
}

// independent oracle: truncated power series with explicit factorials
double i0_by_series_25(double x) {
    double sum = 0.0, fact = 1.0;
    for (int m = 0; m <= 25; ++m) {
        if (m > 0) fact *= m;
        sum += std::pow(0.25 * x * x, m) / (fact * fact);
    }
    return sum;
}

} // namespace

TEST_CASE("surface constants") {
    auto s1 = surface_constants(1);
    auto s2 = surface_constants(2);
    CHECK(s1.tau == Catch::Approx(1.0).epsilon(1e-14));
    CHECK(s2.tau == Catch::Approx(pi).epsilon(1e-14));
    CHECK(s1.s == 2.0 * s1.tau);
    CHECK(s2.s == 2.0 * s2.tau);
}

TEST_CASE("bessel_i0 values") {
    CHECK(bessel_i0(0.0) == 1.0);
    CHECK(bessel_i0(1.0) == Catch::Approx(i0_by_series_25(1.0)).epsilon(1e-13));
    CHECK(bessel_i0(1.0) == Catch::Approx(1.26606587775).epsilon(1e-10));
    CHECK(bessel_i0(2.0) == Catch::Approx(2.27958530233).epsilon(1e-10));
    CHECK(bessel_i0(2.0) == Catch::Approx(i0_by_quadrature(2.0)).epsilon(1e-11));
    CHECK(bessel_i0(-3.25) == bessel_i0(3.25));  // even, exactly as computed
    CHECK(bessel_i0(5.0) >= 1.0);
    CHECK_THROWS_AS(bessel_i0(701.0), std::range_error);
    CHECK_THROWS_AS(bessel_i0(std::nan("")), std::domain_error);
}

TEST_CASE("bessel series/integral agreement on random points") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> unif(-3.0, 3.0);
    for (int i = 0; i < 20; ++i) {
        double x = unif(rng);
        double a = bessel_i0(x), b = i0_by_quadrature(x);
        CHECK(std::abs(a - b) <= 1e-10 * std::abs(b));
    }
}

TEST_CASE("log_i0") {
    CHECK(log_i0(0.0) == 0.0);
    CHECK(std::abs(log_i0(0.01) - 2.5e-5) < 1e-9);  // leading term x^2/4
    CHECK(log_i0(10.0) == Catch::Approx(std::log(bessel_i0(10.0))).epsilon(1e-13));
    // continuity across the asymptotic switch at 30
    CHECK(log_i0(30.0 + 1e-12) == Catch::Approx(std::log(bessel_i0(30.0))).epsilon(1e-10));
    CHECK(log_i0(120.0) == Catch::Approx(std::log(bessel_i0(120.0))).epsilon(1e-11));
    // far beyond the I_0 overflow point it still returns
    CHECK(std::isfinite(log_i0(1e4)));
    CHECK(log_i0(1e4) == Catch::Approx(1e4 - 0.5 * std::log(two_pi * 1e4)).epsilon(1e-4));
    CHECK(log_i0(-7.0) == log_i0(7.0));
}

TEST_CASE("i0_log_derivative") {
    CHECK(i0_log_derivative(0.0) == 0.0);
    CHECK(i0_log_derivative(0.2) == Catch::Approx(0.0995033).epsilon(1e-5));
    CHECK(i0_log_derivative(0.2) == Catch::Approx(0.1 - 0.001 * 0.5).margin(2e-4));  // x/2 - x^3/16
    CHECK(i0_log_derivative(-1.3) == -i0_log_derivative(1.3));
    for (double x : {0.5, 3.0, 29.9, 30.1, 100.0, 5000.0}) {
        double v = i0_log_derivative(x);
        CHECK(v > 0.0);
        CHECK(v < 1.0);
    }
    // matches the derivative of log_i0 numerically
    double h = 1e-6;
    CHECK(i0_log_derivative(2.0) ==
          Catch::Approx((log_i0(2.0 + h) - log_i0(2.0 - h)) / (2 * h)).epsilon(1e-8));
}

TEST_CASE("jacobi theta0 basics") {
    // u -> infinity proxy: every term exponentially dead
    CHECK(std::abs(jacobi_theta0(50.0, 0.3)) < 1e-13);
    // (u=1, x=0, d=1) = 2 sum e^{-n^2}
    double expect = 0.0;
    for (int n = 1; n <= 10; ++n) expect += 2.0 * std::exp(-static_cast<double>(n) * n);
    CHECK(jacobi_theta0(1.0, 0.0) == Catch::Approx(expect).epsilon(1e-12));
    CHECK(expect == Catch::Approx(0.77263).epsilon(1e-4));
    CHECK_THROWS_AS(jacobi_theta0(0.0, 0.1), std::domain_error);
    CHECK_THROWS_AS(jacobi_theta0(-1.0, 0.1), std::domain_error);
}

TEST_CASE("theta duality and evenness") {
    double x025 = 0.0;
    CHECK(jacobi_theta0_direct(0.25, &x025, 1) ==
          Catch::Approx(jacobi_theta0_dual(0.25, &x025, 1)).margin(1e-12));
    const double us[4] = {0.1, 0.5, 2.0, 10.0};
    const double xs[4] = {0.0, 0.7, 2.2, -3.0};
    for (double u : us) {
        for (double x : xs) {
            double dir = jacobi_theta0_direct(u, &x, 1);
            double dua = jacobi_theta0_dual(u, &x, 1);
            CHECK(std::abs(dir - dua) < 1e-12 * std::max(1.0, std::abs(dir)));
            double mx = -x;
            CHECK(jacobi_theta0(u, x) == jacobi_theta0(u, mx));
            vec2 p{x, 0.5 * x}, m{-x, -0.5 * x};
            double dir2 = jacobi_theta0_direct(u, p.data(), 2);
            double dua2 = jacobi_theta0_dual(u, p.data(), 2);
            CHECK(std::abs(dir2 - dua2) < 1e-12 * std::max(1.0, std::abs(dir2)));
            CHECK(jacobi_theta0(u, p) == jacobi_theta0(u, m));
        }
    }
}

TEST_CASE("jacobi_G d=1 closed form") {
    CHECK(jacobi_G(pi, 1) == Catch::Approx(-2.0 * std::log(2.0)).margin(1e-8));
    CHECK(jacobi_G(pi, 1) == Catch::Approx(-1.38629436).margin(1e-7));
    CHECK(std::abs(jacobi_G(pi / 3.0, 1)) < 1e-8);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(-pi, pi);
    for (int i = 0; i < 50; ++i) {
        double x = unif(rng);
        if (std::abs(x) < 1e-3) continue;
        CHECK(jacobi_G(x, 1) == Catch::Approx(jacobi_G_closed_1d(x)).margin(1e-7));
    }
    CHECK_THROWS_AS(jacobi_G(0.0, 1), std::domain_error);
}

TEST_CASE("jacobi_G d=2 log singularity band") {
    const double s2 = surface_constants(2).s;
    double lo = 1e300, hi = -1e300;
    for (double r : {0.1, 0.05, 0.025}) {
        vec2 x{r, 0.0};
        double e = jacobi_G(x) + s2 * std::log(r);
        lo = std::min(lo, e);
        hi = std::max(hi, e);
    }
    CHECK(hi - lo < 0.5);
}
