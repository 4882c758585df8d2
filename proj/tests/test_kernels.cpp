#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "chaoslab/kernels.hpp"

using namespace chaoslab;

TEST_CASE("coefficient families and their assumptions") {
    auto inv = CoefficientSequence::inverse_sqrt(1.0);
    CHECK(inv.alpha(4) == Catch::Approx(0.5));
    CHECK(inv.alpha_sq(10) == Catch::Approx(0.1));

    auto pw = CoefficientSequence::power(0.25);
    CHECK(pw.alpha(16) == Catch::Approx(0.5));

    // alpha_n -> 0: max over [N/2, N] shrinks as N grows
    for (auto spec : {inv, pw}) {
        double m1 = 0, m2 = 0;
        for (std::uint64_t n = 500; n <= 1000; ++n) m1 = std::max(m1, std::abs(spec.alpha(n)));
        for (std::uint64_t n = 4000; n <= 8000; ++n) m2 = std::max(m2, std::abs(spec.alpha(n)));
        CHECK(m2 < m1);
    }
    // sum alpha_n^4 bounded for built-ins (partial sums nearly flat across octaves)
    for (auto spec : {inv, CoefficientSequence::log_corrected(1.0, 1.0)}) {
        double s4a = 0, s4b = 0;
        for (std::uint64_t n = 1; n <= 4000; ++n) {
            double a2 = spec.alpha_sq(n);
            (n <= 2000 ? s4a : s4b) += a2 * a2;
        }
        CHECK(s4b < 0.01 * s4a);
    }

    auto ex = CoefficientSequence::explicit_list({1.0, -0.5, 0.25});
    CHECK(ex.alpha(2) == Catch::Approx(-0.5));
    CHECK(ex.alpha(7) == 0.0);
}

TEST_CASE("correlation partial sums, d=1") {
    auto one = CoefficientSequence::inverse_sqrt(1.0);
    CHECK(correlation_partial(one, 1, 0.0) == Catch::Approx(0.5));  // (1/2) * 1 * cos 0

    // closed form -(a^2/2) log(2|sin(t/2)|) at t = pi
    double h = correlation_partial(one, 1000000, pi);
    CHECK(h == Catch::Approx(-0.5 * std::log(2.0)).margin(2e-6));

    auto two = CoefficientSequence::inverse_sqrt(2.0);
    CHECK(std::abs(correlation_partial(two, 1000000, pi / 3.0)) < 1e-5);

    CHECK_THROWS_AS(correlation_partial(one, 0, 1.0), std::domain_error);
}

TEST_CASE("correlation closed forms") {
    CHECK(correlation_closed_form(1.0, pi) == Catch::Approx(-0.34657359).margin(1e-7));
    CHECK(correlation_closed_form(0.0, 0.37) == 0.0);
    CHECK_THROWS_AS(correlation_closed_form(1.0, 0.0), std::domain_error);
    // d=2: within 0.5 of (tau(2)/2) log(1/|t|) at |t| = 0.05
    double v = correlation_closed_form(1.0, vec2{0.05, 0.0});
    double lead = 0.5 * surface_constants(2).tau * std::log(1.0 / 0.05);
    CHECK(std::abs(v - lead) < 0.5);
}

TEST_CASE("cesaro-damped tails stabilize the slow series") {
    auto one = CoefficientSequence::inverse_sqrt(1.0);
    double t = 0.21;
    double closed = correlation_closed_form(1.0, t);
    CHECK(correlation_partial_cesaro(one, 5000, t, 1000) == Catch::Approx(closed).margin(2e-4));
}

TEST_CASE("upper-bound condition report") {
    // alpha_n^2 = 1/n: all three conditions hold; second differences 2/(n(n+1)(n+2))
    auto rep = check_upper_bound_conditions(CoefficientSequence::log_corrected(1.0, 0.0), 512);
    CHECK(rep.convex);
    CHECK(rep.decaying);
    CHECK(rep.pass());
    CHECK(rep.c_decay == Catch::Approx(1.0));
    CHECK(rep.sup_gap < 1.0);

    // constant sequence: decay fails
    auto cst = check_upper_bound_conditions(
        CoefficientSequence::explicit_list(std::vector<double>(600, 1.0)), 512);
    CHECK_FALSE(cst.decaying);
    CHECK_FALSE(cst.pass());

    // the log-corrected family passes
    auto lc = check_upper_bound_conditions(CoefficientSequence::log_corrected(1.0, 1.0), 512);
    CHECK(lc.convex);
    CHECK(lc.decaying);
    CHECK(lc.pass());
}

TEST_CASE("exact second differences of 1/n") {
    auto spec = CoefficientSequence::log_corrected(1.0, 0.0);
    for (std::uint64_t n = 1; n <= 30; ++n) {
        double d2 = spec.alpha_sq(n + 2) - 2 * spec.alpha_sq(n + 1) + spec.alpha_sq(n);
        double expect = 2.0 / (static_cast<double>(n) * (n + 1) * (n + 2));
        CHECK(d2 == Catch::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("h-family asymptotics") {
    auto r10 = h_family_asymptotic(1.0, 0.0, 1.0, 1e-4);
    CHECK(r10.predicted == Catch::Approx(std::log(1e4)).epsilon(1e-12));
    CHECK(r10.predicted == Catch::Approx(9.2103).margin(1e-3));
    CHECK(r10.value / r10.predicted > 0.95);
    CHECK(r10.value / r10.predicted < 1.05);

    auto rhalf = h_family_asymptotic(0.5, 0.0, 1.0, 1e-4);
    CHECK(rhalf.predicted == Catch::Approx(125.33).margin(0.01));
    CHECK(rhalf.value / rhalf.predicted > 0.95);
    CHECK(rhalf.value / rhalf.predicted < 1.05);

    auto rll = h_family_asymptotic(1.0, 1.0, 2.0, 1e-6);
    CHECK(rll.predicted == Catch::Approx(5.2517).margin(1e-3));
    CHECK(rll.value / rll.predicted > 0.8);
    CHECK(rll.value / rll.predicted < 1.2);

    CHECK_THROWS_AS(h_family_asymptotic(1.5, 0.0, 1.0, 1e-3), std::domain_error);
    CHECK_THROWS_AS(h_family_asymptotic(0.5, 0.0, 1.0, 0.5), std::domain_error);
}

TEST_CASE("even/odd split partitions H exactly") {
    auto [oddp, evenp] = kernel_split_even_odd(1.0);
    auto full = CoefficientSequence::inverse_sqrt(1.0);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unif(-pi, pi);
    for (int i = 0; i < 100; ++i) {
        double t = unif(rng);
        double h1 = correlation_partial(oddp, 10000, t);
        double h2 = correlation_partial(evenp, 10000, t);
        double h = correlation_partial(full, 10000, t);
        CHECK(std::abs(h1 + h2 - h) < 1e-14 * std::max(1.0, std::abs(h)));
    }
}

TEST_CASE("even half: bounded at pi/2, singular at 0 and pi") {
    auto [oddp, evenp] = kernel_split_even_odd(1.0);
    CHECK(std::abs(correlation_partial(evenp, 1000000, pi / 2)) < 1.0);
    // e^{H^{(2)}} near both singularities: values within 5%
    double a = std::exp(correlation_partial(evenp, 100000, 0.01));
    double b = std::exp(correlation_partial(evenp, 100000, pi - 0.01));
    CHECK(a / b > 0.95);
    CHECK(a / b < 1.05);
    CHECK(a > 2.0);  // genuinely large near the singularity
    // the odd half is singular at 0 but stays bounded at pi
    double c = std::exp(correlation_partial(oddp, 100000, pi - 0.01));
    CHECK(c < 2.0);
}

TEST_CASE("composition rule gamma^2 = alpha^2 + beta^2 at the coefficient level") {
    double alpha = 0.9, beta = 1.2;
    double gamma = std::sqrt(alpha * alpha + beta * beta);
    auto qa = CoefficientSequence::inverse_sqrt(alpha);
    auto qb = CoefficientSequence::inverse_sqrt(beta);
    auto qg = CoefficientSequence::inverse_sqrt(gamma);
    for (double t : {0.3, 1.1, 2.9}) {
        double sum = correlation_partial(qa, 2000, t) + correlation_partial(qb, 2000, t);
        CHECK(sum == Catch::Approx(correlation_partial(qg, 2000, t)).margin(1e-12));
    }
}

TEST_CASE("partial sums dominated by closed form plus constant") {
    auto one = CoefficientSequence::inverse_sqrt(1.0);
    double C = -1e300;
    for (std::size_t g = 0; g < 2048; ++g) {
        double t = grid_point(g, 2048);
        if (std::abs(t) < 1e-3) continue;
        double closed = correlation_closed_form(1.0, t);
        for (std::uint64_t N : {100, 1000, 10000}) {
            double h = correlation_partial(one, N, t);
            C = std::max(C, h - closed);
        }
    }
    CHECK(C < 1.0);  // a modest uniform constant exists
}

TEST_CASE("riesz kernel values") {
    auto r1 = riesz_kernel(1, 0.5);
    CHECK(r1(pi) == Catch::Approx(std::pow(2.0, -0.5)).epsilon(1e-12));
    CHECK(r1(pi / 3) == Catch::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(r1(0.0), std::domain_error);

    auto r2 = riesz_kernel(2, 1.0);
    double lo = 1e300, hi = -1e300;
    for (double r : {0.1, 0.05, 0.025}) {
        double v = r2(vec2{r, 0.0}) * r;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(hi / lo < 1.2);  // R(x) |x| varies by < 20 percent
}

TEST_CASE("d=2 correlation over cube shells") {
    auto spec = CoefficientSequence::standard_2d(1.0);
    // single shell at N=1: canonical points of C_1^+, 4 of them
    double t0 = correlation_partial(spec, 1, vec2{0.0, 0.0});
    double expect = 0.0;
    for_each_shell_point(1, [&](int k1, int k2) {
        double a = spec.alpha_2d(k1, k2);
        expect += 0.5 * a * a;
    });
    CHECK(t0 == Catch::Approx(expect).epsilon(1e-14));
    // grows like (tau/2) log N at the origin-adjacent point
    double h20 = correlation_partial(spec, 20, vec2{0.01, 0.0});
    double h40 = correlation_partial(spec, 40, vec2{0.01, 0.0});
    CHECK(h40 > h20);
}
