#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <vector>

#include "chaoslab/fft.hpp"
#include "chaoslab/rng.hpp"
#include "chaoslab/stats.hpp"

using namespace chaoslab;

TEST_CASE("phase stream determinism and independence of evaluation order") {
    PhaseStream a{12345, 1}, b{12345, 1};
    std::vector<double> fwd, rev;
    for (std::uint64_t n = 1; n <= 100; ++n) fwd.push_back(a.omega(n));
    for (std::uint64_t n = 100; n >= 1; --n) rev.push_back(b.omega(n));
    for (std::size_t i = 0; i < 100; ++i) CHECK(fwd[i] == rev[99 - i]);
    PhaseStream c{54321, 1};
    CHECK(c.omega(1) != a.omega(1));
}

TEST_CASE("phases pass a uniformity KS test at level 0.01") {
    PhaseStream st{987654321, 1};
    std::vector<double> u;
    u.reserve(100000);
    for (std::uint64_t n = 1; n <= 100000; ++n) u.push_back(st.omega(n) / two_pi);
    CHECK(ks_uniform_pass(u, 0.01));
}

TEST_CASE("lattice phases symmetric under k -> -k") {
    PhaseStream st{77, 2};
    CHECK(st.omega(3, -2) == st.omega(-3, 2));
    CHECK(st.omega(0, 5) == st.omega(0, -5));
    CHECK(st.omega(1, 0) != st.omega(0, 1));
    CHECK_THROWS_AS(st.omega(0, 0), std::domain_error);
}

TEST_CASE("replica seed mixing separates streams") {
    std::vector<double> firsts;
    for (std::uint64_t r = 0; r < 64; ++r) {
        PhaseStream st{mix64(42, r), 1};
        firsts.push_back(st.omega(1) / two_pi);
    }
    std::sort(firsts.begin(), firsts.end());
    for (std::size_t i = 1; i < firsts.size(); ++i) CHECK(firsts[i] != firsts[i - 1]);
}

TEST_CASE("fft matches a direct DFT") {
    const std::size_t n = 64;
    std::vector<std::complex<double>> a(n);
    PhaseStream st{5, 1};
    for (std::size_t i = 0; i < n; ++i)
        a[i] = {st.uniform01(2 * i) - 0.5, st.uniform01(2 * i + 1) - 0.5};
    auto b = a;
    fft_pow2(b, false);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> s = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            s += a[j] * std::polar(1.0, -two_pi * static_cast<double>(j * k) / n);
        CHECK(std::abs(b[k] - s) < 1e-10);
    }
    fft_pow2(b, true);
    for (std::size_t i = 0; i < n; ++i)
        CHECK(std::abs(b[i] / static_cast<double>(n) - a[i]) < 1e-12);
}

TEST_CASE("grid synthesis agrees with direct cosine evaluation") {
    const std::size_t N = 37, M = 128;
    PhaseStream st{99, 1};
    std::vector<std::complex<double>> coef(N);
    for (std::uint64_t n = 1; n <= N; ++n) {
        double w = st.omega(n);
        double amp = 1.0 / std::sqrt(static_cast<double>(n));
        coef[n - 1] = amp * std::complex<double>(std::cos(w), std::sin(w));
    }
    auto fast = synthesize_grid_1d(coef, M);
    for (std::size_t j = 0; j < M; j += 7) {
        double t = grid_point(j, M), s = 0.0;
        for (std::uint64_t n = 1; n <= N; ++n)
            s += std::abs(coef[n - 1]) * std::cos(n * t + std::arg(coef[n - 1]));
        CHECK(fast[j] == Catch::Approx(s).margin(1e-11));
    }
    auto slow = synthesize_grid_1d(coef, 96);
    for (std::size_t j = 0; j < 96; j += 11) {
        double t = grid_point(j, 96), s = 0.0;
        for (std::uint64_t n = 1; n <= N; ++n)
            s += std::abs(coef[n - 1]) * std::cos(n * t + std::arg(coef[n - 1]));
        CHECK(slow[j] == Catch::Approx(s).margin(1e-11));
    }
    CHECK_THROWS_AS(synthesize_grid_1d(coef, 2 * N - 1), std::invalid_argument);
}

TEST_CASE("2-d grid synthesis agrees with direct evaluation") {
    const std::size_t M = 32;
    PhaseStream st{11, 2};
    std::vector<lattice_coef> coef;
    for (int k1 = -3; k1 <= 3; ++k1)
        for (int k2 = -3; k2 <= 3; ++k2) {
            if ((k1 == 0 && k2 == 0) || !(k1 > 0 || (k1 == 0 && k2 > 0))) continue;
            double w = st.omega(k1, k2);
            double amp = 1.0 / std::hypot(k1, k2);
            coef.push_back({k1, k2, amp * std::complex<double>(std::cos(w), std::sin(w))});
        }
    auto grid = synthesize_grid_2d(coef, M);
    for (std::size_t j1 = 0; j1 < M; j1 += 5)
        for (std::size_t j2 = 0; j2 < M; j2 += 7) {
            double t1 = grid_point(j1, M), t2 = grid_point(j2, M), s = 0.0;
            for (auto& lc : coef)
                s += std::abs(lc.c) * std::cos(lc.k1 * t1 + lc.k2 * t2 + std::arg(lc.c));
            CHECK(grid[j1 * M + j2] == Catch::Approx(s).margin(1e-11));
        }
}
