#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "chaoslab/common.hpp"

namespace chaoslab {

namespace detail {

using cvec = std::vector<std::complex<double>>;

// twiddle table e^{-2 pi i k / n}, k < n/2; cached per size
inline const cvec& twiddles(std::size_t n) {
    static std::map<std::size_t, cvec> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    cvec t(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k)
        t[k] = std::polar(1.0, -two_pi * static_cast<double>(k) / static_cast<double>(n));
    return cache.emplace(n, std::move(t)).first->second;
}

} // namespace detail

// In-place iterative radix-2 FFT, convention X[j] = sum_k a[k] e^{-2 pi i jk/n}
// (inverse = conjugate convention, no 1/n scaling).
inline void fft_pow2(std::vector<std::complex<double>>& a, bool inverse = false) {
    const std::size_t n = a.size();
    if (!is_pow2(n)) throw std::invalid_argument("fft_pow2: size must be a power of two");
    if (n <= 1) return;
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const auto& tw = detail::twiddles(n);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t step = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double> w = tw[k * step];
                if (inverse) w = std::conj(w);
                std::complex<double> u = a[i + k];
                std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

// Synthesize f(t_j) = Re sum_{n=1}^{N} c_n e^{i n t_j} on the grid
// t_j = -pi + 2 pi j / M. Uses the inverse FFT when M is a power of two,
// otherwise a direct rotation recurrence (same values up to roundoff).
inline std::vector<double> synthesize_grid_1d(const std::vector<std::complex<double>>& coef,
                                              std::size_t M) {
    const std::size_t N = coef.size();  // coef[n-1] holds c_n
    if (M < 2 * N) throw std::invalid_argument("synthesize_grid_1d: M >= 2N required");
    std::vector<double> out(M);
    if (is_pow2(M)) {
        std::vector<std::complex<double>> spec(M, 0.0);
        double sign = -1.0;  // (-1)^n from the grid offset -pi
        for (std::size_t n = 1; n <= N; ++n) {
            spec[n] = coef[n - 1] * sign;
            sign = -sign;
        }
        fft_pow2(spec, /*inverse=*/true);
        for (std::size_t j = 0; j < M; ++j) out[j] = spec[j].real();
        return out;
    }
    for (std::size_t j = 0; j < M; ++j) {
        const double t = grid_point(j, M);
        const std::complex<double> rot = std::polar(1.0, t);
        std::complex<double> e = rot;  // e^{i n t}, n = 1
        double s = 0.0;
        for (std::size_t n = 1; n <= N; ++n) {
            s += (coef[n - 1] * e).real();
            e *= rot;
        }
        out[j] = s;
    }
    return out;
}

// 2-d version: f(t1,t2) = Re sum c_k e^{i k.t} over the supplied lattice points,
// on the MxM grid of [-pi,pi)^2 (row-major, index j1*M + j2).
struct lattice_coef {
    int k1, k2;
    std::complex<double> c;
};

inline std::vector<double> synthesize_grid_2d(const std::vector<lattice_coef>& coef,
                                              std::size_t M) {
    if (!is_pow2(M)) throw std::invalid_argument("synthesize_grid_2d: M must be a power of two");
    std::vector<std::complex<double>> spec(M * M, 0.0);
    const std::ptrdiff_t Ms = static_cast<std::ptrdiff_t>(M);
    for (const auto& lc : coef) {
        if (2 * std::abs(lc.k1) + 1 > Ms || 2 * std::abs(lc.k2) + 1 > Ms)
            throw std::invalid_argument("synthesize_grid_2d: M >= 2|k|+1 required");
        const double sgn = ((lc.k1 + lc.k2) & 1) ? -1.0 : 1.0;
        std::size_t i1 = static_cast<std::size_t>((lc.k1 % Ms + Ms) % Ms);
        std::size_t i2 = static_cast<std::size_t>((lc.k2 % Ms + Ms) % Ms);
        spec[i1 * M + i2] += lc.c * sgn;
    }
    // rows then columns
    std::vector<std::complex<double>> buf(M);
    for (std::size_t r = 0; r < M; ++r) {
        for (std::size_t c = 0; c < M; ++c) buf[c] = spec[r * M + c];
        fft_pow2(buf, true);
        for (std::size_t c = 0; c < M; ++c) spec[r * M + c] = buf[c];
    }
    for (std::size_t c = 0; c < M; ++c) {
        for (std::size_t r = 0; r < M; ++r) buf[r] = spec[r * M + c];
        fft_pow2(buf, true);
        for (std::size_t r = 0; r < M; ++r) spec[r * M + c] = buf[r];
    }
    std::vector<double> out(M * M);
    for (std::size_t i = 0; i < M * M; ++i) out[i] = spec[i].real();
    return out;
}

} // namespace chaoslab
