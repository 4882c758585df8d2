#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace chaoslab {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 6.28318530717958647692;

using vec2 = std::array<double, 2>;

// wrap to the canonical representative in [-pi, pi)
inline double wrap_angle(double x) {
    double y = std::fmod(x + pi, two_pi);
    if (y < 0) y += two_pi;
    return y - pi;
}

inline vec2 wrap_angle(vec2 x) { return {wrap_angle(x[0]), wrap_angle(x[1])}; }

inline double norm2(vec2 x) { return std::hypot(x[0], x[1]); }

// center of grid cell j on an M-point uniform grid of [-pi, pi)
inline double grid_point(std::size_t j, std::size_t M) {
    return -pi + two_pi * static_cast<double>(j) / static_cast<double>(M);
}

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

} // namespace chaoslab
