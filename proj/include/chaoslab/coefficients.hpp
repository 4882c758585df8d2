#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "chaoslab/common.hpp"

namespace chaoslab {

enum class coeff_family { inverse_sqrt, power, log_corrected, explicit_list };

// keep only odd / even frequencies (the two halves of the frequency split)
enum class parity_filter { all, odd_only, even_only };

// Deterministic amplitude family alpha_n (d=1) or alpha_k = scale |k|^{-d/2}
// (d=2, k in Z^2 with k ~ -k identified).
struct CoefficientSequence {
    coeff_family family = coeff_family::inverse_sqrt;
    int dimension = 1;
    double scale = 1.0;       // alpha for inverse_sqrt; plain multiplier otherwise
    double r = 0.5;           // power family exponent: rho_n = n^{-r}
    double tau = 1.0;         // log_corrected: alpha_n^2 = n^{-tau} log^{-beta} n
    double beta = 0.0;
    std::vector<double> values;  // explicit_list
    parity_filter parity = parity_filter::all;

    static CoefficientSequence inverse_sqrt(double alpha) {
        CoefficientSequence c;
        c.family = coeff_family::inverse_sqrt;
        c.scale = alpha;
        return c;
    }
    static CoefficientSequence power(double r, double scale = 1.0) {
        CoefficientSequence c;
        c.family = coeff_family::power;
        c.r = r;
        c.scale = scale;
        return c;
    }
    static CoefficientSequence log_corrected(double tau, double beta, double scale = 1.0) {
        CoefficientSequence c;
        c.family = coeff_family::log_corrected;
        c.tau = tau;
        c.beta = beta;
        c.scale = scale;
        return c;
    }
    static CoefficientSequence explicit_list(std::vector<double> v) {
        CoefficientSequence c;
        c.family = coeff_family::explicit_list;
        c.values = std::move(v);
        return c;
    }
    static CoefficientSequence standard_2d(double alpha) {
        CoefficientSequence c;
        c.family = coeff_family::inverse_sqrt;
        c.scale = alpha;
        c.dimension = 2;
        return c;
    }

    // alpha_n^2 before scale/parity, d=1
    double base_sq(std::uint64_t n) const {
        switch (family) {
            case coeff_family::inverse_sqrt:
                return 1.0 / static_cast<double>(n);
            case coeff_family::power:
                return std::pow(static_cast<double>(n), -2.0 * r);
            case coeff_family::log_corrected: {
                if (beta == 0.0) return std::pow(static_cast<double>(n), -tau);
                auto sq = [&](std::uint64_t m) {
                    return std::pow(static_cast<double>(m), -tau) *
                           std::pow(std::log(static_cast<double>(m)), -beta);
                };
                if (n >= 3) return sq(n);
                // backward extension with the n=3 difference, keeps {alpha_n^2} convex
                double d3 = sq(3) - sq(4);
                return sq(3) + d3 * static_cast<double>(3 - n);
            }
            case coeff_family::explicit_list: {
                if (n == 0 || n > values.size()) return 0.0;
                double v = values[n - 1];
                return v * v;
            }
        }
        return 0.0;
    }

    bool parity_keeps(std::uint64_t n) const {
        if (parity == parity_filter::odd_only) return (n % 2) == 1;
        if (parity == parity_filter::even_only) return (n % 2) == 0;
        return true;
    }

    double alpha_sq(std::uint64_t n) const {
        if (dimension != 1) throw std::logic_error("alpha_sq: d=1 sequences only");
        if (n == 0) throw std::domain_error("alpha_sq: indices start at 1");
        if (!parity_keeps(n)) return 0.0;
        return scale * scale * base_sq(n);
    }

    double alpha(std::uint64_t n) const {
        double s2 = alpha_sq(n);
        double a = std::sqrt(s2);
        if (family == coeff_family::explicit_list && n >= 1 && n <= values.size())
            return parity_keeps(n) ? scale * values[n - 1] : 0.0;  // keep the sign
        return (scale < 0 ? -a : a);
    }

    // d=2 amplitude at a lattice point, alpha_k = scale |k|^{-d/2}
    double alpha_2d(int k1, int k2) const {
        if (k1 == 0 && k2 == 0) throw std::domain_error("alpha_2d: k = 0 excluded");
        return scale / std::hypot(static_cast<double>(k1), static_cast<double>(k2));
    }

    double sum_alpha_sq(std::uint64_t N) const {
        double s = 0.0;
        for (std::uint64_t n = 1; n <= N; ++n) s += alpha_sq(n);
        return s;
    }
    double sum_n2_alpha_sq(std::uint64_t N) const {
        double s = 0.0;
        for (std::uint64_t n = 1; n <= N; ++n)
            s += static_cast<double>(n) * static_cast<double>(n) * alpha_sq(n);
        return s;
    }
};

// ---------------------------------------------------------------------------
// cube shells in Z^2_+ (Z^2 \ {0} with k and -k identified):
// C_n^+ = canonical points with |k|_inf <= n, canonical = (k1 > 0) or (k1 == 0, k2 > 0)
// ---------------------------------------------------------------------------

inline bool lattice_canonical(int k1, int k2) {
    return k1 > 0 || (k1 == 0 && k2 > 0);
}

inline std::size_t cube_plus_count(int n) {
    std::size_t side = 2 * static_cast<std::size_t>(n) + 1;
    return (side * side - 1) / 2;
}

// visit the shell dC_s^+ = C_s^+ \ C_{s-1}^+
template <class F>
void for_each_shell_point(int s, F&& fn) {
    if (s < 1) return;
    for (int k1 = -s; k1 <= s; ++k1) {
        for (int k2 = -s; k2 <= s; ++k2) {
            if (std::max(std::abs(k1), std::abs(k2)) != s) continue;
            if (!lattice_canonical(k1, k2)) continue;
            fn(k1, k2);
        }
    }
}

template <class F>
void for_each_cube_point(int n, F&& fn) {
    for (int s = 1; s <= n; ++s) for_each_shell_point(s, fn);
}

} // namespace chaoslab
