#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "chaoslab/chaos.hpp"
#include "chaoslab/fft.hpp"
#include "chaoslab/grid_measure.hpp"
#include "chaoslab/kernels.hpp"
#include "chaoslab/parallel.hpp"
#include "chaoslab/quadrature.hpp"
#include "chaoslab/stats.hpp"

namespace chaoslab {

// ---------------------------------------------------------------------------
// kernel tables on the displacement grid; diagonal cells get the cell-averaged
// kernel so grid measures stand in for diffuse ones
// ---------------------------------------------------------------------------

inline double kernel_cell_average(const TorusKernel& k, double cell) {
    const double a = 0.5 * cell;
    if (!k.singular) {
        return integrate([&](double u) { return k(u); }, -a, a, 1e-12) / cell;
    }
    if (k.sing_order >= 1.0) return std::numeric_limits<double>::infinity();
    // u = v^2 flattens the |u|^{-beta} endpoint
    double half = integrate([&](double v) { return k(v * v) * 2.0 * v; }, 0.0, std::sqrt(a), 1e-12);
    return 2.0 * half / cell;
}

inline std::vector<double> kernel_table_1d(const TorusKernel& k, std::size_t M) {
    std::vector<double> tab(M);
    tab[0] = kernel_cell_average(k, two_pi / static_cast<double>(M));
    for (std::size_t dd = 1; dd < M; ++dd)
        tab[dd] = k(wrap_angle(two_pi * static_cast<double>(dd) / static_cast<double>(M)));
    return tab;
}

inline double kernel_cell_average_2d(const TorusKernel& k, double cell) {
    if (k.singular && k.sing_order >= 2.0) return std::numeric_limits<double>::infinity();
    const double a = 0.5 * cell;
    double q;
    if (!k.singular) {
        q = integrate([&](double x) {
            return integrate([&](double y) { return k(vec2{x, y}); }, 0.0, a, 1e-9);
        }, 0.0, a, 1e-8);
    } else {
        // x = u^2, y = v^2 tames the corner singularity; GK nodes stay interior
        const double sa = std::sqrt(a);
        q = integrate([&](double u) {
            return 2.0 * u * integrate([&](double v) { return k(vec2{u * u, v * v}) * 2.0 * v; },
                                       0.0, sa, 1e-9);
        }, 0.0, sa, 1e-8);
    }
    return 4.0 * q / (cell * cell);  // even in both coordinates
}

inline std::vector<double> kernel_table_2d(const TorusKernel& k, std::size_t M) {
    std::vector<double> tab(M * M);
    parallel_for(M, [&](std::size_t d1) {
        for (std::size_t d2 = 0; d2 < M; ++d2) {
            if (d1 == 0 && d2 == 0) continue;
            vec2 x{wrap_angle(two_pi * static_cast<double>(d1) / static_cast<double>(M)),
                   wrap_angle(two_pi * static_cast<double>(d2) / static_cast<double>(M))};
            tab[d1 * M + d2] = k(x);
        }
    });
    tab[0] = kernel_cell_average_2d(k, two_pi / static_cast<double>(M));
    return tab;
}

// ---------------------------------------------------------------------------
// energies: direct O(M^2) double sum and the Fourier route
// ---------------------------------------------------------------------------

struct EnergyReport {
    std::string kernel;
    std::string method;
    double value = 0.0;
    bool infinite = false;
    double tail_est = 0.0;
};

namespace detail {

inline bool energy_is_infinite(const GridMeasure& sigma, const TorusKernel& k) {
    if (!k.singular) return false;
    if (k.sing_order >= sigma.d) return true;   // non-integrable kernel
    return sigma.has_atoms;                     // a true atom has infinite self-energy
}

} // namespace detail

inline EnergyReport energy_direct(const GridMeasure& sigma, const TorusKernel& k) {
    EnergyReport rep{k.name, "direct", 0.0, false, 0.0};
    if (detail::energy_is_infinite(sigma, k)) {
        rep.infinite = true;
        return rep;
    }
    const std::size_t M = sigma.M;
    if (sigma.d == 1) {
        std::vector<double> tab = kernel_table_1d(k, M);
        std::vector<double> row(M);
        parallel_for(M, [&](std::size_t i) {
            double s = 0.0;
            for (std::size_t j = 0; j < M; ++j)
                s += sigma.w[j] * tab[(i + M - j) % M];
            row[i] = sigma.w[i] * s;
        });
        rep.value = std::accumulate(row.begin(), row.end(), 0.0);
        return rep;
    }
    std::vector<double> tab = kernel_table_2d(k, M);
    std::vector<double> row(M * M);
    parallel_for(M * M, [&](std::size_t i) {
        const std::size_t i1 = i / M, i2 = i % M;
        if (sigma.w[i] == 0.0) {
            row[i] = 0.0;
            return;
        }
        double s = 0.0;
        for (std::size_t j1 = 0; j1 < M; ++j1)
            for (std::size_t j2 = 0; j2 < M; ++j2)
                s += sigma.w[j1 * M + j2] * tab[((i1 + M - j1) % M) * M + ((i2 + M - j2) % M)];
        row[i] = sigma.w[i] * s;
    });
    rep.value = std::accumulate(row.begin(), row.end(), 0.0);
    return rep;
}

namespace detail {

inline std::vector<std::complex<double>> dft(const std::vector<double>& v) {
    const std::size_t M = v.size();
    std::vector<std::complex<double>> a(M);
    for (std::size_t i = 0; i < M; ++i) a[i] = v[i];
    if (is_pow2(M)) {
        fft_pow2(a, false);
        return a;
    }
    std::vector<std::complex<double>> out(M, 0.0);
    for (std::size_t n = 0; n < M; ++n) {
        std::complex<double> s = 0.0;
        for (std::size_t j = 0; j < M; ++j)
            s += v[j] * std::polar(1.0, -two_pi * static_cast<double>(n * j % M) / static_cast<double>(M));
        out[n] = s;
    }
    return out;
}

} // namespace detail

// spectral evaluation: I = sum_n Phi_hat(n) |sigma_hat(n)|^2 with the paper's
// 4 pi^2 normalization folded in; the grid-sampled kernel (with the diagonal
// rule) supplies Phi_hat, so the value targets the same discretized object as
// energy_direct through an entirely different accumulation.
inline EnergyReport energy_fourier(const GridMeasure& sigma, const TorusKernel& k) {
    EnergyReport rep{k.name, "fourier", 0.0, false, 0.0};
    if (detail::energy_is_infinite(sigma, k)) {
        rep.infinite = true;
        return rep;
    }
    if (sigma.d != 1) throw std::domain_error("energy_fourier: d=1 grids (use the Riesz series for d=2)");
    const std::size_t M = sigma.M;
    std::vector<double> tab = kernel_table_1d(k, M);
    auto phi = detail::dft(tab);
    auto sig = detail::dft(sigma.w);
    double s = 0.0;
    for (std::size_t n = 0; n < M; ++n)
        s += phi[n].real() * std::norm(sig[n]);
    rep.value = s / static_cast<double>(M);
    return rep;
}

// d=2 Riesz energy by the lattice series B |sigma_hat(0)|^2 +
// sum |sigma_hat(m)|^2 / |m|^{d-beta}; B is a documented normalization (B = 1).
inline EnergyReport energy_fourier_riesz_2d(const GridMeasure& sigma, double beta,
                                            double B = 1.0) {
    if (sigma.d != 2) throw std::domain_error("energy_fourier_riesz_2d: d=2 measure required");
    if (!(beta > 0.0 && beta < 2.0)) throw std::domain_error("energy_fourier_riesz_2d: beta in (0,2)");
    EnergyReport rep{"riesz-series(beta=" + std::to_string(beta) + ")", "fourier", 0.0, false, 0.0};
    const std::size_t M = sigma.M;
    // sigma_hat(m) = (1/4pi^2) sum w_j e^{-i m . t_j}
    std::vector<std::complex<double>> spec(M * M);
    for (std::size_t i = 0; i < M * M; ++i) spec[i] = sigma.w[i];
    std::vector<std::complex<double>> buf(M);
    for (std::size_t r = 0; r < M; ++r) {
        for (std::size_t c = 0; c < M; ++c) buf[c] = spec[r * M + c];
        fft_pow2(buf, false);
        for (std::size_t c = 0; c < M; ++c) spec[r * M + c] = buf[c];
    }
    for (std::size_t c = 0; c < M; ++c) {
        for (std::size_t r = 0; r < M; ++r) buf[r] = spec[r * M + c];
        fft_pow2(buf, false);
        for (std::size_t r = 0; r < M; ++r) spec[r * M + c] = buf[r];
    }
    const double norm = 1.0 / (two_pi * two_pi);
    const std::ptrdiff_t half = static_cast<std::ptrdiff_t>(M / 2);
    double s = 0.0, edge = 0.0;
    for (std::ptrdiff_t m1 = -half; m1 < half; ++m1) {
        for (std::ptrdiff_t m2 = -half; m2 < half; ++m2) {
            std::size_t i1 = static_cast<std::size_t>((m1 + static_cast<std::ptrdiff_t>(M)) %
                                                      static_cast<std::ptrdiff_t>(M));
            std::size_t i2 = static_cast<std::size_t>((m2 + static_cast<std::ptrdiff_t>(M)) %
                                                      static_cast<std::ptrdiff_t>(M));
            double p = std::norm(spec[i1 * M + i2] * norm);
            if (m1 == 0 && m2 == 0) {
                s += B * p;
                continue;
            }
            double mm = std::hypot(static_cast<double>(m1), static_cast<double>(m2));
            double term = p / std::pow(mm, 2.0 - beta);
            s += term;
            if (std::max(std::abs(m1), std::abs(m2)) == half - 1) edge += term;
        }
    }
    rep.value = s;
    rep.tail_est = edge;  // outermost-ring contribution, a crude truncation gauge
    return rep;
}

// ---------------------------------------------------------------------------
// potentials
// ---------------------------------------------------------------------------

inline std::vector<double> potential_profile(const GridMeasure& sigma, const TorusKernel& k) {
    if (sigma.d != 1) throw std::domain_error("potential_profile: d=1");
    const std::size_t M = sigma.M;
    std::vector<double> tab = kernel_table_1d(k, M);
    std::vector<double> U(M);
    parallel_for(M, [&](std::size_t i) {
        double s = 0.0;
        for (std::size_t j = 0; j < M; ++j) s += sigma.w[j] * tab[(i + M - j) % M];
        U[i] = s;
    });
    return U;
}

// ---------------------------------------------------------------------------
// capacity by Frank-Wolfe over the probability simplex on the support mask
// (away steps restore linear convergence near the face optimum)
// ---------------------------------------------------------------------------

struct CapacityResult {
    double capacity = 0.0;
    double energy = 0.0;
    double gap = 0.0;          // Frank-Wolfe duality gap at exit
    std::size_t iterations = 0;
    bool zero_capacity = false;
    std::vector<double> weights;  // full grid, zero off the mask
};

inline CapacityResult capacity_estimate(const std::vector<std::uint8_t>& mask,
                                        const TorusKernel& k, std::size_t max_iterations,
                                        double rel_gap_tol = 1e-6) {
    const std::size_t M = mask.size();
    std::vector<std::size_t> cells;
    for (std::size_t i = 0; i < M; ++i)
        if (mask[i]) cells.push_back(i);
    if (cells.empty()) throw std::domain_error("capacity_estimate: empty support");

    CapacityResult res;
    res.weights.assign(M, 0.0);
    std::vector<double> tab = kernel_table_1d(k, M);
    if (std::isinf(tab[0])) {  // non-integrable kernel: every cell is polar
        res.zero_capacity = true;
        return res;
    }

    const std::size_t m = cells.size();
    std::vector<double> w(m, 0.0), Aw(m, 0.0);
    w[0] = 1.0;
    for (std::size_t i = 0; i < m; ++i)
        Aw[i] = tab[(cells[i] + M - cells[0]) % M];
    double E = Aw[0];

    auto add_column = [&](std::size_t s, double coef) {
        for (std::size_t i = 0; i < m; ++i)
            Aw[i] += coef * tab[(cells[i] + M - cells[s]) % M];
    };

    std::size_t it = 0;
    for (; it < max_iterations; ++it) {
        std::size_t s = 0, a = 0;
        double gmin = 1e300, gmax = -1e300;
        for (std::size_t i = 0; i < m; ++i) {
            if (Aw[i] < gmin) { gmin = Aw[i]; s = i; }
            if (w[i] > 0.0 && Aw[i] > gmax) { gmax = Aw[i]; a = i; }
        }
        double gap = 2.0 * (E - gmin);
        res.gap = gap;
        if (gap <= rel_gap_tol * std::abs(E)) break;

        double away_gap = 2.0 * (gmax - E);
        if (gap >= away_gap || w[a] >= 1.0) {
            // toward vertex s
            double denom = tab[0] - 2.0 * Aw[s] + E;
            double gamma = denom > 0 ? std::clamp((E - Aw[s]) / denom, 0.0, 1.0) : 1.0;
            if (gamma <= 0.0) break;
            for (double& x : w) x *= (1.0 - gamma);
            w[s] += gamma;
            for (double& x : Aw) x *= (1.0 - gamma);
            add_column(s, gamma);
            E = 0.0;
            for (std::size_t i = 0; i < m; ++i) E += w[i] * Aw[i];
        } else {
            // away from vertex a
            double gmaxstep = w[a] / (1.0 - w[a]);
            double denom = tab[0] - 2.0 * Aw[a] + E;
            double gamma = denom > 0 ? std::clamp((Aw[a] - E) / denom, 0.0, gmaxstep) : gmaxstep;
            if (gamma <= 0.0) break;
            for (double& x : w) x *= (1.0 + gamma);
            w[a] -= gamma;
            if (w[a] < 1e-15) w[a] = 0.0;
            for (double& x : Aw) x *= (1.0 + gamma);
            add_column(a, -gamma);
            E = 0.0;
            for (std::size_t i = 0; i < m; ++i) E += w[i] * Aw[i];
        }
    }
    res.iterations = it;
    res.energy = E;
    res.capacity = 1.0 / E;
    for (std::size_t i = 0; i < m; ++i) res.weights[cells[i]] = w[i];
    return res;
}

// ---------------------------------------------------------------------------
// local dimension profile: slopes of log sigma(B(x,r)) against log r
// ---------------------------------------------------------------------------

struct LocalDimProfile {
    std::vector<double> slopes;   // one per grid point carrying mass
    std::vector<double> weights;  // the sigma-weights of those points
    double dim_lower = 0.0;       // sigma-weighted 1st percentile  (dim_* proxy)
    double dim_upper = 0.0;       // sigma-weighted 99th percentile (dim^* proxy)
    double dim_median = 0.0;
};

namespace detail {

// fractional cumulative weight: mass of [-pi, -pi + q * cell) with wrap
struct BallMass1D {
    const GridMeasure* g;
    std::vector<double> prefix;  // prefix[j] = sum_{c<j} w_c
    double total;

    explicit BallMass1D(const GridMeasure& gm) : g(&gm), prefix(gm.M + 1, 0.0) {
        for (std::size_t j = 0; j < gm.M; ++j) prefix[j + 1] = prefix[j] + gm.w[j];
        total = prefix[gm.M];
    }
    double cum(double q) const {
        const double Md = static_cast<double>(g->M);
        double wraps = std::floor(q / Md);
        double qr = q - wraps * Md;
        std::size_t c = std::min<std::size_t>(static_cast<std::size_t>(qr), g->M - 1);
        return wraps * total + prefix[c] + (qr - static_cast<double>(c)) * g->w[c];
    }
    // mass of the closed ball B(x, r), boundary cells counted fractionally
    double operator()(double x, double r) const {
        const double cell = g->cell_width();
        double a = (x - r + pi) / cell, b = (x + r + pi) / cell;
        return cum(b) - cum(a);
    }
};

} // namespace detail

inline LocalDimProfile local_dimension_profile(const GridMeasure& sigma,
                                               const std::vector<double>& radii) {
    if (sigma.d != 1) throw std::domain_error("local_dimension_profile: d=1");
    if (radii.size() < 2) throw std::domain_error("local_dimension_profile: need >= 2 radii");
    const double cell = sigma.cell_width();
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (radii[i] < cell)
            throw std::domain_error("local_dimension_profile: radius below grid resolution");
        if (i > 0 && radii[i] >= radii[i - 1])
            throw std::domain_error("local_dimension_profile: radii must decrease");
    }
    detail::BallMass1D ball(sigma);
    const std::size_t nr = radii.size();
    std::vector<double> lr(nr);
    for (std::size_t i = 0; i < nr; ++i) lr[i] = std::log(radii[i]);
    double lr_mean = 0.0;
    for (double v : lr) lr_mean += v;
    lr_mean /= static_cast<double>(nr);
    double lr_var = 0.0;
    for (double v : lr) lr_var += (v - lr_mean) * (v - lr_mean);

    const std::size_t M = sigma.M;
    std::vector<double> slopes(M, 0.0);
    std::vector<std::uint8_t> keep(M, 0);
    parallel_for(M, [&](std::size_t j) {
        if (sigma.w[j] <= 0.0) return;
        double x = grid_point(j, M) + 0.5 * cell;  // cells span [t_j, t_j + cell)
        double num = 0.0;
        for (std::size_t i = 0; i < nr; ++i) {
            double mm = ball(x, radii[i]);
            if (mm <= 0.0) return;
            num += (lr[i] - lr_mean) * std::log(mm);
        }
        slopes[j] = num / lr_var;
        keep[j] = 1;
    });

    LocalDimProfile prof;
    for (std::size_t j = 0; j < M; ++j) {
        if (!keep[j]) continue;
        prof.slopes.push_back(slopes[j]);
        prof.weights.push_back(sigma.w[j]);
    }
    if (prof.slopes.empty()) throw std::domain_error("local_dimension_profile: empty measure");
    prof.dim_lower = weighted_quantile(prof.slopes, prof.weights, 0.01);
    prof.dim_upper = weighted_quantile(prof.slopes, prof.weights, 0.99);
    prof.dim_median = weighted_quantile(prof.slopes, prof.weights, 0.5);
    return prof;
}

inline std::vector<double> default_radii(double r0 = 0.1, int count = 8, double ratio = 0.5) {
    std::vector<double> r(count);
    for (int i = 0; i < count; ++i) r[i] = r0 * std::pow(ratio, i);
    return r;
}

// ---------------------------------------------------------------------------
// Kahane splitting by potential level bands
// ---------------------------------------------------------------------------

struct KahaneSplit {
    std::vector<double> band_mass;  // band i (1-based): U in [i-1, i)
    double remainder_mass = 0.0;    // U >= L, the empirical singular part
    std::vector<int> band;          // per cell: 1..L, or 0 for the remainder
};

inline KahaneSplit kahane_split(const GridMeasure& sigma, const TorusKernel& k, int levels) {
    if (levels < 1) throw std::domain_error("kahane_split: levels >= 1");
    std::vector<double> U;
    if (sigma.has_atoms && k.singular) {
        // atoms have infinite potential at their own cell; treat directly
        U.assign(sigma.M, 0.0);
        std::vector<double> tab = kernel_table_1d(k, sigma.M);
        for (std::size_t i = 0; i < sigma.M; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < sigma.M; ++j) {
                if (i == j && sigma.w[j] > 0.0) {
                    s = std::numeric_limits<double>::infinity();
                    break;
                }
                s += sigma.w[j] * tab[(i + sigma.M - j) % sigma.M];
            }
            U[i] = s;
        }
    } else {
        U = potential_profile(sigma, k);
    }
    KahaneSplit out;
    out.band_mass.assign(static_cast<std::size_t>(levels) + 1, 0.0);
    out.band.assign(sigma.M, 0);
    for (std::size_t j = 0; j < sigma.M; ++j) {
        if (sigma.w[j] <= 0.0) continue;
        if (U[j] >= static_cast<double>(levels) || std::isinf(U[j])) {
            out.remainder_mass += sigma.w[j];
        } else {
            int b = std::max(1, static_cast<int>(std::floor(U[j])) + 1);
            out.band[j] = b;
            out.band_mass[static_cast<std::size_t>(b)] += sigma.w[j];
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// dimension formula check: median local dimension of Q_N sigma vs D - tau(d) a^2/4
// ---------------------------------------------------------------------------

struct DimCheckReport {
    double predicted = 0.0;
    double estimate = 0.0;         // median over replicas of the sigma-median slope
    std::vector<double> medians;   // per replica
    bool expected_degenerate = false;
};

inline DimCheckReport dimension_formula_check(double alpha, std::uint64_t N, std::size_t M,
                                              std::uint64_t replicas, std::uint64_t seed,
                                              std::vector<double> radii = default_radii(),
                                              double base_dim = 1.0) {
    DimCheckReport rep;
    const double tau = surface_constants(1).tau;  // d=1 lane
    rep.predicted = base_dim - 0.25 * tau * alpha * alpha;
    if (rep.predicted <= 0.0) {
        rep.expected_degenerate = true;
        return rep;
    }
    CoefficientSequence spec = CoefficientSequence::inverse_sqrt(alpha);
    GridMeasure base = lebesgue_measure(M);
    rep.medians.resize(replicas);
    for (std::uint64_t r = 0; r < replicas; ++r) {
        GridMeasure qn = base;
        if (alpha != 0.0 && N > 0) {
            PhaseStream st{mix64(seed, r), 1};
            std::vector<double> lq = build_logq_partial(spec, 0, N, M, st);
            qn = measure_from_log_density(lq, base);
        }
        rep.medians[r] = local_dimension_profile(qn, radii).dim_median;
    }
    rep.estimate = median(rep.medians);
    return rep;
}

} // namespace chaoslab
