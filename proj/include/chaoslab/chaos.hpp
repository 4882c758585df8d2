#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "chaoslab/coefficients.hpp"
#include "chaoslab/common.hpp"
#include "chaoslab/fft.hpp"
#include "chaoslab/grid_measure.hpp"
#include "chaoslab/kernels.hpp"
#include "chaoslab/parallel.hpp"
#include "chaoslab/rng.hpp"
#include "chaoslab/specfun.hpp"
#include "chaoslab/stats.hpp"

namespace chaoslab {

// ---------------------------------------------------------------------------
// weights and realizations
// ---------------------------------------------------------------------------

// log P_n(t) = alpha_n cos(nt + omega_n) - log I_0(alpha_n), d=1
inline double weight_log(std::uint64_t n, double t, const CoefficientSequence& spec,
                         const PhaseStream& phases) {
    double a = spec.alpha(n);
    if (a == 0.0) return 0.0;
    return a * std::cos(static_cast<double>(n) * t + phases.omega(n)) - log_i0(a);
}

// d=2 shell weight: sum over the cube shell dC_n^+
inline double weight_log_shell(int n, vec2 t, const CoefficientSequence& spec,
                               const PhaseStream& phases) {
    double s = 0.0;
    for_each_shell_point(n, [&](int k1, int k2) {
        double a = spec.alpha_2d(k1, k2);
        s += a * std::cos(k1 * t[0] + k2 * t[1] + phases.omega(k1, k2)) - log_i0(a);
    });
    return s;
}

struct ChaosRealization {
    int d = 1;
    std::size_t M = 0;
    std::uint64_t N = 0;
    std::uint64_t seed = 0;
    CoefficientSequence spec;
    std::vector<double> logq;  // d=1: size M; d=2: M*M row-major

    // (1/2pi)^d integral of Q dt, trapezoid on the periodic grid
    double mass() const {
        double s = 0.0;
        for (double v : logq) s += std::exp(v);
        return s / static_cast<double>(logq.size());
    }
};

// e^{i omega_n} for n = 1..N; shared between the chaos field and the series
// partial sums so one stream drives both
inline std::vector<std::complex<double>> phase_coefs(const PhaseStream& st, std::uint64_t N) {
    std::vector<std::complex<double>> c(N);
    for (std::uint64_t n = 1; n <= N; ++n) {
        double w = st.omega(n);
        c[n - 1] = {std::cos(w), std::sin(w)};
    }
    return c;
}

// logQ over frequencies n in (n_lo, n_hi] on the M-grid (d=1)
inline std::vector<double> build_logq_partial(const CoefficientSequence& spec,
                                              std::uint64_t n_lo, std::uint64_t n_hi,
                                              std::size_t M, const PhaseStream& st) {
    if (M < 2 * n_hi) throw std::invalid_argument("simulate: grid must resolve 2N (M >= 2N)");
    std::vector<std::complex<double>> coef(n_hi, 0.0);
    double c_norm = 0.0;
    for (std::uint64_t n = n_lo + 1; n <= n_hi; ++n) {
        double a = spec.alpha(n);
        if (a == 0.0) continue;
        double w = st.omega(n);
        coef[n - 1] = a * std::complex<double>(std::cos(w), std::sin(w));
        c_norm += log_i0(a);
    }
    std::vector<double> lq = synthesize_grid_1d(coef, M);
    for (double& v : lq) v -= c_norm;
    return lq;
}

inline ChaosRealization simulate_realization(const CoefficientSequence& spec, std::uint64_t N,
                                             std::size_t M, std::uint64_t seed) {
    ChaosRealization r;
    r.spec = spec;
    r.N = N;
    r.M = M;
    r.seed = seed;
    PhaseStream st{seed, spec.dimension};
    if (spec.dimension == 1) {
        r.d = 1;
        if (N == 0) {
            r.logq.assign(M, 0.0);
            return r;
        }
        r.logq = build_logq_partial(spec, 0, N, M, st);
        return r;
    }
    // d=2: lattice coefficients over C_N^+, shells 1..N
    r.d = 2;
    int n = static_cast<int>(N);
    if (M < 2 * N + 1) throw std::invalid_argument("simulate (d=2): M >= 2N+1 required");
    std::vector<lattice_coef> coef;
    coef.reserve(cube_plus_count(n));
    double c_norm = 0.0;
    for_each_cube_point(n, [&](int k1, int k2) {
        double a = spec.alpha_2d(k1, k2);
        double w = st.omega(k1, k2);
        coef.push_back({k1, k2, a * std::complex<double>(std::cos(w), std::sin(w))});
        c_norm += log_i0(a);
    });
    r.logq = synthesize_grid_2d(coef, M);
    for (double& v : r.logq) v -= c_norm;
    return r;
}

// CSV: t, logQ (d=1) or t1, t2, logQ (d=2)
inline void write_csv(const ChaosRealization& r, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    char buf[128];
    if (r.d == 1) {
        out << "t,logQ\n";
        for (std::size_t j = 0; j < r.M; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", grid_point(j, r.M), r.logq[j]);
            out << buf;
        }
    } else {
        out << "t1,t2,logQ\n";
        for (std::size_t j1 = 0; j1 < r.M; ++j1)
            for (std::size_t j2 = 0; j2 < r.M; ++j2) {
                std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", grid_point(j1, r.M),
                              grid_point(j2, r.M), r.logq[j1 * r.M + j2]);
                out << buf;
            }
    }
}

// ---------------------------------------------------------------------------
// exact second-moment oracle: E[Q_N(t) Q_N(t+Delta)] as an I_0-product
// ---------------------------------------------------------------------------

struct PairCorrelation {
    double exact = 1.0;   // prod_n I_0(2 a_n cos(n Delta / 2)) / I_0(a_n)^2
    double exp_hn = 1.0;  // exp(H_N(Delta)) comparison value
};

inline PairCorrelation pair_correlation_exact(const CoefficientSequence& spec, std::uint64_t N,
                                              double delta) {
    double lp = 0.0, h = 0.0;
    const std::complex<double> rot = std::polar(1.0, 0.5 * delta);
    std::complex<double> e = rot;  // e^{i n delta/2}
    for (std::uint64_t n = 1; n <= N; ++n) {
        double a = spec.alpha(n);
        if (a != 0.0) {
            double c = e.real();
            lp += log_i0(2.0 * a * c) - 2.0 * log_i0(a);
            h += 0.5 * a * a * (2.0 * c * c - 1.0);  // cos(n delta)
        }
        e *= rot;
    }
    return {std::exp(lp), std::exp(h)};
}

inline PairCorrelation pair_correlation_exact(const CoefficientSequence& spec, int N,
                                              vec2 delta) {
    double lp = 0.0, h = 0.0;
    for_each_cube_point(N, [&](int k1, int k2) {
        double a = spec.alpha_2d(k1, k2);
        double c = std::cos(0.5 * (k1 * delta[0] + k2 * delta[1]));
        lp += log_i0(2.0 * a * c) - 2.0 * log_i0(a);
        h += 0.5 * a * a * (2.0 * c * c - 1.0);
    });
    return {std::exp(lp), std::exp(h)};
}

// ---------------------------------------------------------------------------
// L^2 diagnostic: E (int Q_N dsigma)^2 exactly, for a grid probability measure
// ---------------------------------------------------------------------------

struct L2Report {
    std::vector<std::uint64_t> N_list;
    std::vector<double> values;   // E (int Q_N dsigma)^2
    double last_ratio = 1.0;
    bool l2_bounded = true;       // ratio of last two values < 1.05
};

inline L2Report l2_mass_diagnostic(const CoefficientSequence& spec, const GridMeasure& sigma,
                                   std::vector<std::uint64_t> N_list) {
    if (sigma.d != 1) throw std::domain_error("l2_mass_diagnostic: d=1 measures");
    if (std::abs(sigma.total_mass() - 1.0) > 1e-9)
        throw std::domain_error("l2_mass_diagnostic: sigma must be a probability measure");
    std::sort(N_list.begin(), N_list.end());
    if (N_list.empty() || N_list.front() < 1) throw std::domain_error("l2_mass_diagnostic: N >= 1");
    const std::size_t M = sigma.M;
    const std::uint64_t N_max = N_list.back();

    // circular autocorrelation R(dd) = sum_i w_i w_{i+dd}
    std::vector<double> R(M, 0.0);
    bool uniform = sigma.provenance == "lebesgue";
    if (uniform) {
        double v = sigma.w[0];
        R.assign(M, static_cast<double>(M) * v * v);
    } else {
        for (std::size_t dd = 0; dd < M; ++dd) {
            double s = 0.0;
            for (std::size_t i = 0; i < M; ++i) s += sigma.w[i] * sigma.w[(i + dd) % M];
            R[dd] = s;
        }
    }

    // per displacement, accumulate the log product incrementally in N
    std::vector<double> a_n(N_max + 1), li0_a(N_max + 1);
    for (std::uint64_t n = 1; n <= N_max; ++n) {
        a_n[n] = spec.alpha(n);
        li0_a[n] = log_i0(a_n[n]);
    }
    const std::size_t half = M / 2;
    std::vector<std::vector<double>> vals(half + 1, std::vector<double>(N_list.size()));
    parallel_for(half + 1, [&](std::size_t dd) {
        const double delta = two_pi * static_cast<double>(dd) / static_cast<double>(M);
        const std::complex<double> rot = std::polar(1.0, 0.5 * delta);
        std::complex<double> e = rot;
        double lp = 0.0;
        std::size_t next = 0;
        for (std::uint64_t n = 1; n <= N_max; ++n) {
            if (a_n[n] != 0.0) lp += log_i0(2.0 * a_n[n] * e.real()) - 2.0 * li0_a[n];
            e *= rot;
            while (next < N_list.size() && n == N_list[next]) {
                vals[dd][next] = std::exp(lp);
                ++next;
            }
        }
    });

    L2Report rep;
    rep.N_list = N_list;
    rep.values.resize(N_list.size());
    for (std::size_t j = 0; j < N_list.size(); ++j) {
        double s = 0.0;
        for (std::size_t dd = 0; dd < M; ++dd) {
            std::size_t k = dd <= half ? dd : M - dd;  // pair product is even in Delta
            s += R[dd] * vals[k][j];
        }
        rep.values[j] = s;
    }
    std::size_t m = rep.values.size();
    rep.last_ratio = m >= 2 ? rep.values[m - 1] / rep.values[m - 2] : 1.0;
    rep.l2_bounded = rep.last_ratio < 1.05;
    return rep;
}

// ---------------------------------------------------------------------------
// degeneracy probe: the Hoelder / Bernstein bound chain evaluated numerically
// ---------------------------------------------------------------------------

struct DegeneracyProbeReport {
    double D = 0.0;          // implied exponent (criterion fires when > 1)
    double eps = 0.0;
    double q = 0.0;
    double est2_exact = 0.0; // (E Q_n(s)^{hp})^{1/p}, exact I_0 product
    double est3_bound = 0.0; // n^{1/q} exp(h^2/4 q |I|^2 sum k^2 a_k^2)
    double est1_bound = 0.0; // product of the two
    bool criterion = false;
    bool small_n_flag = false;  // n^{1/q} not yet O(1): proof regime needs larger n
    double empirical_sup_h = 0.0;
    bool bound_respected = true;
    std::uint64_t n = 0;
};

inline DegeneracyProbeReport degeneracy_probe(double alpha, double h, double p,
                                              std::uint64_t n, double interval_len,
                                              std::uint64_t mc_replicas = 0,
                                              std::uint64_t seed = 1,
                                              double interval_center = 0.3) {
    if (!(h > 0 && h < 1)) throw std::domain_error("degeneracy_probe: h in (0,1)");
    if (!(p > 1)) throw std::domain_error("degeneracy_probe: p > 1");
    if (!(h * p < 1)) throw std::domain_error("degeneracy_probe: hp < 1 required");
    if (!(interval_len > 0) || n < 1) throw std::domain_error("degeneracy_probe: bad n or |I|");

    DegeneracyProbeReport rep;
    rep.n = n;
    const double q = p / (p - 1.0);
    rep.q = q;
    rep.eps = std::log(1.0 / interval_len) / std::log(static_cast<double>(n)) - 1.0;

    CoefficientSequence spec = CoefficientSequence::inverse_sqrt(alpha);
    double sum_a2 = 0.0, sum_k2a2 = 0.0, log_est2 = 0.0;
    for (std::uint64_t k = 1; k <= n; ++k) {
        double a = spec.alpha(k);
        sum_a2 += a * a;
        sum_k2a2 += static_cast<double>(k) * static_cast<double>(k) * a * a;
        log_est2 += log_i0(h * p * a) / p - h * log_i0(a);
    }
    rep.est2_exact = std::exp(log_est2);
    rep.est3_bound = std::pow(static_cast<double>(n), 1.0 / q) *
                     std::exp(0.25 * h * h * q * interval_len * interval_len * sum_k2a2);
    rep.est1_bound = rep.est2_exact * rep.est3_bound;
    rep.D = 0.25 * alpha * alpha * h * (1.0 - h * p) / ((1.0 - h) * (1.0 + rep.eps));
    rep.criterion = rep.D > 1.0;
    rep.small_n_flag = std::pow(static_cast<double>(n), 1.0 / q) > 3.0;

    if (mc_replicas > 0) {
        const int pts = 17;
        std::vector<double> sup_h(mc_replicas);
        parallel_for(mc_replicas, [&](std::size_t rrep) {
            PhaseStream st{mix64(seed, rrep), 1};
            double best = -1e300;
            for (int j = 0; j < pts; ++j) {
                double t = interval_center + interval_len * j / (pts - 1);
                double lq = 0.0;
                const std::complex<double> rot = std::polar(1.0, t);
                std::complex<double> e = rot;
                for (std::uint64_t k = 1; k <= n; ++k) {
                    double a = spec.alpha(k);
                    double w = st.omega(k);
                    lq += a * (e.real() * std::cos(w) - e.imag() * std::sin(w)) - log_i0(a);
                    e *= rot;
                }
                best = std::max(best, lq);
            }
            sup_h[rrep] = std::exp(h * best);
        });
        rep.empirical_sup_h = mean(sup_h);
        rep.bound_respected = rep.empirical_sup_h <= rep.est1_bound;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// total-mass decay across N (degeneracy made visible)
// ---------------------------------------------------------------------------

struct MassDecayReport {
    std::vector<std::uint64_t> N_list;
    std::vector<double> medians, q25, q75;
    std::vector<std::vector<double>> masses;  // per N, per replica
};

inline MassDecayReport total_mass_decay(double alpha, std::vector<std::uint64_t> N_list,
                                        std::uint64_t replicas, std::uint64_t seed) {
    if (replicas < 30) throw std::domain_error("total_mass_decay: replicas >= 30");
    std::sort(N_list.begin(), N_list.end());
    MassDecayReport rep;
    rep.N_list = N_list;
    CoefficientSequence spec = CoefficientSequence::inverse_sqrt(alpha);
    rep.masses.assign(N_list.size(), std::vector<double>(replicas));
    std::vector<std::vector<double>> per_rep(replicas, std::vector<double>(N_list.size()));
    parallel_for(replicas, [&](std::size_t r) {
        PhaseStream st{mix64(seed, r), 1};
        for (std::size_t j = 0; j < N_list.size(); ++j) {
            std::uint64_t N = N_list[j];
            std::size_t M = std::max<std::size_t>(1024, next_pow2(2 * N));
            if (N == 0) {
                per_rep[r][j] = 1.0;
                continue;
            }
            std::vector<double> lq = build_logq_partial(spec, 0, N, M, st);
            double s = 0.0;
            for (double v : lq) s += std::exp(v);
            per_rep[r][j] = s / static_cast<double>(M);
        }
    });
    for (std::size_t j = 0; j < N_list.size(); ++j) {
        for (std::uint64_t r = 0; r < replicas; ++r) rep.masses[j][r] = per_rep[r][j];
        rep.medians.push_back(median(rep.masses[j]));
        rep.q25.push_back(quantile(rep.masses[j], 0.25));
        rep.q75.push_back(quantile(rep.masses[j], 0.75));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Hellinger affinity prod_n E sqrt(P_n P'_n) and the Kakutani classification
// ---------------------------------------------------------------------------

struct HellingerReport {
    double affinity = 1.0;
    double diff_sq_sum = 0.0;      // sum (a_n - a'_n)^2 up to N
    double tail_increment = 0.0;   // increment over the last octave
    bool mutually_continuous = true;
};

inline HellingerReport hellinger_affinity(const CoefficientSequence& a,
                                          const CoefficientSequence& b, std::uint64_t N) {
    HellingerReport rep;
    double la = 0.0, s_half = 0.0;
    for (std::uint64_t n = 1; n <= N; ++n) {
        double an = a.alpha(n), bn = b.alpha(n);
        la += log_i0(0.5 * (an + bn)) - 0.5 * (log_i0(an) + log_i0(bn));
        double d2 = (an - bn) * (an - bn);
        rep.diff_sq_sum += d2;
        if (n <= N / 2) s_half += d2;
    }
    rep.affinity = std::exp(la);
    rep.tail_increment = rep.diff_sq_sum - s_half;
    // divergent series keep adding a fixed amount per octave
    rep.mutually_continuous = rep.tail_increment < 1e-3;
    return rep;
}

} // namespace chaoslab
