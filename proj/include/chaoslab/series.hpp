#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "chaoslab/chaos.hpp"
#include "chaoslab/coefficients.hpp"
#include "chaoslab/common.hpp"
#include "chaoslab/fft.hpp"
#include "chaoslab/parallel.hpp"
#include "chaoslab/potential.hpp"
#include "chaoslab/quadrature.hpp"
#include "chaoslab/rng.hpp"
#include "chaoslab/specfun.hpp"
#include "chaoslab/stats.hpp"

namespace chaoslab {

// ---------------------------------------------------------------------------
// startup self-test: exact finite-N formulas must agree across two independent
// algebraic routes to 1e-12 before any sampling runs
// ---------------------------------------------------------------------------

inline void series_self_check() {
    static bool done = false;
    if (done) return;
    auto expect = [](double a, double b, const char* what) {
        double scale = std::max({std::abs(a), std::abs(b), 1.0});
        if (std::abs(a - b) > 1e-12 * scale)
            throw std::logic_error(std::string("series self-check failed: ") + what);
    };
    // free-energy product: exp(sum of log I0 differences) vs direct I0 ratios
    {
        const double alpha = 1.25, beta = 0.6;
        double ls = 0.0, prod = 1.0;
        for (int k = 1; k <= 64; ++k) {
            double rk = 1.0 / std::sqrt(static_cast<double>(k));
            ls += log_i0((alpha + beta) * rk) - log_i0(alpha * rk);
            prod *= bessel_i0((alpha + beta) * rk) / bessel_i0(alpha * rk);
        }
        expect(std::exp(ls), prod, "free-energy product");
    }
    // Peyriere first moment: series ratio I0'/I0 vs quadrature of the defining integral
    {
        const double alpha = 0.8;
        double a = 0.0, b = 0.0;
        for (int n = 1; n <= 16; ++n) {
            double an = alpha / std::sqrt(static_cast<double>(n));
            a += i0_log_derivative(an) / std::sqrt(static_cast<double>(n));
            double num = integrate([&](double x) { return std::cos(x) * std::exp(an * std::cos(x)); },
                                   0.0, two_pi, 1e-14) / two_pi;
            b += num / bessel_i0(an) / std::sqrt(static_cast<double>(n));
        }
        expect(a, b, "Peyriere cosine moment");
    }
    // pair-correlation product: log route vs direct ratios
    {
        CoefficientSequence spec = CoefficientSequence::inverse_sqrt(0.9);
        auto pc = pair_correlation_exact(spec, 32, 0.7);
        double prod = 1.0;
        const std::complex<double> rot = std::polar(1.0, 0.35);
        std::complex<double> e = rot;
        for (int n = 1; n <= 32; ++n) {
            double an = spec.alpha(static_cast<std::uint64_t>(n));
            prod *= bessel_i0(2.0 * an * e.real()) / (bessel_i0(an) * bessel_i0(an));
            e *= rot;
        }
        expect(pc.exact, prod, "pair correlation product");
    }
    done = true;
}

// ---------------------------------------------------------------------------
// partial sums of the random series
// ---------------------------------------------------------------------------

// S_N(t) = sum rho_n cos(nt + omega_n) from precomputed e^{i omega_n}
inline double partial_sum_from_coefs(const CoefficientSequence& rho, double t, std::uint64_t N,
                                     const std::vector<std::complex<double>>& eiw) {
    const std::complex<double> rot = std::polar(1.0, t);
    std::complex<double> e = rot;
    double s = 0.0;
    for (std::uint64_t n = 1; n <= N; ++n) {
        s += rho.alpha(n) * (eiw[n - 1] * e).real();
        e *= rot;
    }
    return s;
}

inline double partial_sum(const CoefficientSequence& rho, double t, std::uint64_t N,
                          const PhaseStream& phases) {
    if (N < 1) throw std::domain_error("partial_sum: N >= 1");
    auto eiw = phase_coefs(phases, N);
    return partial_sum_from_coefs(rho, t, N, eiw);
}

// ---------------------------------------------------------------------------
// Peyriere sampling: fresh phase stream, then t drawn from the normalized
// grid weights Q_N(t) (grid-categorical, rejection-free)
// ---------------------------------------------------------------------------

struct PeyriereSample {
    double t = 0.0;
    std::size_t cell = 0;
    std::uint64_t stream_seed = 0;
    int retries = 0;
};

namespace detail {

// one draw; eiw receives e^{i omega_n} (n = 1..N) for reuse by the caller
inline PeyriereSample peyriere_draw(double alpha, std::uint64_t N, std::size_t M,
                                    const PhaseStream& st,
                                    std::vector<std::complex<double>>& eiw) {
    eiw = phase_coefs(st, N);
    PeyriereSample smp;
    smp.stream_seed = st.seed;
    if (alpha == 0.0) {
        double u = st.uniform01(0xCE11);
        smp.cell = std::min<std::size_t>(static_cast<std::size_t>(u * static_cast<double>(M)), M - 1);
        smp.t = grid_point(smp.cell, M);
        return smp;
    }
    if (M < 2 * N) throw std::invalid_argument("peyriere_draw: M >= 2N required");
    std::vector<std::complex<double>> coef(N);
    double sign = -1.0;
    for (std::uint64_t n = 1; n <= N; ++n) {
        coef[n - 1] = (alpha / std::sqrt(static_cast<double>(n))) * eiw[n - 1] * sign;
        sign = -sign;
    }
    std::vector<double> lq = synthesize_grid_1d(coef, M);
    double mx = *std::max_element(lq.begin(), lq.end());
    double total = 0.0;
    for (double& v : lq) {
        v = std::exp(v - mx);
        total += v;
    }
    if (!(total > 0.0) || !std::isfinite(total)) {
        // numerically dead realization (possible deep in the degenerate regime)
        smp.retries = 1;
        PhaseStream st2{mix64(st.seed, 0xDEAD), st.dimension};
        PeyriereSample again = peyriere_draw(alpha, N, M, st2, eiw);
        again.retries += smp.retries;
        return again;
    }
    double u = st.uniform01(0xCE11) * total;
    double acc = 0.0;
    std::size_t cell = M - 1;
    for (std::size_t j = 0; j < M; ++j) {
        acc += lq[j];
        if (acc >= u) {
            cell = j;
            break;
        }
    }
    smp.cell = cell;
    smp.t = grid_point(cell, M);
    return smp;
}

} // namespace detail

inline std::vector<PeyriereSample> peyriere_sample(double alpha, std::uint64_t N, std::size_t M,
                                                   std::size_t count, std::uint64_t seed) {
    if (std::abs(alpha) >= 2.0) throw std::domain_error("peyriere_sample: |alpha| < 2 required");
    series_self_check();
    std::vector<PeyriereSample> out(count);
    parallel_for(count, [&](std::size_t i) {
        PhaseStream st{mix64(seed, i), 1};
        std::vector<std::complex<double>> eiw;
        out[i] = detail::peyriere_draw(alpha, N, M, st, eiw);
    });
    return out;
}

// ---------------------------------------------------------------------------
// LLN statistic: (1/log N) S_N under the Peyriere measure, with its exact oracle
// ---------------------------------------------------------------------------

struct LlnReport {
    double mean_w = 0.0, se_w = 0.0;
    double oracle_w = 0.0;        // E_Q (1/log N) S_N = sum rho_n I0'/I0(alpha_n) / log N
    double mean_logw = 0.0, se_logw = 0.0;
    double target_logw = 0.0;     // alpha^2 / 4
    double alpha = 0.0;
    std::uint64_t N = 0, samples = 0, seed = 0;
};

inline LlnReport lln_statistic(double alpha, std::uint64_t N, std::size_t samples,
                               std::uint64_t seed) {
    if (N < 2) throw std::domain_error("lln_statistic: N >= 2");
    series_self_check();
    LlnReport rep;
    rep.alpha = alpha;
    rep.N = N;
    rep.samples = samples;
    rep.seed = seed;
    const double logN = std::log(static_cast<double>(N));
    CoefficientSequence rho = CoefficientSequence::inverse_sqrt(1.0);

    double c_norm = 0.0, oracle = 0.0;
    for (std::uint64_t n = 1; n <= N; ++n) {
        double rn = 1.0 / std::sqrt(static_cast<double>(n));
        c_norm += log_i0(alpha * rn);
        oracle += rn * i0_log_derivative(alpha * rn);
    }
    rep.oracle_w = oracle / logN;
    rep.target_logw = 0.25 * alpha * alpha;

    const std::size_t M = std::max<std::size_t>(1024, next_pow2(2 * N));
    std::vector<double> ws(samples), lws(samples);
    parallel_for(samples, [&](std::size_t i) {
        PhaseStream st{mix64(seed, i), 1};
        std::vector<std::complex<double>> eiw;
        PeyriereSample smp = detail::peyriere_draw(alpha, N, M, st, eiw);
        double S = partial_sum_from_coefs(rho, smp.t, N, eiw);
        ws[i] = S / logN;
        lws[i] = (alpha * S - c_norm) / logN;
    });
    rep.mean_w = mean(ws);
    rep.se_w = std_error(ws);
    rep.mean_logw = mean(lws);
    rep.se_logw = std_error(lws);
    return rep;
}

// ---------------------------------------------------------------------------
// LIL scaling for rho_n = n^{-r}: running max of S_N / sqrt(N^{1-2r} loglog N)
// ---------------------------------------------------------------------------

struct LilReport {
    double r = 0.0, alpha = 0.0;
    std::uint64_t N_max = 0;
    std::vector<double> run_max;            // per sample
    double frac_in_band = 0.0;              // fraction in [0.4, 1.1]
    double predicted_limit = 0.0;           // sqrt(1 - 2r), the quoted prediction
    double wittmann_limit = 0.0;            // 1/sqrt(1-2r): what the Wittmann normalizer gives
    bool wittmann_convergent = false;       // numeric check of the p=3 condition
    double wittmann_sum = 0.0, wittmann_tail = 0.0;
    std::vector<std::uint64_t> checkpoints;
    std::vector<double> centering_ratio;    // (alpha/(1-2r)) N^{1/2-r} / denom at checkpoints
    bool centering_decreasing = false;
    std::vector<double> trace_median;       // median statistic at checkpoints (r = 1/2 trace)
    bool untestable = false;                // r = 1/2: triple-log regime, trace only
};

inline LilReport lil_scaling(double r, double alpha, std::uint64_t N_max, std::size_t samples,
                             std::uint64_t seed, std::uint64_t N_min = 16) {
    if (!(r > 0.0 && r <= 0.5)) throw std::domain_error("lil_scaling: r in (0, 1/2]");
    series_self_check();
    LilReport rep;
    rep.r = r;
    rep.alpha = alpha;
    rep.N_max = N_max;
    const bool half_case = r == 0.5;
    rep.untestable = half_case;
    rep.predicted_limit = half_case ? 1.0 : std::sqrt(1.0 - 2.0 * r);
    rep.wittmann_limit = half_case ? 1.0 : 1.0 / std::sqrt(1.0 - 2.0 * r);

    for (std::uint64_t c = 100; c < N_max; c *= 2) rep.checkpoints.push_back(c);
    rep.checkpoints.push_back(N_max);

    auto denom = [&](std::uint64_t n) {
        double nn = static_cast<double>(n);
        if (half_case) return std::sqrt(std::log(nn) * std::log(std::log(std::log(nn))));
        return std::sqrt(std::pow(nn, 1.0 - 2.0 * r) * std::log(std::log(nn)));
    };
    for (std::uint64_t c : rep.checkpoints)
        rep.centering_ratio.push_back(half_case
            ? 0.0
            : (alpha / (1.0 - 2.0 * r)) * std::pow(static_cast<double>(c), 0.5 - r) / denom(c));
    rep.centering_decreasing = true;
    for (std::size_t i = 1; i < rep.centering_ratio.size(); ++i)
        if (rep.centering_ratio[i] > rep.centering_ratio[i - 1]) rep.centering_decreasing = false;

    // Wittmann condition, p = 3: sum rho_n^p / (sqrt(sum rho^2 loglog sum rho^2))^p
    {
        double s2 = 0.0, sum = 0.0, last = 0.0, prev_oct = 0.0;
        for (std::uint64_t n = 1; n <= N_max; ++n) {
            double rho_n = std::pow(static_cast<double>(n), -r);
            s2 += rho_n * rho_n;
            if (s2 <= std::exp(1.0)) continue;  // loglog must be positive
            double dn = std::sqrt(s2 * std::log(std::log(s2)));
            last = (rho_n * rho_n * rho_n) / (dn * dn * dn);
            sum += last;
            if (n == N_max / 2) prev_oct = sum;
        }
        rep.wittmann_sum = sum;
        rep.wittmann_tail = last * static_cast<double>(N_max) * 2.0;  // ~integral of n^{-3/2}
        // convergent when the per-octave increment is shrinking and the tail is small
        rep.wittmann_convergent = (sum - prev_oct) < 0.5 * prev_oct && rep.wittmann_tail < sum;
    }

    const std::size_t M = alpha == 0.0 ? 1024 : next_pow2(2 * N_max);
    CoefficientSequence rho = CoefficientSequence::power(r);
    rep.run_max.assign(samples, 0.0);
    std::vector<std::vector<double>> traces(samples);
    parallel_for(samples, [&](std::size_t i) {
        PhaseStream st{mix64(seed, i), 1};
        std::vector<std::complex<double>> eiw;
        PeyriereSample smp = detail::peyriere_draw(alpha, N_max, M, st, eiw);
        const std::complex<double> rot = std::polar(1.0, smp.t);
        std::complex<double> e = rot;
        double S = 0.0, rmax = -1e300;
        std::size_t ck = 0;
        traces[i].resize(rep.checkpoints.size());
        for (std::uint64_t n = 1; n <= N_max; ++n) {
            S += rho.alpha(n) * (eiw[n - 1] * e).real();
            e *= rot;
            if (n >= N_min) rmax = std::max(rmax, S / denom(n));
            if (ck < rep.checkpoints.size() && n == rep.checkpoints[ck]) {
                traces[i][ck] = S / denom(n);
                ++ck;
            }
        }
        rep.run_max[i] = rmax;
    });
    std::size_t in_band = 0;
    for (double v : rep.run_max)
        if (v >= 0.4 && v <= 1.1) ++in_band;
    rep.frac_in_band = samples ? static_cast<double>(in_band) / static_cast<double>(samples) : 0.0;
    for (std::size_t c = 0; c < rep.checkpoints.size(); ++c) {
        std::vector<double> col(samples);
        for (std::size_t i = 0; i < samples; ++i) col[i] = traces[i][c];
        rep.trace_median.push_back(median(col));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// free energy and Legendre transform
// ---------------------------------------------------------------------------

struct FreeEnergy {
    double exact = 0.0;        // (1/log N) sum_k [log I0((a+b)/sqrt k) - log I0(a/sqrt k)]
    double closed_form = 0.0;  // (b^2 + 2ab)/4
};

inline FreeEnergy free_energy(double alpha, double beta, std::uint64_t N) {
    if (N < 2) throw std::domain_error("free_energy: N >= 2");
    series_self_check();
    FreeEnergy fe;
    double s = 0.0;
    for (std::uint64_t k = 1; k <= N; ++k) {
        double rk = 1.0 / std::sqrt(static_cast<double>(k));
        s += log_i0((alpha + beta) * rk) - log_i0(alpha * rk);
    }
    fe.exact = s / std::log(static_cast<double>(N));
    fe.closed_form = 0.25 * (beta * beta + 2.0 * alpha * beta);
    return fe;
}

struct Legendre {
    double closed_form = 0.0;  // (gamma - alpha/2)^2
    double grid_max = 0.0;     // sup_beta (gamma beta - c(beta)) found numerically
};

inline Legendre legendre(double alpha, double gamma) {
    Legendre lg;
    lg.closed_form = (gamma - 0.5 * alpha) * (gamma - 0.5 * alpha);
    auto g = [&](double b) { return gamma * b - 0.25 * (b * b + 2.0 * alpha * b); };
    double lo = 2.0 * gamma - alpha - 8.0, hi = 2.0 * gamma - alpha + 8.0;
    for (int it = 0; it < 200; ++it) {
        double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (g(m1) < g(m2)) lo = m1; else hi = m2;
    }
    lg.grid_max = g(0.5 * (lo + hi));
    return lg;
}

// ---------------------------------------------------------------------------
// large-deviation rate: slope of log p_N against log N
// ---------------------------------------------------------------------------

struct LdRateReport {
    double alpha = 0.0, eta = 0.0;
    std::vector<std::uint64_t> N_list;
    std::vector<double> p_hat;
    std::vector<std::uint64_t> hits;
    double slope = 0.0, slope_se = 0.0;
    double target = 0.0;            // -eta^2
    bool widen_budget = false;      // zero hits somewhere
    bool low_hits = false;          // fewer than 10 hits somewhere
    std::uint64_t samples = 0, seed = 0;
};

inline LdRateReport ld_rate_estimate(double alpha, double eta,
                                     std::vector<std::uint64_t> N_list, std::size_t samples,
                                     std::uint64_t seed) {
    if (!(eta > 0.0)) throw std::domain_error("ld_rate_estimate: eta > 0");
    if (N_list.size() < 2) throw std::domain_error("ld_rate_estimate: need >= 2 values of N");
    series_self_check();
    std::sort(N_list.begin(), N_list.end());
    LdRateReport rep;
    rep.alpha = alpha;
    rep.eta = eta;
    rep.N_list = N_list;
    rep.target = -eta * eta;
    rep.samples = samples;
    rep.seed = seed;
    CoefficientSequence rho = CoefficientSequence::inverse_sqrt(1.0);

    for (std::size_t jn = 0; jn < N_list.size(); ++jn) {
        const std::uint64_t N = N_list[jn];
        const double logN = std::log(static_cast<double>(N));
        const std::size_t M = alpha == 0.0 ? 1024 : std::max<std::size_t>(1024, next_pow2(2 * N));
        std::vector<std::uint8_t> hit(samples, 0);
        parallel_for(samples, [&](std::size_t i) {
            PhaseStream st{mix64(seed ^ (0x1D00 + jn), i), 1};
            std::vector<std::complex<double>> eiw;
            PeyriereSample smp = detail::peyriere_draw(alpha, N, M, st, eiw);
            double W = partial_sum_from_coefs(rho, smp.t, N, eiw) / logN;
            // boundary ties resolve toward the deviation event
            hit[i] = std::abs(W - 0.5 * alpha) >= eta ? 1 : 0;
        });
        std::uint64_t h = 0;
        for (auto v : hit) h += v;
        rep.hits.push_back(h);
        rep.p_hat.push_back(static_cast<double>(h) / static_cast<double>(samples));
        if (h == 0) rep.widen_budget = true;
        if (h < 10) rep.low_hits = true;
    }
    if (!rep.widen_budget) {
        std::vector<double> x, y, w;
        for (std::size_t j = 0; j < N_list.size(); ++j) {
            double p = rep.p_hat[j];
            x.push_back(std::log(static_cast<double>(N_list[j])));
            y.push_back(std::log(p));
            double var_logp = (1.0 - p) / (p * static_cast<double>(samples));
            w.push_back(1.0 / std::max(var_logp, 1e-12));
        }
        LinFit f = linear_fit(x, y, &w);
        rep.slope = f.slope;
        rep.slope_se = f.slope_se;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// multifractal scan: divergence level alpha/2 and dimension 1 - alpha^2/4
// ---------------------------------------------------------------------------

struct SpectrumRow {
    double alpha = 0.0;
    double level = 0.0, level_se = 0.0;
    double level_predicted = 0.0;
    double dim = 0.0;
    double dim_predicted = 0.0;
};

inline std::vector<SpectrumRow> multifractal_scan(const std::vector<double>& alphas,
                                                  std::uint64_t N, std::size_t M,
                                                  std::size_t samples, std::uint64_t replicas,
                                                  std::uint64_t seed) {
    series_self_check();
    std::vector<SpectrumRow> rows;
    const double logN = std::log(static_cast<double>(N));
    CoefficientSequence rho = CoefficientSequence::inverse_sqrt(1.0);
    for (double a : alphas) {
        if (std::abs(a) >= 2.0) throw std::domain_error("multifractal_scan: alpha in (-2,2)");
        SpectrumRow row;
        row.alpha = a;
        row.level_predicted = 0.5 * a;
        row.dim_predicted = 1.0 - 0.25 * a * a;
        std::vector<double> ws(samples);
        parallel_for(samples, [&](std::size_t i) {
            PhaseStream st{mix64(seed ^ 0x5CA0, i), 1};
            std::vector<std::complex<double>> eiw;
            PeyriereSample smp = detail::peyriere_draw(a, N, M, st, eiw);
            ws[i] = partial_sum_from_coefs(rho, smp.t, N, eiw) / logN;
        });
        row.level = mean(ws);
        row.level_se = std_error(ws);
        row.dim = dimension_formula_check(a, N, M, replicas, seed ^ 0xD1A0).estimate;
        rows.push_back(row);
    }
    return rows;
}

} // namespace chaoslab
