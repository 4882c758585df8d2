#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chaoslab/coefficients.hpp"
#include "chaoslab/common.hpp"
#include "chaoslab/specfun.hpp"

namespace chaoslab {

// ---------------------------------------------------------------------------
// correlation function H and partial sums H_N
// ---------------------------------------------------------------------------

// H_N(t) = (1/2) sum_{n<=N} alpha_n^2 cos(nt), d=1
inline double correlation_partial(const CoefficientSequence& spec, std::uint64_t N, double t) {
    if (N < 1) throw std::domain_error("correlation_partial: N >= 1");
    const std::complex<double> rot = std::polar(1.0, t);
    std::complex<double> e = rot;
    double s = 0.0;
    for (std::uint64_t n = 1; n <= N; ++n) {
        s += spec.alpha_sq(n) * e.real();
        e *= rot;
    }
    return 0.5 * s;
}

// d=2: sum over the cube C_N^+
inline double correlation_partial(const CoefficientSequence& spec, int N, vec2 t) {
    if (N < 1) throw std::domain_error("correlation_partial: N >= 1");
    double s = 0.0;
    for_each_cube_point(N, [&](int k1, int k2) {
        double a = spec.alpha_2d(k1, k2);
        s += a * a * std::cos(k1 * t[0] + k2 * t[1]);
    });
    return 0.5 * s;
}

// Cesaro-damped tail: mean of H_j over the last `window` partial sums.
// Standard stabilizer for convex-coefficient cosine series.
inline double correlation_partial_cesaro(const CoefficientSequence& spec, std::uint64_t N,
                                         double t, std::uint64_t window) {
    if (N < 1) throw std::domain_error("correlation_partial: N >= 1");
    window = std::min(std::max<std::uint64_t>(window, 1), N);
    const std::complex<double> rot = std::polar(1.0, t);
    std::complex<double> e = rot;
    const std::uint64_t head = N - window;
    double s = 0.0;
    for (std::uint64_t n = 1; n <= N; ++n) {
        double term = spec.alpha_sq(n) * e.real();
        double wgt = n <= head ? 1.0
                               : static_cast<double>(N - n + 1) / static_cast<double>(window);
        s += wgt * term;
        e *= rot;
    }
    return 0.5 * s;
}

// closed forms: d=1 exact, d=2 through the Jacobi function (H_alpha = alpha^2/4 G)
inline double correlation_closed_form(double alpha, double t, int d = 1) {
    if (d != 1) throw std::domain_error("correlation_closed_form: scalar t is d=1");
    if (alpha == 0.0) return 0.0;
    double s = 2.0 * std::abs(std::sin(0.5 * wrap_angle(t)));
    if (s == 0.0) throw std::domain_error("correlation_closed_form: singular at t = 0");
    return -0.5 * alpha * alpha * std::log(s);
}

inline double correlation_closed_form(double alpha, vec2 t) {
    if (alpha == 0.0) return 0.0;
    return 0.25 * alpha * alpha * jacobi_G(t);
}

// ---------------------------------------------------------------------------
// upper-bound conditions for the partial sums (convexity, decay, O(.) fits)
// ---------------------------------------------------------------------------

struct BoundCheckReport {
    bool convex = false;
    bool decaying = false;
    double c_decay = 0.0;   // sup_n n * alpha_n^2
    double c_diff = 0.0;    // sup_n n^2 (alpha_n^2 - alpha_{n+1}^2)
    double sup_gap = 0.0;   // empirical sup over t, N of H_N(t) - H_ref(t)
    bool pass() const { return convex && decaying; }
};

inline BoundCheckReport check_upper_bound_conditions(const CoefficientSequence& spec,
                                                     std::uint64_t N_max,
                                                     std::size_t grid = 2048) {
    if (N_max < 3) throw std::domain_error("check_upper_bound_conditions: N_max >= 3");
    BoundCheckReport rep;
    rep.convex = true;
    rep.decaying = true;
    double prev = spec.alpha_sq(1);
    for (std::uint64_t n = 1; n <= N_max; ++n) {
        double a0 = spec.alpha_sq(n), a1 = spec.alpha_sq(n + 1), a2 = spec.alpha_sq(n + 2);
        if (a2 - 2.0 * a1 + a0 < -1e-15 * std::max(1.0, a0)) rep.convex = false;
        if (a1 > a0 + 1e-15 * std::max(1.0, a0)) rep.decaying = false;
        rep.c_decay = std::max(rep.c_decay, static_cast<double>(n) * a0);
        rep.c_diff = std::max(rep.c_diff, static_cast<double>(n) * static_cast<double>(n) * (a0 - a1));
        prev = a0;
    }
    (void)prev;
    // vanishing tail: max over the upper half must shrink relative to the head
    double head = 0.0, tail = 0.0;
    for (std::uint64_t n = 1; n <= N_max; ++n) {
        double a = spec.alpha_sq(n);
        if (n <= N_max / 4) head = std::max(head, a);
        if (n >= N_max / 2) tail = std::max(tail, a);
    }
    if (head > 0 && tail > 0.9 * head) rep.decaying = false;

    const std::uint64_t N_ref = 4 * N_max;
    double sup_gap = -1e300;
    for (std::size_t g = 0; g < grid; ++g) {
        double t = grid_point(g, grid);
        const std::complex<double> rot = std::polar(1.0, t);
        std::complex<double> e = rot;
        double h = 0.0, hmax = -1e300;
        for (std::uint64_t n = 1; n <= N_ref; ++n) {
            h += 0.5 * spec.alpha_sq(n) * e.real();
            if (n <= N_max) hmax = std::max(hmax, h);
            e *= rot;
        }
        sup_gap = std::max(sup_gap, hmax - h);
    }
    rep.sup_gap = sup_gap;
    return rep;
}

// ---------------------------------------------------------------------------
// the h_{alpha,tau,beta} family and its small-t asymptotics
// ---------------------------------------------------------------------------

struct HFamilyResult {
    double value = 0.0;
    double predicted = 0.0;
};

// h(t) = sum_n alpha cos(nt) / (n^tau log^beta n); the sum starts at n=3 when a
// genuine log factor is present and at n=1 for beta = 0 (log^0 = 1 everywhere).
inline HFamilyResult h_family_asymptotic(double tau, double beta, double alpha, double t) {
    if (!(tau > 0.0 && tau <= 1.0)) throw std::domain_error("h_family: tau in (0,1]");
    if (!(t > 0.0 && t < 0.1)) throw std::domain_error("h_family: t in (0, 0.1)");
    const std::uint64_t N = static_cast<std::uint64_t>(std::ceil(50.0 / t));
    const std::uint64_t L = static_cast<std::uint64_t>(std::ceil(1.0 / t));
    const std::uint64_t n0 = beta == 0.0 ? 1 : 3;
    const std::uint64_t head = N > L ? N - L : n0;

    const std::complex<double> rot = std::polar(1.0, t);
    std::complex<double> e = std::polar(1.0, t * static_cast<double>(n0));
    double s = 0.0;
    for (std::uint64_t n = n0; n <= N; ++n) {
        double coef = alpha * std::pow(static_cast<double>(n), -tau);
        if (beta != 0.0) coef *= std::pow(std::log(static_cast<double>(n)), -beta);
        double wgt = n <= head ? 1.0
                               : static_cast<double>(N - n + 1) / static_cast<double>(L);
        s += wgt * coef * e.real();
        e *= rot;
    }

    HFamilyResult res;
    res.value = s;
    const double li = std::log(1.0 / t);
    if (tau < 1.0) {
        double c = alpha * std::tgamma(1.0 - tau) * std::sin(0.5 * pi * tau);
        res.predicted = c / (std::pow(t, 1.0 - tau) * std::pow(li, beta));
    } else if (beta == 0.0) {
        res.predicted = alpha * li;
    } else if (beta == 1.0) {
        res.predicted = alpha * std::log(li);
    } else if (beta > 0.0 && beta < 1.0) {
        res.predicted = alpha / (1.0 - beta) * std::pow(li, 1.0 - beta);
    } else {
        res.predicted = std::numeric_limits<double>::quiet_NaN();  // bounded cases
    }
    return res;
}

// ---------------------------------------------------------------------------
// frequency split: H = H^{(1)} (odd) + H^{(2)} (even); both halves behave like
// H_{alpha/sqrt(2)} at 0
// ---------------------------------------------------------------------------

inline std::pair<CoefficientSequence, CoefficientSequence> kernel_split_even_odd(double alpha) {
    CoefficientSequence odd = CoefficientSequence::inverse_sqrt(alpha);
    odd.parity = parity_filter::odd_only;
    CoefficientSequence even = CoefficientSequence::inverse_sqrt(alpha);
    even.parity = parity_filter::even_only;
    return {odd, even};
}

// ---------------------------------------------------------------------------
// kernels as callables (potential theory plumbing)
// ---------------------------------------------------------------------------

struct TorusKernel {
    int d = 1;
    std::function<double(double)> f1;
    std::function<double(vec2)> f2;
    bool singular = false;     // unbounded at 0
    double sing_order = 0.0;   // K ~ |x|^{-sing_order} near 0
    std::string name = "kernel";

    double operator()(double t) const {
        if (d != 1 || !f1) throw std::logic_error("TorusKernel: no d=1 evaluator");
        return f1(t);
    }
    double operator()(vec2 x) const {
        if (d != 2 || !f2) throw std::logic_error("TorusKernel: no d=2 evaluator");
        return f2(x);
    }
};

// Riesz kernel of order beta: d=1 closed form |2 sin(x/2)|^{-beta}; d=2 built
// from the Jacobi function so that R(x) |x|^beta stays bounded both ways.
inline TorusKernel riesz_kernel(int d, double beta) {
    if (d != 1 && d != 2) throw std::domain_error("riesz_kernel: d in {1,2}");
    if (!(beta > 0.0)) throw std::domain_error("riesz_kernel: beta > 0 required");
    TorusKernel k;
    k.d = d;
    k.singular = true;
    k.sing_order = beta;
    k.name = "riesz(beta=" + std::to_string(beta) + ",d=" + std::to_string(d) + ")";
    if (d == 1) {
        k.f1 = [beta](double x) {
            double s = 2.0 * std::abs(std::sin(0.5 * wrap_angle(x)));
            if (s == 0.0) throw std::domain_error("riesz_kernel: singular at x = 0");
            return std::pow(s, -beta);
        };
    } else {
        const double s2 = surface_constants(2).s;
        k.f2 = [beta, s2](vec2 x) {
            return std::exp(beta * jacobi_G(x) / s2);
        };
    }
    return k;
}

inline TorusKernel constant_kernel(double c, int d = 1) {
    TorusKernel k;
    k.d = d;
    k.name = "constant";
    k.f1 = [c](double) { return c; };
    k.f2 = [c](vec2) { return c; };
    return k;
}

inline TorusKernel cosine_kernel() {
    TorusKernel k;
    k.name = "cos";
    k.f1 = [](double t) { return std::cos(t); };
    return k;
}

// Phi_N = exp(H_N) for a coefficient sequence (d=1)
inline TorusKernel exp_correlation_kernel(const CoefficientSequence& spec, std::uint64_t N) {
    TorusKernel k;
    k.name = "exp_correlation(N=" + std::to_string(N) + ")";
    k.f1 = [spec, N](double t) { return std::exp(correlation_partial(spec, N, t)); };
    // the limiting kernel is ~ |t|^{-alpha^2/2} for the inverse-sqrt family
    if (spec.family == coeff_family::inverse_sqrt && spec.parity == parity_filter::all) {
        k.singular = true;
        k.sing_order = 0.5 * spec.scale * spec.scale;
    }
    return k;
}

} // namespace chaoslab
