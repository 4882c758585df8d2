#pragma once

#include <cmath>
#include <cstddef>

namespace chaoslab {

namespace detail {

// Gauss-Kronrod 7-15 pair on [-1,1]
inline constexpr double gk_nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double gk_wk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double gk_wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
inline void gk15(const F& f, double a, double b, double& kron, double& err) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double rk = 0.0, rg = 0.0;
    for (int i = 0; i < 8; ++i) {
        double fv;
        if (i == 7) {
            fv = f(c);
        } else {
            fv = f(c - h * gk_nodes[i]) + f(c + h * gk_nodes[i]);
        }
        rk += gk_wk[i] * fv;
        if (i % 2 == 1) rg += gk_wg[i / 2] * fv;   // Gauss-7 lives on the odd Kronrod nodes
    }
    kron = rk * h;
    err = std::abs((rk - rg) * h);
}

} // namespace detail

// Adaptive Gauss-Kronrod integration with absolute per-panel tolerance.
// Handles integrable endpoint behavior by recursive bisection.
template <class F>
double integrate(const F& f, double a, double b, double abs_tol = 1e-10, int max_depth = 55) {
    struct rec {
        static double go(const F& f, double a, double b, double tol, int depth) {
            double k, e;
            detail::gk15(f, a, b, k, e);
            if (e <= tol || depth <= 0) return k;
            double m = 0.5 * (a + b);
            return go(f, a, m, 0.5 * tol, depth - 1) + go(f, m, b, 0.5 * tol, depth - 1);
        }
    };
    return rec::go(f, a, b, abs_tol, max_depth);
}

} // namespace chaoslab
