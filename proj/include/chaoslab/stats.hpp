#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace chaoslab {

inline double mean(const std::vector<double>& v) {
    if (v.empty()) throw std::invalid_argument("mean: empty");
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

inline double sample_variance(const std::vector<double>& v) {
    if (v.size() < 2) throw std::invalid_argument("sample_variance: need >= 2");
    double m = mean(v), s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

inline double std_error(const std::vector<double>& v) {
    return std::sqrt(sample_variance(v) / static_cast<double>(v.size()));
}

inline double quantile(std::vector<double> v, double q) {
    if (v.empty()) throw std::invalid_argument("quantile: empty");
    q = std::clamp(q, 0.0, 1.0);
    std::sort(v.begin(), v.end());
    double pos = q * static_cast<double>(v.size() - 1);
    std::size_t lo = static_cast<std::size_t>(pos);
    std::size_t hi = std::min(lo + 1, v.size() - 1);
    double f = pos - static_cast<double>(lo);
    return v[lo] * (1.0 - f) + v[hi] * f;
}

inline double median(std::vector<double> v) { return quantile(std::move(v), 0.5); }

// q-quantile of `values` under the (non-negative) weights
inline double weighted_quantile(const std::vector<double>& values,
                                const std::vector<double>& weights, double q) {
    if (values.size() != weights.size() || values.empty())
        throw std::invalid_argument("weighted_quantile: bad input");
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (!(total > 0)) throw std::invalid_argument("weighted_quantile: zero mass");
    double target = q * total, acc = 0.0;
    for (std::size_t i : idx) {
        acc += weights[i];
        if (acc >= target) return values[i];
    }
    return values[idx.back()];
}

struct LinFit {
    double slope = 0.0, intercept = 0.0, slope_se = 0.0;
};

inline LinFit linear_fit(const std::vector<double>& x, const std::vector<double>& y,
                         const std::vector<double>* w = nullptr) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw std::invalid_argument("linear_fit: bad input");
    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double wi = w ? (*w)[i] : 1.0;
        sw += wi;
        sx += wi * x[i];
        sy += wi * y[i];
        sxx += wi * x[i] * x[i];
        sxy += wi * x[i] * y[i];
    }
    double det = sw * sxx - sx * sx;
    LinFit f;
    f.slope = (sw * sxy - sx * sy) / det;
    f.intercept = (sxx * sy - sx * sxy) / det;
    if (n > 2) {
        double rss = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double wi = w ? (*w)[i] : 1.0;
            double e = y[i] - f.slope * x[i] - f.intercept;
            rss += wi * e * e;
        }
        f.slope_se = std::sqrt(rss / static_cast<double>(n - 2) * sw / det);
    }
    return f;
}

// Kolmogorov-Smirnov distance of a sample against Uniform[0,1)
inline double ks_uniform_statistic(std::vector<double> u) {
    if (u.empty()) throw std::invalid_argument("ks: empty");
    std::sort(u.begin(), u.end());
    const double n = static_cast<double>(u.size());
    double d = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        double f_hi = static_cast<double>(i + 1) / n;
        double f_lo = static_cast<double>(i) / n;
        d = std::max(d, std::max(std::abs(f_hi - u[i]), std::abs(u[i] - f_lo)));
    }
    return d;
}

// asymptotic critical value; alpha = 0.01 -> c = 1.628
inline bool ks_uniform_pass(const std::vector<double>& u, double level = 0.01) {
    double c = level <= 0.01 ? 1.628 : 1.358;  // 1% / 5%
    return ks_uniform_statistic(u) < c / std::sqrt(static_cast<double>(u.size()));
}

} // namespace chaoslab
