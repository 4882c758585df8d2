#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "chaoslab/common.hpp"

namespace chaoslab {

// Non-negative weights on a uniform torus grid, representing a discretized
// Borel measure. Weight w_j is the mass of cell j (cell centers at grid_point).
struct GridMeasure {
    int d = 1;
    std::size_t M = 0;           // d=1: M cells; d=2: M x M (row-major)
    std::vector<double> w;
    std::string provenance = "explicit";
    bool has_atoms = false;      // true atoms (point masses), not just discretization

    double total_mass() const { return std::accumulate(w.begin(), w.end(), 0.0); }

    GridMeasure normalized() const {
        GridMeasure g = *this;
        double tm = total_mass();
        if (!(tm > 0)) throw std::domain_error("GridMeasure: zero mass");
        for (double& x : g.w) x /= tm;
        return g;
    }

    double cell_width() const { return two_pi / static_cast<double>(M); }
};

inline GridMeasure lebesgue_measure(std::size_t M, double mass = two_pi) {
    GridMeasure g;
    g.d = 1;
    g.M = M;
    g.w.assign(M, mass / static_cast<double>(M));
    g.provenance = "lebesgue";
    return g;
}

inline GridMeasure lebesgue_measure_2d(std::size_t M, double mass = two_pi * two_pi) {
    GridMeasure g;
    g.d = 2;
    g.M = M;
    g.w.assign(M * M, mass / static_cast<double>(M * M));
    g.provenance = "lebesgue";
    return g;
}

inline GridMeasure point_mass(std::size_t M, std::size_t cell, double mass = 1.0) {
    GridMeasure g;
    g.d = 1;
    g.M = M;
    g.w.assign(M, 0.0);
    g.w.at(cell) = mass;
    g.provenance = "point-mass";
    g.has_atoms = true;
    return g;
}

// Middle-interval Cantor construction with removal ratio (keep two side thirds
// for ratio = 1/3) to the given depth, projected onto the grid with fractional
// overlap at interval edges. Mass 1, supported on 2^depth blocks.
inline GridMeasure cantor_measure(std::size_t M, int depth, double ratio = 1.0 / 3.0) {
    if (depth < 0 || depth > 40) throw std::domain_error("cantor_measure: bad depth");
    struct iv { double a, b; };
    std::vector<iv> cur{{0.0, 1.0}};
    for (int j = 0; j < depth; ++j) {
        std::vector<iv> nxt;
        nxt.reserve(cur.size() * 2);
        for (auto& s : cur) {
            double len = s.b - s.a;
            nxt.push_back({s.a, s.a + ratio * len});
            nxt.push_back({s.b - ratio * len, s.b});
        }
        cur.swap(nxt);
    }
    GridMeasure g;
    g.d = 1;
    g.M = M;
    g.w.assign(M, 0.0);
    const double per = 1.0 / static_cast<double>(cur.size());
    const double Md = static_cast<double>(M);
    for (auto& s : cur) {
        // map [0,1) onto the torus [-pi, pi): fractional cell coordinates
        double a = s.a * Md, b = s.b * Md;
        double dens = per / (b - a);
        std::size_t ia = static_cast<std::size_t>(std::floor(a));
        std::size_t ib = static_cast<std::size_t>(std::ceil(b));
        for (std::size_t c = ia; c < ib && c < M; ++c) {
            double lo = std::max(a, static_cast<double>(c));
            double hi = std::min(b, static_cast<double>(c + 1));
            if (hi > lo) g.w[c] += dens * (hi - lo);
        }
    }
    g.provenance = "cantor-like(depth=" + std::to_string(depth) + ")";
    return g;
}

// measure with density exp(logq) against `base` (cellwise product)
inline GridMeasure measure_from_log_density(const std::vector<double>& logq,
                                            const GridMeasure& base) {
    if (logq.size() != base.w.size())
        throw std::invalid_argument("measure_from_log_density: size mismatch");
    GridMeasure g = base;
    for (std::size_t j = 0; j < g.w.size(); ++j) g.w[j] *= std::exp(logq[j]);
    g.provenance = "realization*" + base.provenance;
    return g;
}

// CSV schema: cell index (one or two columns), weight
inline void write_csv(const GridMeasure& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    if (g.d == 1) {
        out << "cell,weight\n";
        for (std::size_t j = 0; j < g.w.size(); ++j) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%zu,%.17g\n", j, g.w[j]);
            out << buf;
        }
    } else {
        out << "cell1,cell2,weight\n";
        for (std::size_t j1 = 0; j1 < g.M; ++j1)
            for (std::size_t j2 = 0; j2 < g.M; ++j2) {
                char buf[96];
                std::snprintf(buf, sizeof buf, "%zu,%zu,%.17g\n", j1, j2, g.w[j1 * g.M + j2]);
                out << buf;
            }
    }
}

} // namespace chaoslab
