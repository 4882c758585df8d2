#pragma once

#include <cstdint>
#include <stdexcept>

#include "chaoslab/common.hpp"

namespace chaoslab {

// SplitMix64 finalizer; the workhorse behind all derived randomness.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Stable 64-bit mixing of (master seed, subkey). Replica r of an experiment
// with master seed s always draws from stream mix64(s, r), independent of
// scheduling; documented so runs can be reproduced piecemeal.
inline std::uint64_t mix64(std::uint64_t seed, std::uint64_t key) {
    return splitmix64(seed ^ splitmix64(key ^ 0xD1B54A32D192ED03ull));
}

inline double u64_to_unit(std::uint64_t u) {
    return static_cast<double>(u >> 11) * 0x1.0p-53;
}

// Counter-based stream of iid uniform phases on [0, 2pi). omega(n) is a pure
// function of (seed, n): evaluation order and thread count cannot matter.
// For d=2 the index is a lattice point k in Z^2 \ {0} with k and -k identified;
// omega(-k) = omega(k) by canonicalization.
struct PhaseStream {
    std::uint64_t seed = 0;
    int dimension = 1;

    double omega(std::uint64_t n) const {
        return two_pi * u64_to_unit(mix64(seed, n));
    }

    static std::uint64_t lattice_key(int k1, int k2) {
        if (k1 < 0 || (k1 == 0 && k2 < 0)) { k1 = -k1; k2 = -k2; }
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(k1)) << 32) |
               static_cast<std::uint64_t>(static_cast<std::uint32_t>(k2));
    }

    double omega(int k1, int k2) const {
        if (k1 == 0 && k2 == 0) throw std::domain_error("PhaseStream: index 0 excluded");
        return two_pi * u64_to_unit(mix64(seed ^ 0xA5A5A5A5A5A5A5A5ull, lattice_key(k1, k2)));
    }

    // auxiliary uniform in [0,1), keyed away from the phase indices
    double uniform01(std::uint64_t k) const {
        return u64_to_unit(mix64(seed ^ 0x5851F42D4C957F2Dull, k));
    }
};

} // namespace chaoslab
