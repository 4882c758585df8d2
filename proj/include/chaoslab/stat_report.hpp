#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace chaoslab {

// Structured result of one Monte Carlo experiment. The JSON schema is part of
// the CLI contract: estimate, std_error, oracle, N, seed, replicas, pass, plus
// experiment-specific extras.
struct StatReport {
    std::string name;
    double estimate = 0.0;
    double std_error = 0.0;
    double oracle = 0.0;
    std::uint64_t N = 0;
    std::uint64_t seed = 0;
    std::uint64_t replicas = 0;
    bool pass = true;
    nlohmann::json extra = nlohmann::json::object();

    nlohmann::json to_json() const {
        nlohmann::json j{{"name", name},     {"estimate", estimate},
                         {"std_error", std_error}, {"oracle", oracle},
                         {"N", N},           {"seed", seed},
                         {"replicas", replicas},   {"pass", pass}};
        for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
        return j;
    }
};

} // namespace chaoslab
