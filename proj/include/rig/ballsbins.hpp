#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <json.hpp>

#include "rig/rng.hpp"
#include "rig/set_size_law.hpp"

namespace rig {

// Distribution of the maximum bin load, exact or empirical.
struct LoadDistribution {
    std::string source;                    // "exact" or "empirical"
    std::optional<std::uint64_t> trials;   // present for empirical
    std::map<std::uint64_t, double> pmf;   // load -> probability

    nlohmann::json to_json() const;
    static LoadDistribution from_json(const nlohmann::json& j);
};

// One draw of the maximum load after throwing balls i.i.d. uniformly.
std::uint64_t max_load_sample(std::uint64_t balls, std::uint64_t bins, Rng& rng);

LoadDistribution empirical_load_distribution(std::uint64_t balls, std::uint64_t bins,
                                             std::uint64_t trials, Rng& rng);

// Exact law of the maximum load. P(M <= k) is computed by a bin-by-bin
// convolution over normalized counts (every partial value stays in [0, 1]),
// with compensated summation. Guarded to balls, bins <= 200.
LoadDistribution max_load_exact(std::uint64_t balls, std::uint64_t bins);

// Total variation distance, 0.5 * sum |p - q| over the union support.
double tv_distance(const LoadDistribution& a, const LoadDistribution& b);

struct CoupledThrow {
    std::uint64_t max_before = 0;  // maximum over floor(balls * (1 + eps)) throws
    std::uint64_t max_after = 0;   // maximum after deleting floor(eps * balls) balls
};

// One coupled sample; max_after is distributed as the maximum load of
// exactly `balls` i.i.d. uniform throws and never exceeds max_before.
CoupledThrow coupled_throw(std::uint64_t balls, std::uint64_t bins, double eps, Rng& rng);

struct CouplingReport {
    std::uint64_t trials = 0;
    double p_equal = 0.0;           // fraction of trials with M == M'
    double p_within_delta = 0.0;    // fraction with M' - M <= delta * mean(M')
    std::int64_t min_gap = 0;       // min over trials of M' - M
    double mean_m_prime = 0.0;
    double delta = 0.0;
};

// Throw floor(balls * (1 + eps)) balls, record the maximum M', delete
// floor(eps * balls) of the thrown balls uniformly at random, record the
// maximum M of what remains (exactly `balls` balls, still i.i.d. uniform).
// delta defaults to 1 / ln(balls + 2).
CouplingReport coupling_experiment(std::uint64_t balls, std::uint64_t bins, double eps,
                                   std::uint64_t trials, Rng& rng,
                                   std::optional<double> delta = std::nullopt);

struct OmegaMaxloadReport {
    double tv = 0.0;
    std::uint64_t matched_balls = 0;       // floor(sqrt(m n) * E Y)
    LoadDistribution omega_prime;          // empirical law of the top occupancy
    LoadDistribution max_load;             // empirical law of the matched occupancy scheme
};

// Compares the empirical law of the largest attribute occupancy of sampled
// instances against the maximum load of the matched balls-into-bins scheme.
OmegaMaxloadReport omega_prime_vs_maxload(std::uint64_t n, std::uint64_t m, const SetSizeLaw& law,
                                          std::uint64_t trials, std::uint64_t seed);

}  // namespace rig
