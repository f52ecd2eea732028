#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace rig {

using Rng = std::mt19937_64;

// Finalizer of the splitmix64 generator. Bijective on 64-bit words with
// good avalanche, which is what we need to decorrelate structured seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t mix_seed(std::uint64_t h, std::uint64_t v) {
    return splitmix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

// Deterministic per-trial seed. Trial i of point p of a named experiment
// always gets the same stream no matter how work is scheduled.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                                 std::uint64_t point, std::uint64_t trial) {
    std::uint64_t h = splitmix64(master);
    for (unsigned char c : tag) h = mix_seed(h, c);
    h = mix_seed(h, point);
    h = mix_seed(h, trial);
    return h;
}

inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(rng);
}

}  // namespace rig
