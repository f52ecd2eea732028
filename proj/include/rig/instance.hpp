#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rig/rng.hpp"
#include "rig/set_size_law.hpp"

namespace rig {

// One sampled random intersection instance: n vertices, m attributes, and
// per vertex the sorted set of attributes it holds.
struct Instance {
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    std::uint64_t seed = 0;
    std::vector<std::vector<std::uint32_t>> subsets;  // subsets[v] sorted ascending
};

// Inverse view: for each attribute w the sorted list of vertices holding w.
struct AttributeIndex {
    std::vector<std::vector<std::uint32_t>> occupants;  // occupants[w] sorted ascending
};

// Uniform k-subset of {0, ..., m-1}, sorted. Floyd's sampling; expected
// O(k) work and memory regardless of m.
std::vector<std::uint32_t> sample_uniform_subset(std::uint64_t k, std::uint64_t m, Rng& rng);

// Instance with i.i.d. subset sizes drawn from the law, each subset uniform
// among the size-k subsets of the attribute set. Deterministic in the seed.
Instance generate(std::uint64_t n, std::uint64_t m, const SetSizeLaw& law, std::uint64_t seed);

// Instance where each attribute enters each subset independently with
// probability p (sampled as a binomial size plus a uniform subset, which is
// the same law).
Instance generate_binomial(std::uint64_t n, std::uint64_t m, double p, std::uint64_t seed);

AttributeIndex invert(const Instance& inst);

// Text round trip. Format: first line "n m seed", then one line per vertex
// with its attribute ids separated by single spaces (possibly empty).
void write_instance(const Instance& inst, std::ostream& out);
Instance read_instance(std::istream& in);
void write_instance_file(const Instance& inst, const std::string& path);
Instance read_instance_file(const std::string& path);

}  // namespace rig
