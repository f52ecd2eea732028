#pragma once

#include <cstdint>
#include <vector>

#include "rig/cliques.hpp"
#include "rig/graph.hpp"
#include "rig/rng.hpp"

namespace rig {
namespace oracle {

// Maximum clique by dynamic programming over all vertex subsets. Guarded to
// 20 vertices. Deliberately shares nothing with the branch-and-bound solver.
CliqueResult brute_max_clique(const SparseGraph& g);

// All size-s subsets of {0, ..., m-1} in colex order, each sorted.
std::vector<std::vector<std::uint32_t>> all_subsets_of_size(std::uint64_t m, std::uint64_t s);

// P(the family {S cap A_1, ..., S cap A_k} has a system of distinct
// representatives) for S uniform over the C(m, d) d-subsets of the
// attributes. Exhaustive enumeration; guarded to C(m, d) <= 1e6.
double sdr_probability_exact(const std::vector<std::vector<std::uint32_t>>& family,
                             std::uint64_t m, std::uint64_t d);

struct DisjointMaximizesReport {
    double disjoint = 0.0;   // SDR probability of the packed disjoint family
    double max_other = 0.0;  // best SDR probability among sampled rivals
    bool holds = false;      // disjoint >= max_other - 1e-12
};

// Checks that mutually disjoint ground sets maximize the SDR probability:
// compares the packed family {0..a1-1}, {a1..a1+a2-1}, ... against
// `candidates` uniformly sampled families of the same sizes (resampled until
// some pair overlaps, when k >= 2). Requires sum(sizes) <= m and d >= k.
DisjointMaximizesReport verify_disjoint_maximizes(const std::vector<std::uint64_t>& sizes,
                                                  std::uint64_t m, std::uint64_t d,
                                                  std::uint64_t candidates, Rng& rng);

// P(k vertices with the given subset sizes form a clique whose edges admit
// pairwise-distinct shared attributes), by enumerating every tuple of
// subsets. Guarded to 1e7 tuples.
double rainbow_prob_exact(const std::vector<std::uint64_t>& sizes, std::uint64_t m);

struct ExhaustiveSdrReport {
    bool holds = false;        // no family beat its packed disjoint counterpart
    double min_margin = 0.0;   // min over configurations of disjoint - best rival
    std::uint64_t families_checked = 0;
};

// Sweeps every m <= max_m, every multiset of positive sizes with sum <= m,
// every d between the family size and m, and every family of those sizes,
// checking that the packed disjoint family attains the maximum SDR
// probability. Intended for small max_m (around 5).
ExhaustiveSdrReport disjoint_maximizes_exhaustive(std::uint64_t max_m);

}  // namespace oracle
}  // namespace rig
