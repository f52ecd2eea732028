#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "rig/graph.hpp"
#include "rig/instance.hpp"

namespace rig {

struct CliqueResult {
    std::string algorithm;
    std::vector<std::uint32_t> vertices;  // sorted ascending; pairwise adjacent
    std::uint64_t elapsed_ns = 0;

    std::size_t size() const { return vertices.size(); }
    nlohmann::json to_json() const;
};

bool is_clique(const SparseGraph& g, std::span<const std::uint32_t> vertices);

// Scan vertices by degree descending (id ascending on ties) and keep every
// vertex adjacent to all keepers so far.
CliqueResult greedy_clique(const SparseGraph& g);

// Score each edge by the size of the endpoints' common neighborhood, try
// edges from the highest score down (repeated max extraction, no full sort)
// and return endpoints plus common neighborhood for the first edge whose
// common neighborhood induces a clique. With no qualifying edge, falls back
// to the single lowest-id vertex (empty on the empty graph).
CliqueResult mono_clique(const SparseGraph& g);

// Exact maximum clique, branch and bound with a greedy-coloring upper bound.
// Throws budget_exceeded_error after `budget` search-node expansions.
CliqueResult exact_max_clique(const SparseGraph& g, std::uint64_t budget = 100'000'000);

struct MonochromaticClique {
    std::optional<std::uint32_t> attribute;  // absent when every T_w is empty
    std::uint64_t size = 0;
};

// Largest attribute occupancy |T_w| (smallest attribute id on ties). Its
// occupant set is a clique of the intersection graph by construction.
MonochromaticClique max_monochromatic(const AttributeIndex& idx);

struct EdgeAttribute {
    std::uint32_t u = 0, v = 0;   // u < v
    std::uint32_t attribute = 0;  // attribute in S_u cap S_v
};

// Distinct-representative certificate that the given vertices form a clique
// whose edges can be labeled with pairwise distinct shared attributes.
// Absent when some pair is non-adjacent or no injective labeling exists.
std::optional<std::vector<EdgeAttribute>> is_rainbow_witness(
    const Instance& inst, std::span<const std::uint32_t> vertices);

struct RainbowWitnessReport {
    std::uint32_t h = 0;       // clique size sought
    std::uint64_t count = 0;   // witnessing h-sets
    std::vector<std::pair<std::vector<std::uint32_t>, std::vector<EdgeAttribute>>>
        sample_witnesses;      // at most 10 concrete certificates
};

// Enumerates the 4-cliques of g (edge and common-neighbor-pair extension)
// and counts those admitting a rainbow labeling. Throws resource_limit_error
// when the graph has more than `clique_cap` 4-cliques.
RainbowWitnessReport count_rainbow_k4(const Instance& inst, const SparseGraph& g,
                                      std::uint64_t clique_cap = 50'000'000);

struct CycleCount {
    std::uint64_t count = 0;
    bool saturated = false;  // stopped at the cap
};

// Ordered 4-tuples (v1, v2, v3, v4) of distinct vertices with edges v1v2,
// v2v3, v3v4, v1v4 and disjoint attribute sets at v2 and v4.
CycleCount count_bad_cycles(const Instance& inst, const SparseGraph& g,
                            std::uint64_t cap = 1'000'000'000);

// Same tuples without the disjointness requirement.
CycleCount count_4cycles(const SparseGraph& g, std::uint64_t cap = 1'000'000'000);

}  // namespace rig
