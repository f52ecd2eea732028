#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "rig/instance.hpp"

namespace rig {

// Undirected simple graph as sorted adjacency lists.
struct SparseGraph {
    std::vector<std::vector<std::uint32_t>> adj;  // adj[v] sorted ascending, no self loops
    std::uint64_t edge_count = 0;

    std::uint64_t order() const { return adj.size(); }
    std::uint64_t degree(std::uint32_t v) const { return adj[v].size(); }
    bool has_edge(std::uint32_t u, std::uint32_t v) const;
};

struct DegreeStats {
    double mean = 0.0;
    double variance = 0.0;  // population variance, divide by n
    std::uint64_t max = 0;
};

struct ClusteringEstimate {
    std::optional<double> empirical;  // absent when the graph has no 2-path
    double predicted = 0.0;           // sqrt(n/m) * E Y / E Y^2
};

// Intersection graph of the instance: u ~ v iff the subsets share an
// attribute. Built by expanding each attribute's occupant list into a clique
// and deduplicating, never by testing all vertex pairs. Throws
// resource_limit_error when sum_w |T_w| * (|T_w| - 1) exceeds pair_budget.
SparseGraph build_graph(const Instance& inst, std::uint64_t pair_budget = std::uint64_t(1) << 33);

DegreeStats degree_stats(const SparseGraph& g);

// Empirical P(two neighbors of a vertex are adjacent) = 3 * triangles /
// number of 2-paths, next to its first-order prediction from the law moments.
ClusteringEstimate clustering(const Instance& inst, const SparseGraph& g, const SetSizeLaw& law);

// Largest number of vertices that hold both attributes of some attribute
// pair; 0 when no subset has 2 or more elements.
std::uint64_t attribute_pair_multiplicity(const Instance& inst);

// One line "u v" per edge with u < v, ordered by u then v.
void write_edge_list(const SparseGraph& g, std::ostream& out);

}  // namespace rig
