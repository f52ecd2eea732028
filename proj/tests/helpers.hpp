#pragma once

// Shared fixtures for the unit tests. Everything here is tiny and built by
// hand so expected values can be checked by hand.

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "rig/graph.hpp"
#include "rig/instance.hpp"

namespace testfix {

// Instance from explicit per-vertex attribute sets.
inline rig::Instance instance_from_subsets(std::uint64_t m,
                                           std::vector<std::vector<std::uint32_t>> subsets) {
    rig::Instance inst;
    inst.n = subsets.size();
    inst.m = m;
    inst.seed = 0;
    for (auto& s : subsets) std::sort(s.begin(), s.end());
    inst.subsets = std::move(subsets);
    return inst;
}

// The 4-vertex cover instance: attributes {A, B, C} = {0, 1, 2} and
// S_0 = {A,B}, S_1 = {A,C}, S_2 = {A,B,C}, S_3 = {B,C}. Its intersection
// graph is K4: every pair of subsets meets. Attribute 0 is held by vertices
// {0, 1, 2}, so the largest monochromatic clique has size 3.
inline rig::Instance cover_instance() {
    return instance_from_subsets(3, {{0, 1}, {0, 2}, {0, 1, 2}, {1, 2}});
}

// Graph from an explicit edge list.
inline rig::SparseGraph graph_from_edges(std::uint32_t n,
                                         const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
    rig::SparseGraph g;
    g.adj.assign(n, {});
    for (auto [u, v] : edges) {
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto& nb : g.adj) std::sort(nb.begin(), nb.end());
    g.edge_count = edges.size();
    return g;
}

inline rig::SparseGraph complete_graph(std::uint32_t n) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return graph_from_edges(n, edges);
}

inline rig::SparseGraph cycle_graph(std::uint32_t n) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t u = 0; u < n; ++u) {
        std::uint32_t v = (u + 1) % n;
        edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    return graph_from_edges(n, edges);
}

// Petersen graph: outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5.
// Triangle-free with clique number 2.
inline rig::SparseGraph petersen_graph() {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);
        edges.emplace_back(i, i + 5);
        edges.emplace_back(5 + i, 5 + (i + 2) % 5);
    }
    return graph_from_edges(10, edges);
}

// Octahedron = K6 minus the perfect matching {0,3}, {1,4}, {2,5}. Every
// edge uv has a common neighborhood containing an antipodal non-adjacent
// pair, so no edge passes the common-neighborhood-is-a-clique test even
// though triangles abound.
inline rig::SparseGraph octahedron_graph() {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t u = 0; u < 6; ++u)
        for (std::uint32_t v = u + 1; v < 6; ++v)
            if (v != u + 3) edges.emplace_back(u, v);
    return graph_from_edges(6, edges);
}

// Four vertices, six attributes, one private attribute per vertex pair:
// pair {i, j} shares exactly attribute e(i, j). The intersection graph is
// K4 and the identity edge-to-attribute assignment is a rainbow witness.
inline rig::Instance rainbow_k4_instance() {
    std::uint32_t eid[4][4] = {};
    std::uint32_t next = 0;
    for (std::uint32_t i = 0; i < 4; ++i)
        for (std::uint32_t j = i + 1; j < 4; ++j) eid[i][j] = eid[j][i] = next++;
    std::vector<std::vector<std::uint32_t>> subsets(4);
    for (std::uint32_t i = 0; i < 4; ++i)
        for (std::uint32_t j = 0; j < 4; ++j)
            if (j != i) subsets[i].push_back(eid[i][j]);
    return instance_from_subsets(6, std::move(subsets));
}

// Attribute 4-cycle: S_0 = {0,3}, S_1 = {0,1}, S_2 = {1,2}, S_3 = {2,3}.
// The graph is the 4-cycle 0-1-2-3-0 and both diagonals are attribute
// disjoint (S_0 vs S_2 and S_1 vs S_3).
inline rig::Instance four_cycle_instance() {
    return instance_from_subsets(4, {{0, 3}, {0, 1}, {1, 2}, {2, 3}});
}

// Naive quadratic intersection-graph construction, the oracle for
// build_graph equivalence tests.
inline rig::SparseGraph naive_intersection_graph(const rig::Instance& inst) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t u = 0; u < inst.n; ++u) {
        for (std::uint32_t v = u + 1; v < inst.n; ++v) {
            const auto& a = inst.subsets[u];
            const auto& b = inst.subsets[v];
            bool meet = false;
            std::size_t i = 0, j = 0;
            while (i < a.size() && j < b.size()) {
                if (a[i] == b[j]) { meet = true; break; }
                if (a[i] < b[j]) ++i; else ++j;
            }
            if (meet) edges.emplace_back(u, v);
        }
    }
    return graph_from_edges(std::uint32_t(inst.n), edges);
}

}  // namespace testfix
