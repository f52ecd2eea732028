#include "rig/graph.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <unordered_map>

#include "rig/errors.hpp"

namespace rig {

bool SparseGraph::has_edge(std::uint32_t u, std::uint32_t v) const {
    if (u == v) return false;
    const auto& a = adj[u].size() <= adj[v].size() ? adj[u] : adj[v];
    std::uint32_t target = adj[u].size() <= adj[v].size() ? v : u;
    return std::binary_search(a.begin(), a.end(), target);
}

SparseGraph build_graph(const Instance& inst, std::uint64_t pair_budget) {
    AttributeIndex idx = invert(inst);

    std::uint64_t pairs = 0;
    for (const auto& occ : idx.occupants) {
        std::uint64_t s = occ.size();
        pairs += s * (s - (s > 0));
        if (pairs > pair_budget)
            throw resource_limit_error("build_graph: occupancy pair count exceeds budget");
    }

    SparseGraph g;
    g.adj.resize(inst.n);
    for (const auto& occ : idx.occupants)
        for (std::size_t i = 0; i < occ.size(); ++i)
            for (std::size_t j = i + 1; j < occ.size(); ++j) {
                g.adj[occ[i]].push_back(occ[j]);
                g.adj[occ[j]].push_back(occ[i]);
            }
    for (auto& nb : g.adj) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
        g.edge_count += nb.size();
    }
    g.edge_count /= 2;
    return g;
}

DegreeStats degree_stats(const SparseGraph& g) {
    DegreeStats st;
    if (g.adj.empty()) return st;
    double sum = 0.0, sumsq = 0.0;
    for (const auto& nb : g.adj) {
        double d = double(nb.size());
        sum += d;
        sumsq += d * d;
        st.max = std::max<std::uint64_t>(st.max, nb.size());
    }
    double n = double(g.adj.size());
    st.mean = sum / n;
    st.variance = std::max(0.0, sumsq / n - st.mean * st.mean);
    return st;
}

ClusteringEstimate clustering(const Instance& inst, const SparseGraph& g, const SetSizeLaw& law) {
    ClusteringEstimate est;
    MomentsY mo = law.moments_y(inst.n, inst.m);
    est.predicted = mo.mean_y2 > 0.0
                        ? std::sqrt(double(inst.n) / double(inst.m)) * mo.mean_y / mo.mean_y2
                        : 0.0;

    // 3 * triangles = sum over edges of |N(u) cap N(v)|.
    std::uint64_t closed = 0, paths = 0;
    for (std::uint32_t u = 0; u < g.adj.size(); ++u) {
        std::uint64_t d = g.adj[u].size();
        paths += d * (d - (d > 0)) / 2;
        for (std::uint32_t v : g.adj[u]) {
            if (v <= u) continue;
            const auto& a = g.adj[u];
            const auto& b = g.adj[v];
            for (std::size_t i = 0, j = 0; i < a.size() && j < b.size();) {
                if (a[i] < b[j])
                    ++i;
                else if (a[i] > b[j])
                    ++j;
                else {
                    ++closed;
                    ++i;
                    ++j;
                }
            }
        }
    }
    if (paths > 0) est.empirical = double(closed) / double(paths);
    return est;
}

std::uint64_t attribute_pair_multiplicity(const Instance& inst) {
    std::unordered_map<std::uint64_t, std::uint64_t> count;
    for (const auto& subset : inst.subsets)
        for (std::size_t i = 0; i < subset.size(); ++i)
            for (std::size_t j = i + 1; j < subset.size(); ++j)
                ++count[std::uint64_t(subset[i]) * inst.m + subset[j]];
    std::uint64_t best = 0;
    for (const auto& [key, c] : count) best = std::max(best, c);
    return best;
}

void write_edge_list(const SparseGraph& g, std::ostream& out) {
    for (std::uint32_t u = 0; u < g.adj.size(); ++u)
        for (std::uint32_t v : g.adj[u])
            if (u < v) out << u << ' ' << v << '\n';
}

}  // namespace rig
