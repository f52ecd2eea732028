#include "rig/cliques.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <unordered_map>

#include "rig/errors.hpp"
#include "rig/matching.hpp"

namespace rig {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t ns_since(Clock::time_point start) {
    return std::uint64_t(
        std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count());
}

std::vector<std::uint32_t> sorted_intersection(const std::vector<std::uint32_t>& a,
                                               const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool disjoint_sorted(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j])
            ++i;
        else if (a[i] > b[j])
            ++j;
        else
            return false;
    }
    return true;
}

}  // namespace

bool is_clique(const SparseGraph& g, std::span<const std::uint32_t> vs) {
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (!g.has_edge(vs[i], vs[j])) return false;
    return true;
}

nlohmann::json CliqueResult::to_json() const {
    return {{"algorithm", algorithm},
            {"size", vertices.size()},
            {"vertices", vertices},
            {"elapsed_ns", elapsed_ns}};
}

CliqueResult greedy_clique(const SparseGraph& g) {
    auto start = Clock::now();
    std::vector<std::uint32_t> order(g.adj.size());
    for (std::uint32_t v = 0; v < order.size(); ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return g.adj[a].size() != g.adj[b].size() ? g.adj[a].size() > g.adj[b].size() : a < b;
    });

    CliqueResult res;
    res.algorithm = "greedy";
    for (std::uint32_t v : order) {
        bool ok = true;
        for (std::uint32_t u : res.vertices)
            if (!g.has_edge(u, v)) {
                ok = false;
                break;
            }
        if (ok) res.vertices.push_back(v);
    }
    std::sort(res.vertices.begin(), res.vertices.end());
    res.elapsed_ns = ns_since(start);
    return res;
}

CliqueResult mono_clique(const SparseGraph& g) {
    auto start = Clock::now();
    CliqueResult res;
    res.algorithm = "mono";
    const std::uint32_t n = std::uint32_t(g.adj.size());

    // Edge ids in lexicographic (u, v) order with u < v; the forward slice of
    // adj[u] (entries above u) is contiguous, so an id is an offset plus a
    // binary search.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    edges.reserve(g.edge_count);
    std::vector<std::size_t> first_edge(std::size_t(n) + 1, 0);
    for (std::uint32_t u = 0; u < n; ++u) {
        first_edge[u] = edges.size();
        for (std::uint32_t v : g.adj[u])
            if (u < v) edges.emplace_back(u, v);
    }
    first_edge[n] = edges.size();
    auto edge_id = [&](std::uint32_t a, std::uint32_t b) {
        if (a > b) std::swap(a, b);
        const auto& nb = g.adj[a];
        auto fwd = std::lower_bound(nb.begin(), nb.end(), a + 1);
        return first_edge[a] + std::size_t(std::lower_bound(fwd, nb.end(), b) - fwd);
    };

    // D(uv) = |common neighborhood|, accumulated by enumerating each triangle
    // once at its two lowest-rank endpoints. Orienting edges by ascending
    // degree keeps the out-lists short on skewed graphs, so this pass stays
    // near-linear where per-edge adjacency merges would cost sum of deg^2.
    std::vector<std::uint32_t> rank(n), order(n);
    for (std::uint32_t v = 0; v < n; ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return g.adj[a].size() != g.adj[b].size() ? g.adj[a].size() < g.adj[b].size() : a < b;
    });
    for (std::uint32_t i = 0; i < n; ++i) rank[order[i]] = i;

    std::vector<std::vector<std::uint32_t>> out_ranks(n);
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v : g.adj[u])
            if (rank[v] > rank[u]) out_ranks[u].push_back(rank[v]);
    for (auto& lst : out_ranks) std::sort(lst.begin(), lst.end());

    std::vector<std::uint32_t> score(edges.size(), 0);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        auto [u, v] = edges[e];
        const auto& a = out_ranks[u];
        const auto& b = out_ranks[v];
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i] < b[j]) {
                ++i;
            } else if (a[i] > b[j]) {
                ++j;
            } else {
                std::uint32_t w = order[a[i]];
                ++score[e];
                ++score[edge_id(u, w)];
                ++score[edge_id(v, w)];
                ++i;
                ++j;
            }
        }
    }

    // Extract edges from the highest D down, ties toward the smallest edge
    // id (which is lexicographic order). Few extractions are expected, so no
    // full pre-sort; a heap keeps the worst case at E log E anyway. Packing
    // (score, ~id) into one word gives exactly that ordering under max-heap.
    std::vector<std::uint64_t> heap(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e)
        heap[e] = (std::uint64_t(score[e]) << 32) | (0xffffffffull - e);
    std::make_heap(heap.begin(), heap.end());
    while (!heap.empty()) {
        std::pop_heap(heap.begin(), heap.end());
        std::size_t e = std::size_t(0xffffffffull - (heap.back() & 0xffffffffull));
        heap.pop_back();
        auto [u, v] = edges[e];
        std::vector<std::uint32_t> common = sorted_intersection(g.adj[u], g.adj[v]);
        if (is_clique(g, common)) {
            res.vertices = std::move(common);
            res.vertices.push_back(u);
            res.vertices.push_back(v);
            std::sort(res.vertices.begin(), res.vertices.end());
            res.elapsed_ns = ns_since(start);
            return res;
        }
    }

    if (!g.adj.empty()) res.vertices.push_back(0);  // fallback: lowest vertex id
    res.elapsed_ns = ns_since(start);
    return res;
}

namespace {

struct CliqueSearch {
    const SparseGraph& g;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    std::vector<std::uint32_t> best{}, cur{};

    void expand(const std::vector<std::uint32_t>& cand) {
        if (++nodes > budget) throw budget_exceeded_error("exact_max_clique: budget exhausted");
        if (cand.empty()) {
            if (cur.size() > best.size()) best = cur;
            return;
        }

        // Greedy coloring in candidate order; the class index plus one bounds
        // any clique inside the class-prefix, so process high colors first.
        std::vector<std::vector<std::uint32_t>> classes;
        for (std::uint32_t v : cand) {
            std::size_t c = 0;
            for (; c < classes.size(); ++c) {
                bool conflict = false;
                for (std::uint32_t u : classes[c])
                    if (g.has_edge(u, v)) {
                        conflict = true;
                        break;
                    }
                if (!conflict) break;
            }
            if (c == classes.size()) classes.emplace_back();
            classes[c].push_back(v);
        }
        std::vector<std::uint32_t> ordered;
        std::vector<std::uint32_t> color;
        ordered.reserve(cand.size());
        color.reserve(cand.size());
        for (std::size_t c = 0; c < classes.size(); ++c)
            for (std::uint32_t v : classes[c]) {
                ordered.push_back(v);
                color.push_back(std::uint32_t(c) + 1);
            }

        for (std::size_t i = ordered.size(); i-- > 0;) {
            if (cur.size() + color[i] <= best.size()) return;
            std::uint32_t v = ordered[i];
            std::vector<std::uint32_t> next;
            for (std::size_t k = 0; k < i; ++k)
                if (g.has_edge(ordered[k], v)) next.push_back(ordered[k]);
            cur.push_back(v);
            expand(next);
            cur.pop_back();
        }
    }
};

}  // namespace

CliqueResult exact_max_clique(const SparseGraph& g, std::uint64_t budget) {
    auto start = Clock::now();
    CliqueSearch search{.g = g, .budget = budget};
    search.best = greedy_clique(g).vertices;  // warm lower bound

    std::vector<std::uint32_t> cand(g.adj.size());
    for (std::uint32_t v = 0; v < cand.size(); ++v) cand[v] = v;
    std::stable_sort(cand.begin(), cand.end(), [&](std::uint32_t a, std::uint32_t b) {
        return g.adj[a].size() != g.adj[b].size() ? g.adj[a].size() > g.adj[b].size() : a < b;
    });
    search.expand(cand);

    CliqueResult res;
    res.algorithm = "exact";
    res.vertices = std::move(search.best);
    std::sort(res.vertices.begin(), res.vertices.end());
    res.elapsed_ns = ns_since(start);
    return res;
}

MonochromaticClique max_monochromatic(const AttributeIndex& idx) {
    MonochromaticClique best;
    for (std::uint32_t w = 0; w < idx.occupants.size(); ++w)
        if (idx.occupants[w].size() > best.size) {
            best.size = idx.occupants[w].size();
            best.attribute = w;
        }
    return best;
}

std::optional<std::vector<EdgeAttribute>> is_rainbow_witness(
    const Instance& inst, std::span<const std::uint32_t> vertices) {
    const std::size_t h = vertices.size();
    std::vector<std::vector<std::uint32_t>> pair_colors;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    pair_colors.reserve(h * (h - 1) / 2);
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = i + 1; j < h; ++j) {
            auto common =
                sorted_intersection(inst.subsets[vertices[i]], inst.subsets[vertices[j]]);
            if (common.empty()) return std::nullopt;  // not even a clique
            pairs.emplace_back(std::min(vertices[i], vertices[j]),
                               std::max(vertices[i], vertices[j]));
            pair_colors.push_back(std::move(common));
        }

    // Compact the attributes in play and match edges to distinct attributes.
    std::unordered_map<std::uint32_t, int> attr_id;
    std::vector<std::uint32_t> attr_of;
    std::vector<std::vector<int>> left_adj(pairs.size());
    for (std::size_t e = 0; e < pairs.size(); ++e)
        for (std::uint32_t w : pair_colors[e]) {
            auto [it, fresh] = attr_id.try_emplace(w, int(attr_of.size()));
            if (fresh) attr_of.push_back(w);
            left_adj[e].push_back(it->second);
        }
    std::vector<int> match;
    if (max_bipartite_matching(left_adj, int(attr_of.size()), &match) != int(pairs.size()))
        return std::nullopt;

    std::vector<EdgeAttribute> witness(pairs.size());
    for (std::size_t e = 0; e < pairs.size(); ++e)
        witness[e] = {pairs[e].first, pairs[e].second, attr_of[std::size_t(match[e])]};
    return witness;
}

RainbowWitnessReport count_rainbow_k4(const Instance& inst, const SparseGraph& g,
                                      std::uint64_t clique_cap) {
    RainbowWitnessReport report;
    report.h = 4;
    std::uint64_t cliques_seen = 0;
    for (std::uint32_t u = 0; u < g.adj.size(); ++u)
        for (std::uint32_t v : g.adj[u]) {
            if (v <= u) continue;
            // Common neighbors above v; each 4-clique is found exactly once,
            // at its lexicographically smallest edge.
            std::vector<std::uint32_t> common;
            for (std::uint32_t w : sorted_intersection(g.adj[u], g.adj[v]))
                if (w > v) common.push_back(w);
            for (std::size_t i = 0; i < common.size(); ++i)
                for (std::size_t j = i + 1; j < common.size(); ++j) {
                    if (!g.has_edge(common[i], common[j])) continue;
                    if (++cliques_seen > clique_cap)
                        throw resource_limit_error("count_rainbow_k4: too many 4-cliques");
                    std::uint32_t quad[4] = {u, v, common[i], common[j]};
                    if (auto witness = is_rainbow_witness(inst, quad)) {
                        ++report.count;
                        if (report.sample_witnesses.size() < 10)
                            report.sample_witnesses.emplace_back(
                                std::vector<std::uint32_t>{u, v, common[i], common[j]},
                                std::move(*witness));
                    }
                }
        }
    return report;
}

namespace {

// Ordered 4-cycles v1-v2-v3-v4-v1 grouped by the (v2, v4) pair: a pair with
// c common neighbors and an admissible relation contributes 2c(c-1) tuples.
// Wedges are streamed so the count can stop at the cap.
CycleCount count_cycles_impl(const SparseGraph& g, std::uint64_t cap,
                             const std::function<bool(std::uint32_t, std::uint32_t)>& pair_ok) {
    struct PairState {
        std::uint64_t mult = 0;
        bool ok = false;
    };
    std::unordered_map<std::uint64_t, PairState> pairs;
    CycleCount out;
    const std::uint64_t n = g.adj.size();
    for (std::uint32_t mid = 0; mid < n; ++mid) {
        const auto& nb = g.adj[mid];
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                auto [it, fresh] = pairs.try_emplace(std::uint64_t(nb[i]) * n + nb[j]);
                if (fresh) it->second.ok = pair_ok(nb[i], nb[j]);
                if (it->second.ok) {
                    out.count += 4 * it->second.mult;
                    if (out.count >= cap) {
                        out.count = cap;
                        out.saturated = true;
                        return out;
                    }
                }
                ++it->second.mult;
            }
    }
    return out;
}

}  // namespace

CycleCount count_bad_cycles(const Instance& inst, const SparseGraph& g, std::uint64_t cap) {
    return count_cycles_impl(g, cap, [&](std::uint32_t a, std::uint32_t b) {
        return disjoint_sorted(inst.subsets[a], inst.subsets[b]);
    });
}

CycleCount count_4cycles(const SparseGraph& g, std::uint64_t cap) {
    return count_cycles_impl(g, cap, [](std::uint32_t, std::uint32_t) { return true; });
}

}  // namespace rig
