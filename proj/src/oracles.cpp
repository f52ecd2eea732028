#include "rig/oracles.hpp"

#include <algorithm>
#include <bit>
#include <chrono>

#include "rig/errors.hpp"
#include "rig/instance.hpp"

namespace rig {
namespace oracle {

namespace {

// SDR existence by plain backtracking over the sets, smallest index first.
// Exponential in principle, fine for the handful of sets the oracles see.
bool has_sdr(const std::vector<std::vector<std::uint32_t>>& sets, std::size_t i,
             std::vector<std::uint32_t>& used) {
    if (i == sets.size()) return true;
    for (std::uint32_t w : sets[i]) {
        if (std::find(used.begin(), used.end(), w) != used.end()) continue;
        used.push_back(w);
        if (has_sdr(sets, i + 1, used)) {
            used.pop_back();
            return true;
        }
        used.pop_back();
    }
    return false;
}

bool has_sdr(const std::vector<std::vector<std::uint32_t>>& sets) {
    std::vector<std::uint32_t> used;
    used.reserve(sets.size());
    return has_sdr(sets, 0, used);
}

std::vector<std::uint32_t> sorted_intersection(const std::vector<std::uint32_t>& a,
                                               const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::uint64_t checked_binomial(std::uint64_t m, std::uint64_t d, std::uint64_t cap) {
    if (d > m) return 0;
    unsigned __int128 value = 1;
    for (std::uint64_t i = 1; i <= d; ++i) {
        value = value * (m - d + i) / i;
        if (value > cap) throw size_limit_error("oracle: enumeration too large");
    }
    return std::uint64_t(value);
}

}  // namespace

CliqueResult brute_max_clique(const SparseGraph& g) {
    const std::size_t n = g.adj.size();
    if (n > 20) throw size_limit_error("brute_max_clique: guarded to 20 vertices");
    auto start = std::chrono::steady_clock::now();

    std::vector<std::uint32_t> nbr_mask(n, 0);
    for (std::uint32_t v = 0; v < n; ++v)
        for (std::uint32_t u : g.adj[v]) nbr_mask[v] |= std::uint32_t(1) << u;

    // clique[S] = clique[S without its lowest vertex v] and S \ {v} subset N(v)
    const std::uint32_t full = n == 0 ? 0 : (std::uint32_t(1) << n) - 1;
    std::vector<char> clique(std::size_t(full) + 1, 0);
    clique[0] = 1;
    std::uint32_t best_mask = 0;
    int best_size = 0;
    for (std::uint32_t mask = 1; mask <= full && full; ++mask) {
        std::uint32_t v = std::uint32_t(std::countr_zero(mask));
        std::uint32_t rest = mask & (mask - 1);
        clique[mask] = clique[rest] && (rest & ~nbr_mask[v]) == 0;
        if (clique[mask] && std::popcount(mask) > best_size) {
            best_size = std::popcount(mask);
            best_mask = mask;
        }
    }

    CliqueResult res;
    res.algorithm = "brute";
    for (std::uint32_t v = 0; v < n; ++v)
        if (best_mask & (std::uint32_t(1) << v)) res.vertices.push_back(v);
    res.elapsed_ns = std::uint64_t(std::chrono::duration_cast<std::chrono::nanoseconds>(
                                       std::chrono::steady_clock::now() - start)
                                       .count());
    return res;
}

std::vector<std::vector<std::uint32_t>> all_subsets_of_size(std::uint64_t m, std::uint64_t s) {
    checked_binomial(m, s, 10'000'000);
    std::vector<std::vector<std::uint32_t>> out;
    if (s > m) return out;
    std::vector<std::uint32_t> comb(s);
    for (std::uint64_t i = 0; i < s; ++i) comb[i] = std::uint32_t(i);
    for (;;) {
        out.push_back(comb);
        // colex successor: bump the lowest slot that has headroom, reset the
        // slots below it to the smallest values
        std::uint64_t i = 0;
        while (i < s && comb[i] + 1 == (i + 1 < s ? comb[i + 1] : m)) ++i;
        if (i == s) break;
        ++comb[i];
        for (std::uint64_t j = 0; j < i; ++j) comb[j] = std::uint32_t(j);
    }
    return out;
}

double sdr_probability_exact(const std::vector<std::vector<std::uint32_t>>& family,
                             std::uint64_t m, std::uint64_t d) {
    if (d > m) throw size_limit_error("sdr_probability_exact: d exceeds m");
    const std::uint64_t total = checked_binomial(m, d, 1'000'000);
    std::vector<std::vector<std::uint32_t>> sorted_family = family;
    for (auto& set : sorted_family) {
        std::sort(set.begin(), set.end());
        for (std::uint32_t w : set)
            if (w >= m) throw size_limit_error("sdr_probability_exact: element out of range");
    }

    std::uint64_t favorable = 0;
    std::vector<std::uint32_t> comb(d);
    for (std::uint64_t i = 0; i < d; ++i) comb[i] = std::uint32_t(i);
    for (std::uint64_t outcome = 0; outcome < total; ++outcome) {
        std::vector<std::vector<std::uint32_t>> cut(sorted_family.size());
        for (std::size_t i = 0; i < sorted_family.size(); ++i)
            cut[i] = sorted_intersection(sorted_family[i], comb);
        if (has_sdr(cut)) ++favorable;

        std::uint64_t i = 0;
        while (i < d && comb[i] + 1 == (i + 1 < d ? comb[i + 1] : m)) ++i;
        if (i == d) break;
        ++comb[i];
        for (std::uint64_t j = 0; j < i; ++j) comb[j] = std::uint32_t(j);
    }
    return double(favorable) / double(total);
}

DisjointMaximizesReport verify_disjoint_maximizes(const std::vector<std::uint64_t>& sizes,
                                                  std::uint64_t m, std::uint64_t d,
                                                  std::uint64_t candidates, Rng& rng) {
    const std::size_t k = sizes.size();
    std::uint64_t total_size = 0;
    for (std::uint64_t s : sizes) {
        if (s == 0) throw size_limit_error("verify_disjoint_maximizes: sizes must be positive");
        total_size += s;
    }
    if (total_size > m)
        throw size_limit_error("verify_disjoint_maximizes: sizes must pack into m attributes");
    if (d < k) throw size_limit_error("verify_disjoint_maximizes: need d >= number of sets");

    DisjointMaximizesReport rep;
    std::vector<std::vector<std::uint32_t>> packed(k);
    std::uint32_t next = 0;
    for (std::size_t i = 0; i < k; ++i)
        for (std::uint64_t j = 0; j < sizes[i]; ++j) packed[i].push_back(next++);
    rep.disjoint = sdr_probability_exact(packed, m, d);

    for (std::uint64_t c = 0; c < candidates; ++c) {
        std::vector<std::vector<std::uint32_t>> family(k);
        for (int attempt = 0;; ++attempt) {
            for (std::size_t i = 0; i < k; ++i)
                family[i] = sample_uniform_subset(sizes[i], m, rng);
            if (k < 2) break;
            bool overlapping = false;
            for (std::size_t i = 0; i < k && !overlapping; ++i)
                for (std::size_t j = i + 1; j < k && !overlapping; ++j)
                    if (!sorted_intersection(family[i], family[j]).empty()) overlapping = true;
            if (overlapping) break;
            if (attempt > 10000)
                throw size_limit_error("verify_disjoint_maximizes: cannot sample overlap");
        }
        rep.max_other = std::max(rep.max_other, sdr_probability_exact(family, m, d));
    }
    rep.holds = rep.disjoint >= rep.max_other - 1e-12;
    return rep;
}

double rainbow_prob_exact(const std::vector<std::uint64_t>& sizes, std::uint64_t m) {
    const std::size_t k = sizes.size();
    if (k < 2) throw size_limit_error("rainbow_prob_exact: need at least 2 sizes");
    std::uint64_t total = 1;
    std::vector<std::vector<std::vector<std::uint32_t>>> choices(k);
    for (std::size_t i = 0; i < k; ++i) {
        if (sizes[i] > m) throw size_limit_error("rainbow_prob_exact: size exceeds m");
        std::uint64_t c = checked_binomial(m, sizes[i], 10'000'000);
        if (total > 10'000'000 / c) throw size_limit_error("rainbow_prob_exact: enumeration too large");
        total *= c;
        choices[i] = all_subsets_of_size(m, sizes[i]);
    }

    std::vector<std::size_t> pick(k, 0);
    std::uint64_t favorable = 0;
    for (std::uint64_t outcome = 0; outcome < total; ++outcome) {
        std::vector<std::vector<std::uint32_t>> pair_sets;
        bool complete = true;
        for (std::size_t i = 0; i < k && complete; ++i)
            for (std::size_t j = i + 1; j < k && complete; ++j) {
                pair_sets.push_back(sorted_intersection(choices[i][pick[i]], choices[j][pick[j]]));
                if (pair_sets.back().empty()) complete = false;
            }
        if (complete && has_sdr(pair_sets)) ++favorable;

        std::size_t i = 0;
        while (i < k && pick[i] + 1 == choices[i].size()) pick[i++] = 0;
        if (i == k) break;
        ++pick[i];
    }
    return double(favorable) / double(total);
}

ExhaustiveSdrReport disjoint_maximizes_exhaustive(std::uint64_t max_m) {
    ExhaustiveSdrReport rep;
    rep.holds = true;
    rep.min_margin = 1.0;

    // Non-decreasing size multisets with sum <= m, built recursively.
    std::vector<std::uint64_t> sizes;
    auto sweep_families = [&](std::uint64_t m, std::uint64_t d) {
        std::vector<std::vector<std::uint32_t>> packed(sizes.size());
        std::uint32_t next = 0;
        for (std::size_t i = 0; i < sizes.size(); ++i)
            for (std::uint64_t j = 0; j < sizes[i]; ++j) packed[i].push_back(next++);
        const double disjoint = sdr_probability_exact(packed, m, d);

        std::vector<std::vector<std::vector<std::uint32_t>>> choices(sizes.size());
        for (std::size_t i = 0; i < sizes.size(); ++i)
            choices[i] = all_subsets_of_size(m, sizes[i]);
        std::vector<std::size_t> pick(sizes.size(), 0);
        for (;;) {
            std::vector<std::vector<std::uint32_t>> family(sizes.size());
            for (std::size_t i = 0; i < sizes.size(); ++i) family[i] = choices[i][pick[i]];
            double margin = disjoint - sdr_probability_exact(family, m, d);
            rep.min_margin = std::min(rep.min_margin, margin);
            if (margin < -1e-12) rep.holds = false;
            ++rep.families_checked;

            std::size_t i = 0;
            while (i < sizes.size() && pick[i] + 1 == choices[i].size()) pick[i++] = 0;
            if (i == sizes.size()) break;
            ++pick[i];
        }
    };

    auto extend = [&](auto&& self, std::uint64_t m, std::uint64_t remaining,
                      std::uint64_t min_size) -> void {
        if (!sizes.empty())
            for (std::uint64_t d = sizes.size(); d <= m; ++d) sweep_families(m, d);
        for (std::uint64_t s = min_size; s <= remaining; ++s) {
            sizes.push_back(s);
            self(self, m, remaining - s, s);
            sizes.pop_back();
        }
    };
    for (std::uint64_t m = 1; m <= max_m; ++m) extend(extend, m, m, 1);
    return rep;
}

}  // namespace oracle
}  // namespace rig
