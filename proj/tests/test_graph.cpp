#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <sstream>
#include <vector>

#include "helpers.hpp"
#include "rig/errors.hpp"
#include "rig/graph.hpp"
#include "rig/instance.hpp"
#include "rig/rng.hpp"
#include "rig/set_size_law.hpp"
#include "rig/theory.hpp"

using rig::Rng;
using rig::SetSizeLaw;

namespace {

void check_well_formed(const rig::SparseGraph& g) {
    std::uint64_t directed = 0;
    for (std::uint32_t v = 0; v < g.order(); ++v) {
        const auto& nb = g.adj[v];
        for (std::size_t i = 0; i + 1 < nb.size(); ++i) REQUIRE(nb[i] < nb[i + 1]);
        for (auto u : nb) {
            REQUIRE(u != v);
            REQUIRE(g.has_edge(u, v));
        }
        directed += nb.size();
    }
    REQUIRE(directed == 2 * g.edge_count);
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("tiny instances build the expected graphs") {
    auto disjoint = testfix::instance_from_subsets(2, {{0}, {1}, {}});
    CHECK(rig::build_graph(disjoint).edge_count == 0);

    auto pair = testfix::instance_from_subsets(1, {{0}, {0}});
    auto g = rig::build_graph(pair);
    CHECK(g.edge_count == 1);
    CHECK(g.has_edge(0, 1));
}

TEST_CASE("the cover instance builds K4") {
    auto g = rig::build_graph(testfix::cover_instance());
    CHECK(g.order() == 4);
    CHECK(g.edge_count == 6);
    for (std::uint32_t u = 0; u < 4; ++u)
        for (std::uint32_t v = u + 1; v < 4; ++v) CHECK(g.has_edge(u, v));
    check_well_formed(g);
}

TEST_CASE("build_graph matches the naive all-pairs oracle") {
    Rng seeds(31);
    const SetSizeLaw laws[] = {
        SetSizeLaw::binomial(0.12),
        SetSizeLaw::empirical({{0, 0.2}, {1, 0.3}, {2, 0.3}, {4, 0.2}}),
        SetSizeLaw::power_law_tail(1.5, 1.0),
    };
    for (int rep = 0; rep < 30; ++rep) {
        std::uint64_t n = 2 + seeds() % 49;
        std::uint64_t m = 3 + seeds() % 58;
        const auto& law = laws[rep % 3];
        auto inst = rig::generate(n, m, law, seeds());
        auto g = rig::build_graph(inst);
        auto oracle = testfix::naive_intersection_graph(inst);
        CHECK(g.adj == oracle.adj);
        CHECK(g.edge_count == oracle.edge_count);
        check_well_formed(g);
    }
}

TEST_CASE("build_graph enforces the occupancy pair budget") {
    // Every vertex holds every attribute: sum_w |T_w| (|T_w| - 1) is
    // 50 * 100 * 99, far above the tiny budget.
    auto dense = rig::generate(100, 50, SetSizeLaw::deterministic(50), 1);
    CHECK_THROWS_AS(rig::build_graph(dense, 1000), rig::resource_limit_error);
    CHECK_NOTHROW(rig::build_graph(dense));
}

TEST_CASE("degree statistics on degenerate graphs") {
    rig::SparseGraph empty;
    empty.adj.assign(5, {});
    auto se = rig::degree_stats(empty);
    CHECK(se.mean == 0.0);
    CHECK(se.variance == 0.0);
    CHECK(se.max == 0);

    auto sk = rig::degree_stats(testfix::complete_graph(6));
    CHECK(sk.mean == doctest::Approx(5.0));
    CHECK(sk.variance == doctest::Approx(0.0));
    CHECK(sk.max == 5);
}

TEST_CASE("mean degree tracks the moment identity at moderate size") {
    // E D = (n - 1) P(edge) which the identity approximates by (E Y)^2 = 9.
    auto law = SetSizeLaw::deterministic(3);
    double grand = 0.0;
    const int trials = 20;
    for (int t = 0; t < trials; ++t) {
        auto inst = rig::generate(10'000, 10'000, law, 900 + t);
        grand += rig::degree_stats(rig::build_graph(inst)).mean;
    }
    grand /= trials;
    CHECK(grand == doctest::Approx(9.0).epsilon(0.05));
}

TEST_CASE("clustering prediction and empirical value on forced fixtures") {
    // One shared attribute: any two neighbors of a vertex are adjacent.
    auto tri = testfix::instance_from_subsets(1, {{0}, {0}, {0}});
    auto gt = rig::build_graph(tri);
    auto ct = rig::clustering(tri, gt, SetSizeLaw::deterministic(1));
    REQUIRE(ct.empirical.has_value());
    CHECK(*ct.empirical == doctest::Approx(1.0));
    CHECK(ct.predicted == doctest::Approx(1.0));

    // x = 3 with n = m predicts sqrt(n/m) * E Y / E Y^2 = 1/3.
    auto inst3 = rig::generate(500, 500, SetSizeLaw::deterministic(3), 4);
    auto c3 = rig::clustering(inst3, rig::build_graph(inst3), SetSizeLaw::deterministic(3));
    CHECK(c3.predicted == doctest::Approx(1.0 / 3.0));

    // A triangle-free graph with 2-paths reports empirical zero.
    auto cyc = testfix::four_cycle_instance();
    auto cc = rig::clustering(cyc, rig::build_graph(cyc), SetSizeLaw::deterministic(2));
    REQUIRE(cc.empirical.has_value());
    CHECK(*cc.empirical == 0.0);

    // A single edge has no 2-path, so the empirical value is absent.
    auto edge = testfix::instance_from_subsets(1, {{0}, {0}});
    auto ce = rig::clustering(edge, rig::build_graph(edge), SetSizeLaw::deterministic(1));
    CHECK(!ce.empirical.has_value());
}

TEST_CASE("attribute pair multiplicity counts shared pairs") {
    auto all = testfix::instance_from_subsets(2, {{0, 1}, {0, 1}, {0, 1}});
    CHECK(rig::attribute_pair_multiplicity(all) == 3);

    auto singletons = testfix::instance_from_subsets(3, {{0}, {1}, {}});
    CHECK(rig::attribute_pair_multiplicity(singletons) == 0);

    CHECK(rig::attribute_pair_multiplicity(testfix::cover_instance()) == 2);
}

TEST_CASE("pair multiplicity stays at most 2 on most sparse instances") {
    auto law = SetSizeLaw::deterministic(3);
    int within = 0;
    const int trials = 40;
    for (int t = 0; t < trials; ++t) {
        auto inst = rig::generate(2000, 2000, law, 7000 + t);
        if (rig::attribute_pair_multiplicity(inst) <= 2) ++within;
    }
    CHECK(within >= trials * 9 / 10);
}

TEST_CASE("edge list export is ordered with u < v") {
    std::ostringstream out;
    rig::write_edge_list(rig::build_graph(testfix::cover_instance()), out);
    CHECK(out.str() == "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
}

TEST_CASE("empirical edge probability respects the sandwich bounds") {
    const std::uint64_t x1 = 3, x2 = 4, m = 20;
    auto bounds = rig::theory::edge_prob_bounds(x1, x2, m);
    Rng rng(77);
    const int trials = 100'000;
    int hits = 0;
    for (int t = 0; t < trials; ++t) {
        auto a = rig::sample_uniform_subset(x1, m, rng);
        auto b = rig::sample_uniform_subset(x2, m, rng);
        std::size_t i = 0, j = 0;
        bool meet = false;
        while (i < a.size() && j < b.size()) {
            if (a[i] == b[j]) { meet = true; break; }
            if (a[i] < b[j]) ++i; else ++j;
        }
        hits += meet;
    }
    double p = double(hits) / trials;
    double sigma = std::sqrt(p * (1.0 - p) / trials);
    CHECK(p >= bounds.lower - 3.0 * sigma);
    CHECK(p <= bounds.upper + 3.0 * sigma);
}

}  // TEST_SUITE
