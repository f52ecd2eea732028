#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <vector>

#include "helpers.hpp"
#include "rig/errors.hpp"
#include "rig/instance.hpp"
#include "rig/rng.hpp"
#include "rig/set_size_law.hpp"

using rig::Instance;
using rig::Rng;
using rig::SetSizeLaw;

TEST_SUITE("instance") {

TEST_CASE("deterministic extremes force full or empty subsets") {
    auto full = rig::generate(5, 4, SetSizeLaw::deterministic(4), 1);
    for (const auto& s : full.subsets) CHECK(s == std::vector<std::uint32_t>{0, 1, 2, 3});

    auto empty = rig::generate(5, 4, SetSizeLaw::deterministic(0), 1);
    for (const auto& s : empty.subsets) CHECK(s.empty());
}

TEST_CASE("subsets are sorted, in range, and of the sampled size") {
    auto inst = rig::generate(10'000, 10'000, SetSizeLaw::deterministic(3), 99);
    std::uint64_t total = 0;
    for (const auto& s : inst.subsets) {
        REQUIRE(s.size() == 3);
        CHECK(s[0] < s[1]);
        CHECK(s[1] < s[2]);
        CHECK(s[2] < inst.m);
        total += s.size();
    }
    // Double counting: occupancies sum to the same total, so the mean
    // occupancy over attributes is exactly 3 here.
    auto idx = rig::invert(inst);
    std::uint64_t occ = 0;
    for (const auto& t : idx.occupants) occ += t.size();
    CHECK(occ == total);
    CHECK(double(occ) / double(inst.m) == doctest::Approx(3.0));
}

TEST_CASE("binomial instance hits the mp mean") {
    auto inst = rig::generate_binomial(10'000, 10'000, 0.01, 7);
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& s : inst.subsets) {
        sum += double(s.size());
        sum_sq += double(s.size()) * double(s.size());
    }
    double mean = sum / double(inst.n);
    double var = sum_sq / double(inst.n) - mean * mean;
    double se = std::sqrt(var / double(inst.n));
    CHECK(std::abs(mean - 100.0) <= 3.0 * se);

    CHECK(rig::generate_binomial(4, 6, 0.0, 1).subsets == std::vector<std::vector<std::uint32_t>>(4));
    for (const auto& s : rig::generate_binomial(4, 6, 1.0, 1).subsets)
        CHECK(s == std::vector<std::uint32_t>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("invert is the exact inverse view") {
    auto inst = testfix::instance_from_subsets(2, {{0}, {0}, {1}});
    auto idx = rig::invert(inst);
    REQUIRE(idx.occupants.size() == 2);
    CHECK(idx.occupants[0] == std::vector<std::uint32_t>{0, 1});
    CHECK(idx.occupants[1] == std::vector<std::uint32_t>{2});

    auto empty = testfix::instance_from_subsets(3, {{}, {}});
    for (const auto& t : rig::invert(empty).occupants) CHECK(t.empty());

    // Membership equivalence on a random instance.
    auto rnd = rig::generate(60, 40, SetSizeLaw::binomial(0.1), 3);
    auto ridx = rig::invert(rnd);
    for (std::uint32_t v = 0; v < rnd.n; ++v)
        for (auto w : rnd.subsets[v]) {
            const auto& t = ridx.occupants[w];
            CHECK(std::binary_search(t.begin(), t.end(), v));
        }
    std::uint64_t s_total = 0, t_total = 0;
    for (const auto& s : rnd.subsets) s_total += s.size();
    for (const auto& t : ridx.occupants) t_total += t.size();
    CHECK(s_total == t_total);
}

TEST_CASE("uniform subset sampling is exact and unbiased") {
    Rng rng(2);
    CHECK(rig::sample_uniform_subset(5, 5, rng) == std::vector<std::uint32_t>{0, 1, 2, 3, 4});
    CHECK(rig::sample_uniform_subset(0, 5, rng).empty());

    // All C(5,2) = 10 pairs occur with frequency 0.1.
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> freq;
    const int draws = 100'000;
    for (int i = 0; i < draws; ++i) {
        auto s = rig::sample_uniform_subset(2, 5, rng);
        REQUIRE(s.size() == 2);
        REQUIRE(s[0] < s[1]);
        ++freq[{s[0], s[1]}];
    }
    CHECK(freq.size() == 10);
    for (const auto& [pair, count] : freq)
        CHECK(double(count) / draws == doctest::Approx(0.1).epsilon(0.04));
}

TEST_CASE("generation is reproducible from the seed") {
    auto law = SetSizeLaw::power_law_tail(1.5, 1.0);
    auto a = rig::generate(500, 700, law, 424242);
    auto b = rig::generate(500, 700, law, 424242);
    CHECK(a.subsets == b.subsets);
    auto c = rig::generate(500, 700, law, 424243);
    CHECK(a.subsets != c.subsets);
}

TEST_CASE("instances round trip through the text format") {
    auto inst = rig::generate(40, 25, SetSizeLaw::binomial(0.15), 11);
    std::stringstream buf;
    rig::write_instance(inst, buf);
    auto back = rig::read_instance(buf);
    CHECK(back.n == inst.n);
    CHECK(back.m == inst.m);
    CHECK(back.seed == inst.seed);
    CHECK(back.subsets == inst.subsets);

    // Writing the reread instance reproduces the bytes exactly.
    std::stringstream again;
    rig::write_instance(back, again);
    CHECK(again.str() == buf.str());
}

TEST_CASE("malformed instance text is rejected") {
    std::stringstream empty("");
    CHECK_THROWS_AS(rig::read_instance(empty), rig::format_error);
    std::stringstream garbage("not numbers at all");
    CHECK_THROWS_AS(rig::read_instance(garbage), rig::format_error);
    std::stringstream truncated("3 5 0\n0 1\n");
    CHECK_THROWS_AS(rig::read_instance(truncated), rig::format_error);
}

}  // TEST_SUITE
