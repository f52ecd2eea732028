#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "rig/ballsbins.hpp"
#include "rig/errors.hpp"
#include "rig/rng.hpp"
#include "rig/set_size_law.hpp"

using rig::LoadDistribution;
using rig::Rng;
using rig::SetSizeLaw;

TEST_SUITE("ballsbins") {

TEST_CASE("max load sampling edge cases") {
    Rng rng(1);
    CHECK(rig::max_load_sample(0, 5, rng) == 0);
    for (int i = 0; i < 5; ++i) CHECK(rig::max_load_sample(17, 1, rng) == 17);
}

TEST_CASE("two balls into two bins tie at one half") {
    Rng rng(2);
    const int trials = 100'000;
    int twos = 0;
    for (int i = 0; i < trials; ++i) twos += rig::max_load_sample(2, 2, rng) == 2;
    double p = double(twos) / trials;
    CHECK(std::abs(p - 0.5) <= 3.0 * std::sqrt(0.25 / trials));
}

TEST_CASE("exact maximum load distribution on enumerable cases") {
    auto d22 = rig::max_load_exact(2, 2);
    CHECK(d22.source == "exact");
    REQUIRE(d22.pmf.size() == 2);
    CHECK(d22.pmf.at(1) == doctest::Approx(0.5));
    CHECK(d22.pmf.at(2) == doctest::Approx(0.5));

    auto d31 = rig::max_load_exact(3, 1);
    REQUIRE(d31.pmf.size() == 1);
    CHECK(d31.pmf.at(3) == doctest::Approx(1.0));

    auto d33 = rig::max_load_exact(3, 3);
    CHECK(d33.pmf.at(1) == doctest::Approx(6.0 / 27.0));
    CHECK(d33.pmf.at(2) == doctest::Approx(18.0 / 27.0));
    CHECK(d33.pmf.at(3) == doctest::Approx(3.0 / 27.0));

    // 5 balls, 3 bins: multinomial counting by hand over the partitions
    // (5), (4,1), (3,2), (3,1,1), (2,2,1) of 5.
    auto d53 = rig::max_load_exact(5, 3);
    CHECK(d53.pmf.at(2) == doctest::Approx(90.0 / 243.0));
    CHECK(d53.pmf.at(3) == doctest::Approx(120.0 / 243.0));
    CHECK(d53.pmf.at(4) == doctest::Approx(30.0 / 243.0));
    CHECK(d53.pmf.at(5) == doctest::Approx(3.0 / 243.0));
}

TEST_CASE("exact pmf normalizes and its mean grows with the ball count") {
    double prev_mean = 0.0;
    for (std::uint64_t balls = 1; balls <= 30; ++balls) {
        auto d = rig::max_load_exact(balls, 7);
        double total = 0.0, mean = 0.0;
        for (const auto& [k, p] : d.pmf) {
            total += p;
            mean += double(k) * p;
            CHECK(k <= balls);
            CHECK(k >= (balls + 6) / 7);
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(mean >= prev_mean - 1e-12);
        prev_mean = mean;
    }
}

TEST_CASE("exact distribution is guarded against huge inputs") {
    CHECK_THROWS_AS(rig::max_load_exact(201, 5), rig::size_limit_error);
    CHECK_THROWS_AS(rig::max_load_exact(5, 201), rig::size_limit_error);
}

TEST_CASE("empirical distribution converges to the exact one") {
    struct Case { std::uint64_t balls, bins; };
    for (auto [balls, bins] : {Case{5, 3}, Case{8, 4}, Case{10, 10}}) {
        Rng rng(900 + balls);
        auto emp = rig::empirical_load_distribution(balls, bins, 100'000, rng);
        auto exact = rig::max_load_exact(balls, bins);
        CHECK(emp.source == "empirical");
        CHECK(emp.trials.has_value());
        CHECK(rig::tv_distance(emp, exact) <= 0.01);
    }
}

TEST_CASE("total variation distance arithmetic") {
    LoadDistribution a{"exact", std::nullopt, {{0, 0.5}, {1, 0.5}}};
    LoadDistribution b{"exact", std::nullopt, {{0, 0.75}, {1, 0.25}}};
    LoadDistribution c{"exact", std::nullopt, {{0, 1.0}}};
    LoadDistribution d{"exact", std::nullopt, {{1, 1.0}}};
    CHECK(rig::tv_distance(a, a) == doctest::Approx(0.0));
    CHECK(rig::tv_distance(c, d) == doctest::Approx(1.0));
    CHECK(rig::tv_distance(a, b) == doctest::Approx(0.25));
}

TEST_CASE("coupled throws never let the trimmed maximum exceed the full one") {
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        auto s = rig::coupled_throw(300, 20, 0.05, rng);
        CHECK(s.max_after <= s.max_before);
    }
}

TEST_CASE("coupling with a single bin shifts by exactly the deleted count") {
    Rng rng(6);
    auto s = rig::coupled_throw(100, 1, 0.13, rng);
    CHECK(s.max_before == 113);
    CHECK(s.max_after == 100);
}

TEST_CASE("coupling experiment with nothing deleted is an exact tie") {
    Rng rng(7);
    auto rep = rig::coupling_experiment(10, 3, 0.01, 200, rng);
    CHECK(rep.p_equal == doctest::Approx(1.0));
    CHECK(rep.min_gap == 0);
}

TEST_CASE("coupling experiment reports sane aggregate fields") {
    Rng rng(8);
    auto rep = rig::coupling_experiment(1000, 50, 0.05, 300, rng);
    CHECK(rep.trials == 300);
    CHECK(rep.min_gap >= 0);
    CHECK(rep.p_equal >= 0.0);
    CHECK(rep.p_equal <= 1.0);
    CHECK(rep.p_within_delta >= rep.p_equal);
    CHECK(rep.mean_m_prime > 0.0);
    CHECK(rep.delta == doctest::Approx(1.0 / std::log(1002.0)));
}

TEST_CASE("occupancy comparison is degenerate for empty subsets") {
    auto rep = rig::omega_prime_vs_maxload(64, 64, SetSizeLaw::deterministic(0), 50, 11);
    CHECK(rep.matched_balls == 0);
    CHECK(rep.tv == doctest::Approx(0.0));
    CHECK(rep.omega_prime.pmf.at(0) == doctest::Approx(1.0));
    CHECK(rep.max_load.pmf.at(0) == doctest::Approx(1.0));
}

TEST_CASE("occupancy comparison stays close at small size") {
    auto rep = rig::omega_prime_vs_maxload(256, 256, SetSizeLaw::deterministic(3), 400, 12);
    CHECK(rep.matched_balls == 768);  // floor(sqrt(256 * 256) * 3)
    CHECK(rep.tv <= 0.35);            // loose sanity bound at this tiny n
    CHECK(rep.omega_prime.source == "empirical");
}

TEST_CASE("load distributions round trip through JSON") {
    auto exact = rig::max_load_exact(5, 3);
    auto back = LoadDistribution::from_json(exact.to_json());
    CHECK(back.source == exact.source);
    CHECK(!back.trials.has_value());
    REQUIRE(back.pmf.size() == exact.pmf.size());
    for (const auto& [k, p] : exact.pmf) CHECK(back.pmf.at(k) == doctest::Approx(p));

    Rng rng(13);
    auto emp = rig::empirical_load_distribution(6, 3, 500, rng);
    auto eb = LoadDistribution::from_json(emp.to_json());
    CHECK(eb.source == "empirical");
    REQUIRE(eb.trials.has_value());
    CHECK(*eb.trials == 500);
}

}  // TEST_SUITE
