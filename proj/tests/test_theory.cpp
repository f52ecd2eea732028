#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "rig/errors.hpp"
#include "rig/rng.hpp"
#include "rig/set_size_law.hpp"
#include "rig/theory.hpp"

using namespace rig::theory;
using rig::SetSizeLaw;

TEST_SUITE("theory") {

TEST_CASE("slowly varying factor") {
    CHECK(slowly_varying(5.0, 0.0) == doctest::Approx(1.0));
    CHECK(slowly_varying(0.0, 2.0) == doctest::Approx(1.0));
    CHECK(slowly_varying(100.0, 1.0) == doctest::Approx(std::log(std::exp(1.0) + 100.0)));
}

TEST_CASE("regime validation rejects out-of-range parameters") {
    PowerLawRegime ok;
    CHECK_NOTHROW(ok.validate());

    PowerLawRegime bad_alpha;
    bad_alpha.alpha = 2.5;
    CHECK_THROWS_AS(bad_alpha.validate(), rig::invalid_regime_error);
    bad_alpha.alpha = 1.0;
    CHECK_THROWS_AS(bad_alpha.validate(), rig::invalid_regime_error);

    PowerLawRegime bad_beta;
    bad_beta.beta = 0.4;  // below max(2 - alpha, alpha - 1) = 0.5 at alpha 1.5
    CHECK_THROWS_AS(bad_beta.validate(), rig::invalid_regime_error);

    PowerLawRegime bad_eps;
    bad_eps.eps1 = 0.2;  // must stay below eps0
    CHECK_THROWS_AS(bad_eps.validate(), rig::invalid_regime_error);
}

TEST_CASE("first-order clique prediction in the heavy-tail regime") {
    PowerLawRegime regime;  // alpha 1.5, gamma 0
    CHECK(predicted_clique_powerlaw(1'000'000, regime) ==
          doctest::Approx(12.48158645275414).epsilon(1e-10));
    // Monotone growth in n along powers of ten.
    double prev = 0.0;
    for (std::uint64_t n : {std::uint64_t(1000), std::uint64_t(10'000), std::uint64_t(100'000)}) {
        double k = predicted_clique_powerlaw(n, regime);
        CHECK(k > prev);
        prev = k;
    }
    CHECK_THROWS_AS(predicted_clique_powerlaw(2, regime), rig::invalid_regime_error);
}

TEST_CASE("finite-variance clique prediction") {
    CHECK(predicted_clique_finite_variance(1'000'000) ==
          doctest::Approx(5.261464353591485).epsilon(1e-12));
    CHECK(predicted_clique_finite_variance(16) ==
          doctest::Approx(2.7188068070511737).epsilon(1e-12));
    CHECK_THROWS_AS(predicted_clique_finite_variance(15), rig::invalid_regime_error);
}

TEST_CASE("set-size thresholds split at the documented cutoffs") {
    PowerLawRegime regime;
    regime.eps0 = 0.2;
    regime.eps1 = 0.1;
    auto th = thresholds(10'000, 10'000, regime);
    CHECK(th.theta1 == doctest::Approx(39.81071705534972).epsilon(1e-12));
    CHECK(th.theta2 == doctest::Approx(151.74271293851464).epsilon(1e-12));
    CHECK(th.theta1 < th.theta2);
}

TEST_CASE("lambert-style root at the frozen point") {
    auto lr = lambert_root(100.0, 0.01);
    CHECK(lr.root == doctest::Approx(97.68228079890845).epsilon(1e-10));
    CHECK(lr.asymptote == doctest::Approx(99.01716441975397).epsilon(1e-12));
    CHECK(lr.root < lr.asymptote);
}

TEST_CASE("lambert-style root solves its equation across the parameter box") {
    rig::Rng rng(21);
    std::uniform_real_distribution<double> ua(-10.0, 1000.0);
    std::uniform_real_distribution<double> ub(1e-6, 1000.0);
    for (int i = 0; i < 10'000; ++i) {
        double a = ua(rng), b = ub(rng);
        auto lr = lambert_root(a, b);
        CHECK(lr.root > 0.0);
        double residual = a - std::log(lr.root) - b * lr.root * lr.root;
        CHECK(std::abs(residual) < 1e-9);
    }
}

TEST_CASE("smallest clique size whose 4-subsets reach the target") {
    CHECK(h_of_k(1) == 4);
    CHECK(h_of_k(2) == 5);
    CHECK(h_of_k(5) == 5);
    CHECK(h_of_k(6) == 6);
    CHECK(h_of_k(15) == 6);
    CHECK(h_of_k(16) == 7);

    auto choose4 = [](std::uint64_t h) {
        return h * (h - 1) * (h - 2) * (h - 3) / 24;
    };
    rig::Rng rng(22);
    for (int i = 0; i < 200; ++i) {
        std::uint64_t k = 1 + rng() % 1'000'000'000ULL;
        auto h = h_of_k(k);
        CHECK(h >= 4);
        CHECK(choose4(h) >= k);
        if (h > 4) CHECK(choose4(h - 1) < k);
    }
}

TEST_CASE("colour-budget threshold formula") {
    CHECK(t_of_kp(1, 1.0) == doctest::Approx(388.45261374132235).epsilon(1e-12));
    // Scales linearly in c and grows with k through h(k) and sqrt(2k).
    CHECK(t_of_kp(1, 1.0, 2.0) == doctest::Approx(2.0 * t_of_kp(1, 1.0)).epsilon(1e-12));
    CHECK(t_of_kp(40, 1.0) > t_of_kp(1, 1.0));
}

TEST_CASE("rainbow clique probability bound") {
    CHECK(rainbow_kk_prob_bound({1, 1}, 2) == doctest::Approx(0.5));
    CHECK(rainbow_kk_prob_bound({2, 2, 2}, 6) == doctest::Approx(64.0 / 216.0));
    CHECK(rainbow_kk_prob_bound({5, 5}, 2) == doctest::Approx(1.0));  // clamped
}

TEST_CASE("degree moment predictions from the law moments") {
    auto det = degree_moment_predictions(SetSizeLaw::deterministic(3), 10'000, 10'000);
    CHECK(det.mean == doctest::Approx(9.0));
    CHECK(det.variance == doctest::Approx(9.0));

    auto emp = degree_moment_predictions(
        SetSizeLaw::empirical({{0, 0.5}, {2, 0.5}}), 64, 64);
    CHECK(emp.mean == doctest::Approx(1.0));
    CHECK(emp.variance == doctest::Approx(2.0));
}

TEST_CASE("edge probability sandwich at the frozen point") {
    auto b = edge_prob_bounds(1, 1, 2);
    CHECK(b.lower == doctest::Approx(0.25));
    CHECK(b.upper == doctest::Approx(0.5));
}

TEST_CASE("edge probability sandwich contains the hypergeometric truth") {
    // P(two uniform subsets of sizes x1, x2 of [m] intersect) is
    // 1 - C(m - x1, x2) / C(m, x2); check the bounds exhaustively.
    for (std::uint64_t m = 1; m <= 40; ++m) {
        for (std::uint64_t x1 = 0; x1 <= m; ++x1) {
            for (std::uint64_t x2 = 0; x1 + x2 <= m; ++x2) {
                double miss = 1.0;
                for (std::uint64_t i = 0; i < x2; ++i)
                    miss *= double(m - x1 - i) / double(m - i);
                double p = 1.0 - miss;
                auto b = edge_prob_bounds(x1, x2, m);
                CHECK(p >= b.lower - 1e-12);
                CHECK(p <= b.upper + 1e-12);
            }
        }
    }
}

}  // TEST_SUITE
