#pragma once

#include <cstdint>
#include <vector>

#include "rig/set_size_law.hpp"

namespace rig {
namespace theory {

// Parameter window of the heavy-tail clique law: tail exponent alpha in
// (1, 2), attribute growth m = Omega(n^beta) with beta > max(2 - alpha,
// alpha - 1), and tail-window exponents 0 < eps1 < eps0 < 1/2.
struct PowerLawRegime {
    double alpha = 1.5;
    double beta = 1.0;
    double eps0 = 0.1;
    double eps1 = 0.02;
    double sv_gamma = 0.0;

    void validate() const;  // throws invalid_regime_error
};

// ln(e + x)^gamma, the slowly varying factor used throughout.
double slowly_varying(double x, double gamma);

// First-order clique number under the heavy-tail regime:
// (1 - alpha/2)^(-alpha/2) * L(sqrt(n ln n)) * n^(1 - alpha/2) * (ln n)^(-alpha/2).
double predicted_clique_powerlaw(std::uint64_t n, const PowerLawRegime& regime);

// First-order clique number with finite set-size variance: ln n / ln ln n.
// Requires n >= 16 so the denominator is bounded away from 0.
double predicted_clique_finite_variance(std::uint64_t n);

struct Thresholds {
    double theta1 = 0.0;  // sqrt(m) * n^(-eps1)
    double theta2 = 0.0;  // sqrt((1 - alpha/2) m ln n + m * e1)
};

// Set-size cutoffs splitting vertices into small / middle / large classes.
// e1 = max(0, ln L(sqrt(n ln n))).
Thresholds thresholds(std::uint64_t n, std::uint64_t m, const PowerLawRegime& regime);

struct LambertRoot {
    double root = 0.0;       // unique positive z with a - ln z - b z^2 = 0
    double asymptote = 0.0;  // sqrt((2a + ln 2b) / (2b))
};

// Solves a - ln z - b z^2 = 0 (strictly decreasing in z, so the root is
// unique) by bracketed Newton iteration.
LambertRoot lambert_root(double a, double b);

// Minimal h >= 4 with C(h, 4) >= k.
std::uint64_t h_of_k(std::uint64_t k);

// c * h(k)^3 / ln h(k) * p * (sqrt(2k) + 5 + 2p).
double t_of_kp(std::uint64_t k, double p, double c = 1.0);

// Union-style bound on the probability that k vertices with the given
// subset sizes span a clique with pairwise-distinct shared attributes:
// m^(-k(k-1)/2) * (x_1 ... x_k)^(k-1), clamped to [0, 1].
double rainbow_kk_prob_bound(const std::vector<std::uint64_t>& sizes, std::uint64_t m);

struct DegreeMoments {
    double mean = 0.0;      // (E Y)^2
    double variance = 0.0;  // (E Y)^2 * (Var Y + 1)
};

DegreeMoments degree_moment_predictions(const SetSizeLaw& law, std::uint64_t n, std::uint64_t m);

struct EdgeProbBounds {
    double lower = 0.0;  // max(0, x1 x2 / m - x1^2 x2^2 / m^2)
    double upper = 0.0;  // min(1, x1 x2 / m)
};

// Sandwich on P(two uniform subsets of fixed sizes x1, x2 intersect).
EdgeProbBounds edge_prob_bounds(std::uint64_t x1, std::uint64_t x2, std::uint64_t m);

}  // namespace theory
}  // namespace rig
