#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rig/rng.hpp"

namespace rig {

// Moments of the normalized set size Y = sqrt(n/m) * X, computed under the
// quantized law that sample_size actually draws from.
struct MomentsY {
    double mean_y = 0.0;
    double var_y = 0.0;
    double mean_y2 = 0.0;
};

enum class LawKind { PowerLawTail, Binomial, Deterministic, Empirical };

// Distribution of the attribute-set size X of one vertex. The law is
// specified on the normalized scale Y = sqrt(n/m) * X where convenient
// (PowerLawTail) and on the raw count scale otherwise. Immutable after
// construction.
class SetSizeLaw {
  public:
    // P(Y >= y) = sv(y) / sv(y_min) * (y / y_min)^-alpha for y >= y_min,
    // with sv(x) = ln(e + x)^sv_gamma. Sampled by inverting the tail and
    // rounding sqrt(m/n) * Y to the nearest integer, ties up, capped at m.
    static SetSizeLaw power_law_tail(double alpha, double y_min, double sv_gamma = 0.0);

    // X ~ Binomial(m, p).
    static SetSizeLaw binomial(double p);

    // X = min(x_fixed, m).
    static SetSizeLaw deterministic(std::uint64_t x_fixed);

    // X drawn from an explicit pmf over raw sizes; sizes above m collapse
    // to m. Probabilities must sum to 1 within 1e-9 (renormalized exactly).
    static SetSizeLaw empirical(std::vector<std::pair<std::uint64_t, double>> pmf);

    LawKind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    double y_min() const { return y_min_; }
    double sv_gamma() const { return sv_gamma_; }
    double p() const { return p_; }
    std::uint64_t x_fixed() const { return x_fixed_; }
    const std::vector<std::pair<std::uint64_t, double>>& pmf() const { return pmf_; }

    // One draw of X for a vertex of an (n, m) instance. Always in [0, m].
    std::uint64_t sample_size(std::uint64_t n, std::uint64_t m, Rng& rng) const;

    // Exact moments of Y under the quantized law. Closed form except for
    // PowerLawTail, which sums its quantized support.
    MomentsY moments_y(std::uint64_t n, std::uint64_t m) const;

    // Exact P(Y >= t) under the quantized law.
    double tail_prob_y(std::uint64_t n, std::uint64_t m, double t) const;

    nlohmann::json to_json() const;
    static SetSizeLaw from_json(const nlohmann::json& j);

  private:
    SetSizeLaw() = default;

    // P(X >= x) for integer x under the quantized law on [0, m].
    double tail_x(std::int64_t x, std::uint64_t n, std::uint64_t m) const;

    double continuous_tail(double y) const;   // PowerLawTail, P(Y >= y)
    double invert_tail(double u) const;       // PowerLawTail, G(y) = u

    LawKind kind_ = LawKind::Deterministic;
    double alpha_ = 0.0;
    double y_min_ = 0.0;
    double sv_gamma_ = 0.0;
    double p_ = 0.0;
    std::uint64_t x_fixed_ = 0;
    std::vector<std::pair<std::uint64_t, double>> pmf_;

    // Walker alias table for Empirical.
    std::vector<double> alias_prob_;
    std::vector<std::uint32_t> alias_idx_;
};

}  // namespace rig
