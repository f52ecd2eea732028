#include "rig/ballsbins.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rig/errors.hpp"
#include "rig/instance.hpp"

namespace rig {

namespace {

struct KahanSum {
    double sum = 0.0, c = 0.0;
    void add(double v) {
        double y = v - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

}  // namespace

nlohmann::json LoadDistribution::to_json() const {
    nlohmann::json pmf_obj = nlohmann::json::object();
    for (const auto& [load, prob] : pmf) pmf_obj[std::to_string(load)] = prob;
    nlohmann::json j{{"source", source}, {"pmf", pmf_obj}};
    if (trials) j["trials"] = *trials;
    return j;
}

LoadDistribution LoadDistribution::from_json(const nlohmann::json& j) {
    try {
        LoadDistribution d;
        d.source = j.at("source").get<std::string>();
        if (d.source != "exact" && d.source != "empirical")
            throw format_error("load distribution: unknown source '" + d.source + "'");
        if (j.contains("trials")) d.trials = j.at("trials").get<std::uint64_t>();
        for (const auto& [key, value] : j.at("pmf").items())
            d.pmf[std::stoull(key)] = value.get<double>();
        return d;
    } catch (const nlohmann::json::exception& e) {
        throw format_error(std::string("load distribution: ") + e.what());
    }
}

std::uint64_t max_load_sample(std::uint64_t balls, std::uint64_t bins, Rng& rng) {
    if (bins == 0) {
        if (balls == 0) return 0;
        throw size_limit_error("max_load_sample: no bins");
    }
    std::vector<std::uint32_t> count(bins, 0);
    std::uint32_t best = 0;
    for (std::uint64_t i = 0; i < balls; ++i) {
        std::uint32_t c = ++count[uniform_below(rng, bins)];
        best = std::max(best, c);
    }
    return best;
}

LoadDistribution empirical_load_distribution(std::uint64_t balls, std::uint64_t bins,
                                             std::uint64_t trials, Rng& rng) {
    std::map<std::uint64_t, std::uint64_t> hist;
    for (std::uint64_t t = 0; t < trials; ++t) ++hist[max_load_sample(balls, bins, rng)];
    LoadDistribution d;
    d.source = "empirical";
    d.trials = trials;
    for (const auto& [load, count] : hist) d.pmf[load] = double(count) / double(trials);
    return d;
}

namespace {

// P(max load <= k) for `balls` labeled balls in `bins` bins, exactly.
// Convolves bins one at a time over s_j(t) = (ways to place t chosen balls
// into the first j bins, each <= k) / bins^t. Every s_j(t) lies in [0, 1],
// so nothing overflows; binomial weights are accumulated incrementally.
double prob_max_le(std::uint64_t balls, std::uint64_t bins, std::uint64_t k) {
    const std::size_t n = std::size_t(balls);
    std::vector<double> prev(n + 1, 0.0), cur(n + 1, 0.0);
    prev[0] = 1.0;
    for (std::uint64_t j = 1; j <= bins; ++j) {
        for (std::size_t t = 0; t <= n; ++t) {
            KahanSum s;
            double w = 1.0;  // C(t, i) / bins^i, updated as i grows
            for (std::size_t i = 0; i <= std::min<std::size_t>(k, t); ++i) {
                s.add(w * prev[t - i]);
                w *= double(t - i) / (double(i + 1) * double(bins));
            }
            cur[t] = s.sum;
        }
        std::swap(prev, cur);
    }
    return std::clamp(prev[n], 0.0, 1.0);
}

}  // namespace

LoadDistribution max_load_exact(std::uint64_t balls, std::uint64_t bins) {
    if (balls > 200 || bins > 200)
        throw size_limit_error("max_load_exact: guarded to balls, bins <= 200");
    LoadDistribution d;
    d.source = "exact";
    if (balls == 0) {
        d.pmf[0] = 1.0;
        return d;
    }
    if (bins == 0) throw size_limit_error("max_load_exact: no bins");

    const std::uint64_t lo = (balls + bins - 1) / bins;
    double below = 0.0;  // P(M <= k - 1)
    for (std::uint64_t k = lo; k <= balls; ++k) {
        double at_most = k == balls ? 1.0 : prob_max_le(balls, bins, k);
        double p = at_most - below;
        if (p > 0.0) d.pmf[k] = p;
        below = at_most;
        if (1.0 - at_most < 1e-12) break;  // remaining tail is negligible
    }
    return d;
}

double tv_distance(const LoadDistribution& a, const LoadDistribution& b) {
    double sum = 0.0;
    auto ia = a.pmf.begin();
    auto ib = b.pmf.begin();
    while (ia != a.pmf.end() || ib != b.pmf.end()) {
        if (ib == b.pmf.end() || (ia != a.pmf.end() && ia->first < ib->first))
            sum += std::abs(ia++->second);
        else if (ia == a.pmf.end() || ib->first < ia->first)
            sum += std::abs(ib++->second);
        else
            sum += std::abs(ia++->second - ib++->second);
    }
    return 0.5 * sum;
}

CoupledThrow coupled_throw(std::uint64_t balls, std::uint64_t bins, double eps, Rng& rng) {
    if (!(eps >= 0.0)) throw size_limit_error("coupled_throw: eps must be nonnegative");
    if (bins == 0) throw size_limit_error("coupled_throw: no bins");
    // floor(balls * (1 + eps)) == balls + floor(eps * balls) for integer balls;
    // computing the sum directly keeps exactly `balls` balls after deletion
    // where the product form can lose one to floating point rounding.
    const std::uint64_t deleted = std::uint64_t(std::floor(eps * double(balls)));
    const std::uint64_t thrown = balls + deleted;

    std::vector<std::uint32_t> bin_of(thrown);
    std::vector<std::uint32_t> count(bins, 0);
    CoupledThrow out;
    std::uint32_t m_prime = 0;
    for (std::uint64_t i = 0; i < thrown; ++i) {
        std::uint32_t b = std::uint32_t(uniform_below(rng, bins));
        bin_of[i] = b;
        m_prime = std::max(m_prime, ++count[b]);
    }
    for (std::uint32_t ball : sample_uniform_subset(deleted, thrown, rng))
        --count[bin_of[ball]];
    out.max_before = m_prime;
    out.max_after = thrown == 0 ? 0 : *std::max_element(count.begin(), count.end());
    return out;
}

CouplingReport coupling_experiment(std::uint64_t balls, std::uint64_t bins, double eps,
                                   std::uint64_t trials, Rng& rng, std::optional<double> delta) {
    CouplingReport rep;
    rep.trials = trials;
    rep.delta = delta.value_or(1.0 / std::log(double(balls) + 2.0));

    std::vector<std::pair<std::uint64_t, std::uint64_t>> outcomes;  // (M, M')
    outcomes.reserve(trials);
    double sum_m_prime = 0.0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        CoupledThrow ct = coupled_throw(balls, bins, eps, rng);
        outcomes.emplace_back(ct.max_after, ct.max_before);
        sum_m_prime += double(ct.max_before);
    }
    rep.mean_m_prime = trials ? sum_m_prime / double(trials) : 0.0;

    std::uint64_t equal = 0, within = 0;
    rep.min_gap = outcomes.empty() ? 0 : std::numeric_limits<std::int64_t>::max();
    for (auto [m, m_prime] : outcomes) {
        std::int64_t gap = std::int64_t(m_prime) - std::int64_t(m);
        rep.min_gap = std::min(rep.min_gap, gap);
        if (gap == 0) ++equal;
        if (double(gap) <= rep.delta * rep.mean_m_prime) ++within;
    }
    if (trials) {
        rep.p_equal = double(equal) / double(trials);
        rep.p_within_delta = double(within) / double(trials);
    }
    return rep;
}

OmegaMaxloadReport omega_prime_vs_maxload(std::uint64_t n, std::uint64_t m, const SetSizeLaw& law,
                                          std::uint64_t trials, std::uint64_t seed) {
    OmegaMaxloadReport rep;
    MomentsY mo = law.moments_y(n, m);
    rep.matched_balls = std::uint64_t(std::floor(std::sqrt(double(m) * double(n)) * mo.mean_y));

    // Largest attribute occupancy per sampled instance. Only the occupancy
    // counters are kept; the subsets themselves are not needed here.
    std::map<std::uint64_t, std::uint64_t> omega_hist;
    std::vector<std::uint32_t> occupancy(m);
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, "omega-prime", 0, t));
        std::fill(occupancy.begin(), occupancy.end(), 0);
        std::uint32_t top = 0;
        for (std::uint64_t v = 0; v < n; ++v) {
            std::uint64_t k = law.sample_size(n, m, rng);
            for (std::uint32_t w : sample_uniform_subset(k, m, rng))
                top = std::max(top, ++occupancy[w]);
        }
        ++omega_hist[top];
    }
    rep.omega_prime.source = "empirical";
    rep.omega_prime.trials = trials;
    for (const auto& [load, count] : omega_hist)
        rep.omega_prime.pmf[load] = double(count) / double(trials);

    Rng rng(derive_seed(seed, "max-load", 0, 0));
    rep.max_load = empirical_load_distribution(rep.matched_balls, m, trials, rng);
    rep.tv = tv_distance(rep.omega_prime, rep.max_load);
    return rep;
}

}  // namespace rig
