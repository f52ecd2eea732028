#include "rig/set_size_law.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rig/errors.hpp"

namespace rig {

namespace {

double slowly_varying(double x, double gamma) {
    return gamma == 0.0 ? 1.0 : std::pow(std::log(std::numbers::e + x), gamma);
}

struct KahanSum {
    double sum = 0.0, c = 0.0;
    void add(double v) {
        double y = v - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

// P(Binomial(m, p) >= x0), summing the cheaper side of the pmf.
double binomial_tail(std::uint64_t m, double p, std::uint64_t x0) {
    if (x0 == 0) return 1.0;
    if (x0 > m) return 0.0;
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return 1.0;
    const double lp = std::log(p), lq = std::log1p(-p);
    const double lgm = std::lgamma(double(m) + 1.0);
    auto log_pmf = [&](std::uint64_t i) {
        return lgm - std::lgamma(double(i) + 1.0) - std::lgamma(double(m - i) + 1.0) +
               double(i) * lp + double(m - i) * lq;
    };
    KahanSum s;
    if (double(x0) <= double(m) * p) {
        for (std::uint64_t i = 0; i < x0; ++i) s.add(std::exp(log_pmf(i)));
        return std::clamp(1.0 - s.sum, 0.0, 1.0);
    }
    for (std::uint64_t i = m + 1; i-- > x0;) s.add(std::exp(log_pmf(i)));
    return std::clamp(s.sum, 0.0, 1.0);
}

}  // namespace

SetSizeLaw SetSizeLaw::power_law_tail(double alpha, double y_min, double sv_gamma) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw invalid_law_error("power_law_tail: alpha must be positive");
    if (!(y_min > 0.0) || !std::isfinite(y_min))
        throw invalid_law_error("power_law_tail: y_min must be positive");
    if (!std::isfinite(sv_gamma))
        throw invalid_law_error("power_law_tail: sv_gamma must be finite");
    if (sv_gamma > 2.0 * alpha) {
        // The stated tail is a valid c.d.f. only while it is non-increasing.
        // d/dy ln tail > 0 iff q(y) = sv_gamma*y - alpha*(e+y)*ln(e+y) > 0;
        // q is concave with its maximum at exp(sv_gamma/alpha - 1) - e, so one
        // evaluation at the clamped maximizer decides monotonicity.
        const double e = std::numbers::e;
        double peak = std::exp(sv_gamma / alpha - 1.0) - e;
        double y = std::max(y_min, peak);
        if (sv_gamma * y - alpha * (e + y) * std::log(e + y) > 0.0)
            throw invalid_law_error("power_law_tail: tail increases somewhere above y_min");
    }
    SetSizeLaw law;
    law.kind_ = LawKind::PowerLawTail;
    law.alpha_ = alpha;
    law.y_min_ = y_min;
    law.sv_gamma_ = sv_gamma;
    return law;
}

SetSizeLaw SetSizeLaw::binomial(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw invalid_law_error("binomial: p must lie in [0, 1]");
    SetSizeLaw law;
    law.kind_ = LawKind::Binomial;
    law.p_ = p;
    return law;
}

SetSizeLaw SetSizeLaw::deterministic(std::uint64_t x_fixed) {
    SetSizeLaw law;
    law.kind_ = LawKind::Deterministic;
    law.x_fixed_ = x_fixed;
    return law;
}

SetSizeLaw SetSizeLaw::empirical(std::vector<std::pair<std::uint64_t, double>> pmf) {
    if (pmf.empty()) throw invalid_law_error("empirical: pmf must be nonempty");
    double total = 0.0;
    for (auto& [size, prob] : pmf) {
        if (!(prob >= 0.0) || !std::isfinite(prob))
            throw invalid_law_error("empirical: probabilities must be nonnegative");
        total += prob;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw invalid_law_error("empirical: probabilities must sum to 1");
    for (auto& [size, prob] : pmf) prob /= total;

    SetSizeLaw law;
    law.kind_ = LawKind::Empirical;
    law.pmf_ = std::move(pmf);

    // Vose alias construction.
    const std::size_t k = law.pmf_.size();
    law.alias_prob_.assign(k, 0.0);
    law.alias_idx_.assign(k, 0);
    std::vector<double> scaled(k);
    std::vector<std::uint32_t> small, large;
    for (std::size_t i = 0; i < k; ++i) {
        scaled[i] = law.pmf_[i].second * double(k);
        (scaled[i] < 1.0 ? small : large).push_back(std::uint32_t(i));
    }
    while (!small.empty() && !large.empty()) {
        std::uint32_t s = small.back(), l = large.back();
        small.pop_back();
        law.alias_prob_[s] = scaled[s];
        law.alias_idx_[s] = l;
        scaled[l] -= 1.0 - scaled[s];
        if (scaled[l] < 1.0) {
            large.pop_back();
            small.push_back(l);
        }
    }
    for (std::uint32_t i : large) law.alias_prob_[i] = 1.0;
    for (std::uint32_t i : small) law.alias_prob_[i] = 1.0;
    return law;
}

double SetSizeLaw::continuous_tail(double y) const {
    if (y <= y_min_) return 1.0;
    double t = slowly_varying(y, sv_gamma_) / slowly_varying(y_min_, sv_gamma_) *
               std::pow(y / y_min_, -alpha_);
    return std::min(1.0, t);
}

double SetSizeLaw::invert_tail(double u) const {
    // Solve continuous_tail(y) = u for u in (0, 1]; the tail is strictly
    // decreasing above y_min (enforced at construction).
    if (u >= 1.0) return y_min_;
    if (sv_gamma_ == 0.0) return y_min_ * std::pow(u, -1.0 / alpha_);
    double lo = y_min_, hi = y_min_;
    do {
        hi *= 2.0;
    } while (continuous_tail(hi) > u);
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        (continuous_tail(mid) > u ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::uint64_t SetSizeLaw::sample_size(std::uint64_t n, std::uint64_t m, Rng& rng) const {
    switch (kind_) {
        case LawKind::PowerLawTail: {
            double u = 1.0 - std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            double y = invert_tail(u);
            double x = std::floor(std::sqrt(double(m) / double(n)) * y + 0.5);
            if (x >= double(m)) return m;
            return x <= 0.0 ? 0 : std::uint64_t(x);
        }
        case LawKind::Binomial:
            return std::uint64_t(
                std::binomial_distribution<std::int64_t>(std::int64_t(m), p_)(rng));
        case LawKind::Deterministic:
            return std::min(x_fixed_, m);
        case LawKind::Empirical: {
            std::size_t i = std::size_t(uniform_below(rng, alias_idx_.size()));
            double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            if (u >= alias_prob_[i]) i = alias_idx_[i];
            return std::min(pmf_[i].first, m);
        }
    }
    return 0;
}

double SetSizeLaw::tail_x(std::int64_t x, std::uint64_t n, std::uint64_t m) const {
    if (x <= 0) return 1.0;
    if (std::uint64_t(x) > m) return 0.0;
    switch (kind_) {
        case LawKind::PowerLawTail: {
            double s = std::sqrt(double(m) / double(n));
            return continuous_tail((double(x) - 0.5) / s);
        }
        case LawKind::Binomial:
            return binomial_tail(m, p_, std::uint64_t(x));
        case LawKind::Deterministic:
            return std::min(x_fixed_, m) >= std::uint64_t(x) ? 1.0 : 0.0;
        case LawKind::Empirical: {
            KahanSum s;
            for (const auto& [size, prob] : pmf_)
                if (std::min(size, m) >= std::uint64_t(x)) s.add(prob);
            return std::min(1.0, s.sum);
        }
    }
    return 0.0;
}

MomentsY SetSizeLaw::moments_y(std::uint64_t n, std::uint64_t m) const {
    const double c = std::sqrt(double(n) / double(m));  // Y = c * X
    double ex = 0.0, ex2 = 0.0;
    switch (kind_) {
        case LawKind::PowerLawTail: {
            // E X = sum_{x>=1} P(X >= x) and E X^2 = sum_{x>=1} (2x-1) P(X >= x),
            // summed smallest terms first.
            KahanSum s1, s2;
            for (std::uint64_t x = m; x >= 1; --x) {
                double t = tail_x(std::int64_t(x), n, m);
                s1.add(t);
                s2.add((2.0 * double(x) - 1.0) * t);
            }
            ex = s1.sum;
            ex2 = s2.sum;
            break;
        }
        case LawKind::Binomial: {
            double mp = double(m) * p_;
            ex = mp;
            ex2 = mp * (1.0 - p_) + mp * mp;
            break;
        }
        case LawKind::Deterministic: {
            double x = double(std::min(x_fixed_, m));
            ex = x;
            ex2 = x * x;
            break;
        }
        case LawKind::Empirical: {
            KahanSum s1, s2;
            for (const auto& [size, prob] : pmf_) {
                double x = double(std::min(size, m));
                s1.add(x * prob);
                s2.add(x * x * prob);
            }
            ex = s1.sum;
            ex2 = s2.sum;
            break;
        }
    }
    MomentsY mo;
    mo.mean_y = c * ex;
    mo.mean_y2 = c * c * ex2;
    mo.var_y = std::max(0.0, mo.mean_y2 - mo.mean_y * mo.mean_y);
    return mo;
}

double SetSizeLaw::tail_prob_y(std::uint64_t n, std::uint64_t m, double t) const {
    // P(Y >= t) = P(X >= t * sqrt(m/n)); snap near-integer thresholds so that
    // exact quantization boundaries behave as >=.
    double q = t * std::sqrt(double(m) / double(n));
    if (q > double(m)) return 0.0;
    double r = std::round(q);
    std::int64_t x0;
    if (std::abs(q - r) <= 1e-9 * std::max(1.0, std::abs(q)))
        x0 = std::int64_t(r);
    else
        x0 = std::int64_t(std::ceil(q));
    // t > 0 excludes X = 0 even when the scaled threshold snaps to zero.
    if (t > 0.0 && x0 < 1) x0 = 1;
    return tail_x(x0, n, m);
}

nlohmann::json SetSizeLaw::to_json() const {
    switch (kind_) {
        case LawKind::PowerLawTail:
            return {{"kind", "power_law_tail"},
                    {"alpha", alpha_},
                    {"y_min", y_min_},
                    {"sv_gamma", sv_gamma_}};
        case LawKind::Binomial:
            return {{"kind", "binomial"}, {"p", p_}};
        case LawKind::Deterministic:
            return {{"kind", "deterministic"}, {"x_fixed", x_fixed_}};
        case LawKind::Empirical: {
            nlohmann::json entries = nlohmann::json::array();
            for (const auto& [size, prob] : pmf_) entries.push_back({size, prob});
            return {{"kind", "empirical"}, {"pmf", entries}};
        }
    }
    throw format_error("law: unknown kind");
}

SetSizeLaw SetSizeLaw::from_json(const nlohmann::json& j) {
    try {
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "power_law_tail")
            return power_law_tail(j.at("alpha").get<double>(), j.at("y_min").get<double>(),
                                  j.value("sv_gamma", 0.0));
        if (kind == "binomial") return binomial(j.at("p").get<double>());
        if (kind == "deterministic") return deterministic(j.at("x_fixed").get<std::uint64_t>());
        if (kind == "empirical") {
            std::vector<std::pair<std::uint64_t, double>> pmf;
            for (const auto& e : j.at("pmf"))
                pmf.emplace_back(e.at(0).get<std::uint64_t>(), e.at(1).get<double>());
            return empirical(std::move(pmf));
        }
        throw format_error("law: unknown kind '" + kind + "'");
    } catch (const nlohmann::json::exception& e) {
        throw format_error(std::string("law: ") + e.what());
    }
}

}  // namespace rig
