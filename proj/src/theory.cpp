#include "rig/theory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rig/errors.hpp"

namespace rig {
namespace theory {

void PowerLawRegime::validate() const {
    if (!(alpha > 1.0 && alpha < 2.0))
        throw invalid_regime_error("regime: alpha must lie in (1, 2)");
    if (!(beta > std::max(2.0 - alpha, alpha - 1.0)))
        throw invalid_regime_error("regime: beta must exceed max(2 - alpha, alpha - 1)");
    if (!(eps1 > 0.0 && eps1 < eps0 && eps0 < 0.5))
        throw invalid_regime_error("regime: need 0 < eps1 < eps0 < 1/2");
    if (!std::isfinite(sv_gamma)) throw invalid_regime_error("regime: sv_gamma must be finite");
}

double slowly_varying(double x, double gamma) {
    return gamma == 0.0 ? 1.0 : std::pow(std::log(std::numbers::e + x), gamma);
}

double predicted_clique_powerlaw(std::uint64_t n, const PowerLawRegime& regime) {
    regime.validate();
    if (n < 3) throw invalid_regime_error("predicted_clique_powerlaw: requires n >= 3");
    const double a = regime.alpha;
    const double ln_n = std::log(double(n));
    return std::pow(1.0 - a / 2.0, -a / 2.0) *
           slowly_varying(std::sqrt(double(n) * ln_n), regime.sv_gamma) *
           std::pow(double(n), 1.0 - a / 2.0) * std::pow(ln_n, -a / 2.0);
}

double predicted_clique_finite_variance(std::uint64_t n) {
    if (n < 16) throw invalid_regime_error("predicted_clique_finite_variance: requires n >= 16");
    const double ln_n = std::log(double(n));
    return ln_n / std::log(ln_n);
}

Thresholds thresholds(std::uint64_t n, std::uint64_t m, const PowerLawRegime& regime) {
    regime.validate();
    if (n < 2 || m == 0) throw invalid_regime_error("thresholds: need n >= 2 and m >= 1");
    const double ln_n = std::log(double(n));
    const double e1 =
        std::max(0.0, std::log(slowly_varying(std::sqrt(double(n) * ln_n), regime.sv_gamma)));
    Thresholds th;
    th.theta1 = std::sqrt(double(m)) * std::pow(double(n), -regime.eps1);
    th.theta2 = std::sqrt((1.0 - regime.alpha / 2.0) * double(m) * ln_n + double(m) * e1);
    return th;
}

LambertRoot lambert_root(double a, double b) {
    if (!(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw invalid_regime_error("lambert_root: need finite a and b > 0");
    auto f = [&](double z) { return a - std::log(z) - b * z * z; };

    LambertRoot out;
    out.asymptote = std::sqrt(std::max(0.0, (2.0 * a + std::log(2.0 * b)) / (2.0 * b)));

    // f is strictly decreasing on (0, inf) with limits +inf and -inf, so
    // bracket the sign change and polish with safeguarded Newton.
    double lo = 1.0, hi = 1.0;
    while (f(lo) < 0.0) lo *= 0.5;
    while (f(hi) > 0.0) hi *= 2.0;
    double z = std::clamp(out.asymptote > 0.0 ? out.asymptote : 1.0, lo, hi);
    for (int it = 0; it < 200; ++it) {
        double fz = f(z);
        if (fz > 0.0)
            lo = z;
        else
            hi = z;
        double deriv = -1.0 / z - 2.0 * b * z;
        double next = z - fz / deriv;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - z) <= 1e-15 * z) {
            z = next;
            break;
        }
        z = next;
    }
    out.root = z;
    return out;
}

std::uint64_t h_of_k(std::uint64_t k) {
    if (k == 0) throw invalid_regime_error("h_of_k: k must be positive");
    auto choose4 = [](unsigned __int128 h) { return h * (h - 1) * (h - 2) * (h - 3) / 24; };
    std::uint64_t h = 4;
    while (choose4(h) < k) ++h;
    return h;
}

double t_of_kp(std::uint64_t k, double p, double c) {
    if (!(p >= 0.0) || !(c > 0.0)) throw invalid_regime_error("t_of_kp: need p >= 0 and c > 0");
    const double h = double(h_of_k(k));
    return c * h * h * h / std::log(h) * p * (std::sqrt(2.0 * double(k)) + 5.0 + 2.0 * p);
}

double rainbow_kk_prob_bound(const std::vector<std::uint64_t>& sizes, std::uint64_t m) {
    const std::size_t k = sizes.size();
    if (k < 2) throw invalid_regime_error("rainbow_kk_prob_bound: need at least 2 sizes");
    if (m == 0) throw invalid_regime_error("rainbow_kk_prob_bound: m must be positive");
    double log_bound = -0.5 * double(k) * double(k - 1) * std::log(double(m));
    for (std::uint64_t x : sizes) {
        if (x == 0) return 0.0;
        log_bound += double(k - 1) * std::log(double(x));
    }
    return std::clamp(std::exp(log_bound), 0.0, 1.0);
}

DegreeMoments degree_moment_predictions(const SetSizeLaw& law, std::uint64_t n, std::uint64_t m) {
    MomentsY mo = law.moments_y(n, m);
    DegreeMoments d;
    d.mean = mo.mean_y * mo.mean_y;
    d.variance = d.mean * (mo.var_y + 1.0);
    return d;
}

EdgeProbBounds edge_prob_bounds(std::uint64_t x1, std::uint64_t x2, std::uint64_t m) {
    if (m == 0) throw invalid_regime_error("edge_prob_bounds: m must be positive");
    const double q = double(x1) * double(x2) / double(m);
    EdgeProbBounds b;
    b.upper = std::min(1.0, q);
    b.lower = std::clamp(q - q * q, 0.0, b.upper);
    return b;
}

}  // namespace theory
}  // namespace rig
