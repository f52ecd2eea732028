#include "rig/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "rig/ballsbins.hpp"
#include "rig/cliques.hpp"
#include "rig/errors.hpp"
#include "rig/graph.hpp"
#include "rig/instance.hpp"
#include "rig/oracles.hpp"
#include "rig/theory.hpp"

namespace rig {
namespace harness {

namespace {

enum class Kind {
    PowerlawClique,
    FiniteVarianceStructure,
    TvMaxload,
    MonoOptimality,
    DegreeMoments,
    RainbowBound,
    PairMultiplicity,
    SdrMaximization,
    Coupling,
    RuntimeScaling,
};

Kind parse_kind(const std::string& name) {
    if (name == "powerlaw-clique") return Kind::PowerlawClique;
    if (name == "finite-variance-structure") return Kind::FiniteVarianceStructure;
    if (name == "tv-maxload") return Kind::TvMaxload;
    if (name == "mono-optimality") return Kind::MonoOptimality;
    if (name == "degree-moments") return Kind::DegreeMoments;
    if (name == "rainbow-bound") return Kind::RainbowBound;
    if (name == "pair-multiplicity") return Kind::PairMultiplicity;
    if (name == "sdr-maximization") return Kind::SdrMaximization;
    if (name == "coupling") return Kind::Coupling;
    if (name == "runtime-scaling") return Kind::RuntimeScaling;
    throw config_error("config: unknown experiment '" + name + "'");
}

double knob(const ExperimentConfig& cfg, const std::string& name, double fallback) {
    auto it = cfg.knobs.find(name);
    return it == cfg.knobs.end() ? fallback : it->second;
}

bool uses_instances(Kind kind) {
    switch (kind) {
        case Kind::SdrMaximization:
        case Kind::Coupling:
            return false;
        default:
            return true;
    }
}

bool law_optional_with_replay(Kind kind) {
    return kind == Kind::FiniteVarianceStructure || kind == Kind::MonoOptimality ||
           kind == Kind::PairMultiplicity;
}

// Per-point inputs shared by every trial of that point, precomputed once.
struct PointContext {
    SchedulePoint pt;
    std::map<std::string, double> derived;
    std::uint64_t matched_balls = 0;
    double prediction = 0.0;
    theory::Thresholds th;
    double rainbow_bound = 0.0;
    double disjoint_prob = 0.0;
};

std::uint64_t sdr_d(const ExperimentConfig& cfg) {
    std::size_t k = cfg.sizes ? cfg.sizes->size() : 0;
    return std::uint64_t(knob(cfg, "d", double(k)));
}

theory::PowerLawRegime regime_from(const ExperimentConfig& cfg) {
    theory::PowerLawRegime regime;
    regime.alpha = cfg.law->alpha();
    regime.sv_gamma = cfg.law->sv_gamma();
    regime.beta = knob(cfg, "beta", 1.0);
    regime.eps0 = knob(cfg, "eps0", 0.1);
    regime.eps1 = knob(cfg, "eps1", 0.02);
    return regime;
}

void validate(const ExperimentConfig& cfg, Kind kind) {
    if (cfg.schedule.empty()) throw config_error("config: schedule must be nonempty");
    for (const auto& pt : cfg.schedule)
        if (pt.n == 0 || pt.m == 0) throw config_error("config: schedule entries need n, m >= 1");
    if (cfg.trials == 0) throw config_error("config: trials must be positive");

    if (cfg.replay) {
        if (!uses_instances(kind) || kind == Kind::TvMaxload || kind == Kind::RuntimeScaling ||
            kind == Kind::PowerlawClique || kind == Kind::DegreeMoments)
            throw config_error("config: replay is not supported by this experiment");
        if (cfg.schedule.size() != 1)
            throw config_error("config: replay requires a single schedule point");
    }

    bool needs_law = uses_instances(kind) && !(cfg.replay && law_optional_with_replay(kind));
    if (needs_law && !cfg.law) throw config_error("config: this experiment requires a law");
    if (kind == Kind::PowerlawClique) {
        if (cfg.law->kind() != LawKind::PowerLawTail)
            throw config_error("config: powerlaw-clique requires a power_law_tail law");
        try {
            regime_from(cfg).validate();
        } catch (const std::invalid_argument& e) {
            throw config_error(std::string("config: ") + e.what());
        }
    }
    if (kind == Kind::SdrMaximization) {
        if (!cfg.sizes || cfg.sizes->empty())
            throw config_error("config: sdr-maximization requires nonempty sizes");
        if (sdr_d(cfg) < cfg.sizes->size())
            throw config_error("config: sdr-maximization needs d >= number of sets");
    }
    if (kind == Kind::RuntimeScaling) {
        if (!cfg.algo || (*cfg.algo != "greedy" && *cfg.algo != "mono"))
            throw config_error("config: runtime-scaling requires algo 'greedy' or 'mono'");
    }
    if (kind == Kind::Coupling && !(knob(cfg, "eps", 1e-3) >= 0.0))
        throw config_error("config: coupling eps must be nonnegative");
}

std::vector<PointContext> make_contexts(const ExperimentConfig& cfg, Kind kind) {
    std::vector<PointContext> ctxs;
    ctxs.reserve(cfg.schedule.size());
    for (const auto& pt : cfg.schedule) {
        PointContext ctx;
        ctx.pt = pt;
        switch (kind) {
            case Kind::PowerlawClique: {
                theory::PowerLawRegime regime = regime_from(cfg);
                ctx.prediction = theory::predicted_clique_powerlaw(pt.n, regime);
                ctx.th = theory::thresholds(pt.n, pt.m, regime);
                ctx.derived["prediction"] = ctx.prediction;
                ctx.derived["theta1"] = ctx.th.theta1;
                ctx.derived["theta2"] = ctx.th.theta2;
                break;
            }
            case Kind::FiniteVarianceStructure:
            case Kind::MonoOptimality:
                if (pt.n >= 16)
                    ctx.derived["prediction"] = theory::predicted_clique_finite_variance(pt.n);
                break;
            case Kind::TvMaxload: {
                MomentsY mo = cfg.law->moments_y(pt.n, pt.m);
                ctx.matched_balls =
                    std::uint64_t(std::floor(std::sqrt(double(pt.m) * double(pt.n)) * mo.mean_y));
                ctx.derived["matched_balls"] = double(ctx.matched_balls);
                ctx.derived["mean_y"] = mo.mean_y;
                break;
            }
            case Kind::DegreeMoments: {
                theory::DegreeMoments dm =
                    theory::degree_moment_predictions(*cfg.law, pt.n, pt.m);
                MomentsY mo = cfg.law->moments_y(pt.n, pt.m);
                ctx.derived["mean_degree_pred"] = dm.mean;
                ctx.derived["var_degree_pred"] = dm.variance;
                ctx.derived["clustering_pred"] =
                    mo.mean_y2 > 0.0
                        ? std::sqrt(double(pt.n) / double(pt.m)) * mo.mean_y / mo.mean_y2
                        : 0.0;
                break;
            }
            case Kind::RainbowBound: {
                MomentsY mo = cfg.law->moments_y(pt.n, pt.m);
                ctx.rainbow_bound = std::pow(mo.mean_y2, 4.0) / 24.0;
                ctx.derived["rainbow_bound"] = ctx.rainbow_bound;
                break;
            }
            case Kind::SdrMaximization: {
                const auto& sizes = *cfg.sizes;
                std::vector<std::vector<std::uint32_t>> packed(sizes.size());
                std::uint32_t next = 0;
                for (std::size_t i = 0; i < sizes.size(); ++i)
                    for (std::uint64_t j = 0; j < sizes[i]; ++j)
                        packed[i].push_back(next++);
                ctx.disjoint_prob = oracle::sdr_probability_exact(packed, pt.m, sdr_d(cfg));
                ctx.derived["disjoint_prob"] = ctx.disjoint_prob;
                break;
            }
            case Kind::Coupling:
                ctx.derived["eps"] = knob(cfg, "eps", 1e-3);
                break;
            default:
                break;
        }
        ctxs.push_back(std::move(ctx));
    }
    return ctxs;
}

void run_trial(Kind kind, const ExperimentConfig& cfg, const PointContext& ctx,
               std::uint64_t point_idx, std::uint64_t trial, const Instance* replay,
               TrialRecord& rec) {
    auto& v = rec.values;
    const SchedulePoint pt = ctx.pt;
    const std::uint64_t pair_budget =
        std::uint64_t(knob(cfg, "pair_budget", double(std::uint64_t(1) << 33)));
    const std::uint64_t clique_budget =
        std::uint64_t(knob(cfg, "clique_budget", 100'000'000.0));

    auto instance = [&]() -> Instance {
        if (replay) return *replay;
        return generate(pt.n, pt.m, *cfg.law, rec.seed);
    };

    switch (kind) {
        case Kind::PowerlawClique: {
            Instance inst = instance();
            SparseGraph g = build_graph(inst, pair_budget);
            CliqueResult res = greedy_clique(g);
            v["greedy_size"] = double(res.size());
            v["ratio"] = double(res.size()) / ctx.prediction;
            double small = 0, mid = 0, large = 0;
            for (const auto& s : inst.subsets) {
                double x = double(s.size());
                (x < ctx.th.theta1 ? small : x > ctx.th.theta2 ? large : mid) += 1;
            }
            v["x_small"] = small;
            v["x_mid"] = mid;
            v["x_large"] = large;
            break;
        }
        case Kind::FiniteVarianceStructure: {
            Instance inst = instance();
            SparseGraph g = build_graph(inst, pair_budget);
            double omega_prime = double(max_monochromatic(invert(inst)).size);
            CliqueResult exact = exact_max_clique(g, clique_budget);
            v["omega"] = double(exact.size());
            v["omega_prime"] = omega_prime;
            v["gap"] = double(exact.size()) - omega_prime;
            break;
        }
        case Kind::TvMaxload: {
            // Occupancy counters suffice for the top attribute multiplicity;
            // the sampling sequence matches generate().
            Rng rng(rec.seed);
            std::vector<std::uint32_t> occupancy(pt.m, 0);
            std::uint32_t top = 0;
            for (std::uint64_t u = 0; u < pt.n; ++u) {
                std::uint64_t k = cfg.law->sample_size(pt.n, pt.m, rng);
                for (std::uint32_t w : sample_uniform_subset(k, pt.m, rng))
                    top = std::max(top, ++occupancy[w]);
            }
            v["omega_prime"] = double(top);
            Rng load_rng(derive_seed(cfg.master_seed, cfg.experiment + "/load", point_idx, trial));
            v["max_load"] = double(max_load_sample(ctx.matched_balls, pt.m, load_rng));
            break;
        }
        case Kind::MonoOptimality: {
            Instance inst = instance();
            SparseGraph g = build_graph(inst, pair_budget);
            const std::uint64_t cycle_cap =
                std::uint64_t(knob(cfg, "cycle_cap", 1'000'000'000.0));
            CliqueResult mono = mono_clique(g);
            v["mono_size"] = double(mono.size());
            v["bad_cycles"] = double(count_bad_cycles(inst, g, cycle_cap).count);
            v["four_cycles"] = double(count_4cycles(g, cycle_cap).count);
            CliqueResult exact = exact_max_clique(g, clique_budget);
            v["omega"] = double(exact.size());
            v["found"] = mono.size() == exact.size() ? 1.0 : 0.0;
            double gap = double(exact.size()) - double(mono.size());
            v["sq_gap"] = gap * gap;
            break;
        }
        case Kind::DegreeMoments: {
            Instance inst = instance();
            SparseGraph g = build_graph(inst, pair_budget);
            DegreeStats st = degree_stats(g);
            v["mean_degree"] = st.mean;
            v["mean_degree_sq"] = st.variance + st.mean * st.mean;
            v["var_degree"] = st.variance;
            v["max_degree"] = double(st.max);
            ClusteringEstimate cl = clustering(inst, g, *cfg.law);
            if (cl.empirical) v["clustering"] = *cl.empirical;
            break;
        }
        case Kind::RainbowBound: {
            Instance inst = instance();
            SparseGraph g = build_graph(inst, pair_budget);
            const std::uint64_t cap = std::uint64_t(knob(cfg, "clique_cap", 50'000'000.0));
            v["rainbow_k4"] = double(count_rainbow_k4(inst, g, cap).count);
            break;
        }
        case Kind::PairMultiplicity: {
            Instance inst = instance();
            double mult = double(attribute_pair_multiplicity(inst));
            v["pair_mult"] = mult;
            v["within_bound"] = mult <= knob(cfg, "mult_bound", 2.0) ? 1.0 : 0.0;
            break;
        }
        case Kind::SdrMaximization: {
            Rng rng(rec.seed);
            auto rep =
                oracle::verify_disjoint_maximizes(*cfg.sizes, pt.m, sdr_d(cfg), 1, rng);
            v["sdr_prob"] = rep.max_other;
            break;
        }
        case Kind::Coupling: {
            Rng rng(rec.seed);
            CoupledThrow ct = coupled_throw(pt.n, pt.m, knob(cfg, "eps", 1e-3), rng);
            v["max_before"] = double(ct.max_before);
            v["max_after"] = double(ct.max_after);
            v["gap"] = double(ct.max_before) - double(ct.max_after);
            break;
        }
        case Kind::RuntimeScaling: {
            Instance inst = instance();
            SparseGraph g = build_graph(inst, pair_budget);
            CliqueResult res = *cfg.algo == "mono" ? mono_clique(g) : greedy_clique(g);
            v["size"] = double(res.size());
            v["time_ns"] = double(res.elapsed_ns);
            break;
        }
    }
}

std::map<std::string, MetricSummary> aggregate(const std::vector<TrialRecord>& records) {
    std::map<std::string, std::vector<double>> columns;
    for (const auto& rec : records) {
        if (rec.excluded) continue;
        for (const auto& [key, value] : rec.values) columns[key].push_back(value);
    }
    std::map<std::string, MetricSummary> out;
    for (const auto& [key, col] : columns) {
        MetricSummary s;
        s.count = col.size();
        double sum = 0.0;
        s.min = col.front();
        s.max = col.front();
        for (double x : col) {
            sum += x;
            s.min = std::min(s.min, x);
            s.max = std::max(s.max, x);
        }
        s.mean = sum / double(col.size());
        if (col.size() > 1) {
            double ss = 0.0;
            for (double x : col) ss += (x - s.mean) * (x - s.mean);
            s.variance = ss / double(col.size() - 1);
            s.ci_half_width = 1.96 * std::sqrt(s.variance / double(col.size()));
        }
        out.emplace(key, s);
    }
    return out;
}

double median_of(std::vector<double> xs) {
    if (xs.empty()) return 0.0;
    std::sort(xs.begin(), xs.end());
    std::size_t h = xs.size() / 2;
    return xs.size() % 2 ? xs[h] : 0.5 * (xs[h - 1] + xs[h]);
}

void finalize_point(Kind kind, const ExperimentConfig& cfg, PointReport& point) {
    switch (kind) {
        case Kind::TvMaxload: {
            LoadDistribution omega, load;
            omega.source = load.source = "empirical";
            std::uint64_t used = 0;
            std::map<std::uint64_t, std::uint64_t> ho, hl;
            for (const auto& rec : point.records) {
                if (rec.excluded) continue;
                ++ho[std::uint64_t(rec.values.at("omega_prime"))];
                ++hl[std::uint64_t(rec.values.at("max_load"))];
                ++used;
            }
            if (used) {
                for (auto [k, c] : ho) omega.pmf[k] = double(c) / double(used);
                for (auto [k, c] : hl) load.pmf[k] = double(c) / double(used);
            }
            point.derived["tv"] = tv_distance(omega, load);
            break;
        }
        case Kind::SdrMaximization: {
            double best = 0.0;
            for (const auto& rec : point.records)
                if (!rec.excluded) best = std::max(best, rec.values.at("sdr_prob"));
            point.derived["max_rival_prob"] = best;
            double max_m = knob(cfg, "exhaustive_max_m", 0.0);
            if (max_m >= 1.0) {
                auto sweep = oracle::disjoint_maximizes_exhaustive(std::uint64_t(max_m));
                point.derived["exhaustive_min_margin"] = sweep.min_margin;
                point.derived["exhaustive_families"] = double(sweep.families_checked);
            }
            break;
        }
        case Kind::Coupling: {
            double mean_before = 0.0, used = 0.0;
            for (const auto& rec : point.records)
                if (!rec.excluded) {
                    mean_before += rec.values.at("max_before");
                    used += 1.0;
                }
            if (used > 0.0) mean_before /= used;
            double delta = knob(cfg, "delta", 0.0);
            if (delta <= 0.0) delta = 1.0 / std::log(double(point.point.n) + 2.0);
            double equal = 0.0, within = 0.0, min_gap = 0.0;
            bool first = true;
            for (const auto& rec : point.records) {
                if (rec.excluded) continue;
                double gap = rec.values.at("gap");
                if (first || gap < min_gap) min_gap = gap;
                first = false;
                if (gap == 0.0) equal += 1.0;
                if (gap <= delta * mean_before) within += 1.0;
            }
            point.derived["delta"] = delta;
            point.derived["mean_max_before"] = mean_before;
            point.derived["min_gap"] = min_gap;
            if (used > 0.0) {
                point.derived["p_equal"] = equal / used;
                point.derived["p_within_delta"] = within / used;
            }
            break;
        }
        case Kind::RuntimeScaling: {
            std::vector<double> times;
            double total = 0.0;
            for (const auto& rec : point.records)
                if (!rec.excluded) {
                    times.push_back(rec.values.at("time_ns"));
                    total += rec.values.at("time_ns");
                }
            point.derived["median_time_ns"] = median_of(std::move(times));
            point.derived["total_time_ns"] = total;
            break;
        }
        default:
            break;
    }
}

// Fraction of usable trials across every point satisfying the predicate.
template <typename Pred>
double pooled_rate(const std::vector<PointReport>& points, Pred&& pred) {
    double hits = 0.0, total = 0.0;
    for (const auto& point : points)
        for (const auto& rec : point.records) {
            if (rec.excluded) continue;
            total += 1.0;
            if (pred(rec)) hits += 1.0;
        }
    return total > 0.0 ? hits / total : 0.0;
}

double pooled_mean(const std::vector<PointReport>& points, const std::string& key) {
    double sum = 0.0, total = 0.0;
    for (const auto& point : points)
        for (const auto& rec : point.records) {
            if (rec.excluded) continue;
            auto it = rec.values.find(key);
            if (it == rec.values.end()) continue;
            sum += it->second;
            total += 1.0;
        }
    return total > 0.0 ? sum / total : 0.0;
}

void add_rule(ExperimentReport& report, std::string name, std::string description,
              double observed, double bound, bool pass) {
    report.rules.push_back({std::move(name), std::move(description), observed, bound, pass});
}

void exclusion_rule(ExperimentReport& report, const ExperimentConfig& cfg) {
    double excluded = 0.0, total = 0.0;
    for (const auto& point : report.points)
        for (const auto& rec : point.records) {
            total += 1.0;
            if (rec.excluded) excluded += 1.0;
        }
    double rate = total > 0.0 ? excluded / total : 0.0;
    double bound = knob(cfg, "exclusion_rate", 0.05);
    add_rule(report, "exclusion-rate", "fraction of trials whose exact solver gave up",
             rate, bound, rate <= bound);
}

void evaluate_rules(Kind kind, const ExperimentConfig& cfg, ExperimentReport& report) {
    const PointReport& first = report.points.front();
    const PointReport& last = report.points.back();
    const bool multi = report.points.size() >= 2;

    auto agg_mean = [](const PointReport& p, const std::string& key) {
        auto it = p.aggregates.find(key);
        return it == p.aggregates.end() ? 0.0 : it->second.mean;
    };

    switch (kind) {
        case Kind::PowerlawClique: {
            double lo = knob(cfg, "ratio_lo", 0.4), hi = knob(cfg, "ratio_hi", 1.6);
            double r_last = agg_mean(last, "ratio");
            add_rule(report, "ratio-min",
                     "mean greedy size over prediction at the largest n stays above ratio_lo",
                     r_last, lo, r_last >= lo);
            add_rule(report, "ratio-max",
                     "mean greedy size over prediction at the largest n stays below ratio_hi",
                     r_last, hi, r_last <= hi);
            if (multi) {
                double slack = knob(cfg, "trend_slack", 0.1);
                double drift_first = std::abs(agg_mean(first, "ratio") - 1.0);
                double drift_last = std::abs(r_last - 1.0);
                add_rule(report, "ratio-trend",
                         "|ratio - 1| does not grow by more than trend_slack across the schedule",
                         drift_last, drift_first + slack, drift_last <= drift_first + slack);
            }
            break;
        }
        case Kind::FiniteVarianceStructure: {
            double gap_bound = knob(cfg, "gap_bound", 3.0);
            double gap_rate = knob(cfg, "gap_rate", 0.95);
            double within = pooled_rate(report.points, [&](const TrialRecord& r) {
                return r.values.at("gap") <= gap_bound;
            });
            add_rule(report, "omega-within-gap",
                     "fraction of trials with omega <= omega' + gap_bound", within, gap_rate,
                     within >= gap_rate);
            double lower = pooled_rate(report.points, [&](const TrialRecord& r) {
                return r.values.at("omega") >= r.values.at("omega_prime");
            });
            add_rule(report, "omega-at-least-mono",
                     "fraction of trials with omega >= omega'", lower, 1.0, lower >= 1.0);
            exclusion_rule(report, cfg);
            break;
        }
        case Kind::TvMaxload: {
            double bound = knob(cfg, "tv_bound", 0.15);
            double tv_last = last.derived.at("tv");
            add_rule(report, "tv-final",
                     "total variation distance at the largest point stays below tv_bound",
                     tv_last, bound, tv_last <= bound);
            if (multi) {
                double slack = knob(cfg, "tv_trend_slack", 0.05);
                double tv_first = first.derived.at("tv");
                add_rule(report, "tv-trend",
                         "total variation distance does not grow along the schedule",
                         tv_last - tv_first, slack, tv_last - tv_first <= slack);
            }
            break;
        }
        case Kind::MonoOptimality: {
            double hit_rate = knob(cfg, "hit_rate", 0.9);
            double hits = pooled_rate(report.points, [](const TrialRecord& r) {
                return r.values.at("found") == 1.0;
            });
            add_rule(report, "mono-hit-rate",
                     "fraction of trials where mono finds a maximum clique", hits, hit_rate,
                     hits >= hit_rate);
            double sq_bound = knob(cfg, "sq_gap_bound", 1.0);
            double sq = pooled_mean(report.points, "sq_gap");
            add_rule(report, "mono-mean-sq-gap",
                     "mean squared size deficit of mono against the maximum clique", sq,
                     sq_bound, sq <= sq_bound);
            exclusion_rule(report, cfg);
            break;
        }
        case Kind::DegreeMoments: {
            double mean_rtol = knob(cfg, "mean_rtol", 0.05);
            double var_rtol = knob(cfg, "var_rtol", 0.10);
            double cl_atol = knob(cfg, "clustering_atol", 0.05);
            double mean_pred = last.derived.at("mean_degree_pred");
            double var_pred = last.derived.at("var_degree_pred");
            double grand_mean = agg_mean(last, "mean_degree");
            double mean_err = std::abs(grand_mean / mean_pred - 1.0);
            add_rule(report, "degree-mean",
                     "relative error of the grand mean degree against (E Y)^2", mean_err,
                     mean_rtol, mean_err <= mean_rtol);
            double pooled_var =
                agg_mean(last, "mean_degree_sq") - grand_mean * grand_mean;
            double var_err = std::abs(pooled_var / var_pred - 1.0);
            add_rule(report, "degree-variance",
                     "relative error of the pooled degree variance against (E Y)^2 (Var Y + 1)",
                     var_err, var_rtol, var_err <= var_rtol);
            double cl_err = std::abs(agg_mean(last, "clustering") -
                                     last.derived.at("clustering_pred"));
            add_rule(report, "clustering",
                     "absolute error of mean clustering against sqrt(n/m) E Y / E Y^2", cl_err,
                     cl_atol, cl_err <= cl_atol);
            break;
        }
        case Kind::RainbowBound: {
            auto it = last.aggregates.find("rainbow_k4");
            double mean = it == last.aggregates.end() ? 0.0 : it->second.mean;
            double se = it == last.aggregates.end() || it->second.count == 0
                            ? 0.0
                            : std::sqrt(it->second.variance / double(it->second.count));
            double observed = mean - 1.645 * se;  // one-sided 95% lower bound
            double bound = last.derived.at("rainbow_bound");
            add_rule(report, "rainbow-mean-bound",
                     "mean rainbow 4-clique count stays below (E Y^2)^4 / 24 within noise",
                     observed, bound, observed <= bound);
            break;
        }
        case Kind::PairMultiplicity: {
            double rate = knob(cfg, "rate", 0.9);
            double within = pooled_rate(report.points, [](const TrialRecord& r) {
                return r.values.at("within_bound") == 1.0;
            });
            add_rule(report, "pair-mult-rate",
                     "fraction of instances where every attribute pair is shared by few vertices",
                     within, rate, within >= rate);
            break;
        }
        case Kind::SdrMaximization: {
            double disjoint = last.derived.at("disjoint_prob");
            double rival = last.derived.at("max_rival_prob");
            add_rule(report, "random-rivals-dominated",
                     "no sampled family beats the packed disjoint family's SDR probability",
                     rival - disjoint, 1e-12, rival - disjoint <= 1e-12);
            if (last.derived.count("exhaustive_min_margin")) {
                double margin = last.derived.at("exhaustive_min_margin");
                add_rule(report, "exhaustive-dominated",
                         "no enumerable family beats its packed disjoint counterpart",
                         -margin, 1e-12, -margin <= 1e-12);
            }
            break;
        }
        case Kind::Coupling: {
            double min_gap = last.derived.at("min_gap");
            add_rule(report, "upper-never-below",
                     "max load after deletion never exceeds the pre-deletion max", min_gap,
                     0.0, min_gap >= 0.0);
            double equal_rate = knob(cfg, "equal_rate", 0.9);
            double p_equal = last.derived.count("p_equal") ? last.derived.at("p_equal") : 0.0;
            add_rule(report, "equal-rate", "fraction of trials where deletion leaves the max load",
                     p_equal, equal_rate, p_equal >= equal_rate);
            break;
        }
        case Kind::RuntimeScaling: {
            if (cfg.knobs.count("time_ratio_bound") && multi) {
                double bound = knob(cfg, "time_ratio_bound", 3.0);
                double med_first = std::max(first.derived.at("median_time_ns"), 1.0);
                double ratio = last.derived.at("median_time_ns") / med_first;
                add_rule(report, "median-time-ratio",
                         "median wall time growth across the schedule stays below the bound",
                         ratio, bound, ratio <= bound);
            }
            if (cfg.knobs.count("quad_envelope_slack") && multi) {
                double slack = knob(cfg, "quad_envelope_slack", 1.5);
                double scale = double(last.point.n) / double(first.point.n);
                double envelope = first.derived.at("total_time_ns") * scale * scale * slack;
                double total = last.derived.at("total_time_ns");
                add_rule(report, "quadratic-envelope",
                         "total wall time stays below the quadratic envelope from the first point",
                         total, envelope, total <= envelope);
            }
            break;
        }
    }
}

}  // namespace

bool ExperimentReport::all_pass() const {
    for (const auto& rule : rules)
        if (!rule.pass) return false;
    return true;
}

ExperimentReport run(const ExperimentConfig& cfg) {
    Kind kind = parse_kind(cfg.experiment);
    validate(cfg, kind);

    std::optional<Instance> replay;
    if (cfg.replay) {
        replay = read_instance_file(*cfg.replay);
        if (replay->n != cfg.schedule[0].n || replay->m != cfg.schedule[0].m)
            throw config_error("config: replay instance does not match the schedule point");
    }

    std::vector<PointContext> ctxs = make_contexts(cfg, kind);

    const std::uint64_t total = cfg.schedule.size() * cfg.trials;
    std::vector<TrialRecord> records(total);
    std::atomic<std::uint64_t> cursor{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&]() {
        for (;;) {
            std::uint64_t i = cursor.fetch_add(1);
            if (i >= total || failed.load()) return;
            std::uint64_t p = i / cfg.trials, t = i % cfg.trials;
            TrialRecord& rec = records[i];
            rec.trial = t;
            rec.seed = derive_seed(cfg.master_seed, cfg.experiment, p, t);
            try {
                auto start = std::chrono::steady_clock::now();
                run_trial(kind, cfg, ctxs[p], p, t, replay ? &*replay : nullptr, rec);
                if (cfg.record_timings)
                    rec.values["trial_time_ns"] =
                        double(std::chrono::duration_cast<std::chrono::nanoseconds>(
                                   std::chrono::steady_clock::now() - start)
                                   .count());
            } catch (const budget_exceeded_error&) {
                rec.excluded = true;
                rec.values.clear();
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };

    unsigned workers = std::max(1u, cfg.worker_count);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);

    ExperimentReport report;
    report.config = cfg;
    for (std::size_t p = 0; p < cfg.schedule.size(); ++p) {
        PointReport point;
        point.point = cfg.schedule[p];
        point.derived = ctxs[p].derived;
        point.records.assign(records.begin() + std::ptrdiff_t(p * cfg.trials),
                             records.begin() + std::ptrdiff_t((p + 1) * cfg.trials));
        point.aggregates = aggregate(point.records);
        finalize_point(kind, cfg, point);
        report.points.push_back(std::move(point));
    }
    evaluate_rules(kind, cfg, report);
    return report;
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json j{{"experiment", experiment},
                     {"trials", trials},
                     {"master_seed", master_seed},
                     {"record_timings", record_timings}};
    nlohmann::json sched = nlohmann::json::array();
    for (const auto& pt : schedule) sched.push_back({{"n", pt.n}, {"m", pt.m}});
    j["schedule"] = sched;
    if (law) j["law"] = law->to_json();
    if (!knobs.empty()) j["knobs"] = knobs;
    if (replay) j["replay"] = *replay;
    if (algo) j["algo"] = *algo;
    if (sizes) j["sizes"] = *sizes;
    return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    try {
        ExperimentConfig cfg;
        cfg.experiment = j.at("experiment").get<std::string>();
        for (const auto& e : j.at("schedule"))
            cfg.schedule.push_back(
                {e.at("n").get<std::uint64_t>(), e.at("m").get<std::uint64_t>()});
        if (j.contains("law")) cfg.law = SetSizeLaw::from_json(j.at("law"));
        cfg.trials = j.at("trials").get<std::uint64_t>();
        cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
        if (j.contains("knobs"))
            for (const auto& [key, value] : j.at("knobs").items())
                cfg.knobs[key] = value.get<double>();
        if (j.contains("replay")) cfg.replay = j.at("replay").get<std::string>();
        if (j.contains("algo")) cfg.algo = j.at("algo").get<std::string>();
        if (j.contains("sizes")) cfg.sizes = j.at("sizes").get<std::vector<std::uint64_t>>();
        if (j.contains("record_timings")) cfg.record_timings = j.at("record_timings").get<bool>();
        if (j.contains("worker_count")) cfg.worker_count = j.at("worker_count").get<unsigned>();
        return cfg;
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("config: ") + e.what());
    }
}

nlohmann::json ExperimentReport::to_json() const {
    nlohmann::json points_json = nlohmann::json::array();
    for (const auto& point : points) {
        nlohmann::json aggs = nlohmann::json::object();
        for (const auto& [key, s] : point.aggregates)
            aggs[key] = {{"count", s.count},         {"mean", s.mean},
                         {"variance", s.variance},   {"ci_half_width", s.ci_half_width},
                         {"min", s.min},             {"max", s.max}};
        nlohmann::json recs = nlohmann::json::array();
        for (const auto& rec : point.records)
            recs.push_back({{"trial", rec.trial},
                            {"seed", rec.seed},
                            {"excluded", rec.excluded},
                            {"values", rec.values}});
        points_json.push_back({{"n", point.point.n},
                               {"m", point.point.m},
                               {"derived", point.derived},
                               {"aggregates", aggs},
                               {"records", recs}});
    }
    nlohmann::json rules_json = nlohmann::json::array();
    for (const auto& rule : rules)
        rules_json.push_back({{"name", rule.name},
                              {"description", rule.description},
                              {"observed", rule.observed},
                              {"bound", rule.bound},
                              {"pass", rule.pass}});
    return {{"config", config.to_json()},
            {"points", points_json},
            {"rules", rules_json},
            {"all_pass", all_pass()}};
}

ExperimentReport ExperimentReport::from_json(const nlohmann::json& j) {
    try {
        ExperimentReport report;
        report.config = ExperimentConfig::from_json(j.at("config"));
        for (const auto& pj : j.at("points")) {
            PointReport point;
            point.point = {pj.at("n").get<std::uint64_t>(), pj.at("m").get<std::uint64_t>()};
            for (const auto& [key, value] : pj.at("derived").items())
                point.derived[key] = value.get<double>();
            for (const auto& [key, value] : pj.at("aggregates").items()) {
                MetricSummary s;
                s.count = value.at("count").get<std::uint64_t>();
                s.mean = value.at("mean").get<double>();
                s.variance = value.at("variance").get<double>();
                s.ci_half_width = value.at("ci_half_width").get<double>();
                s.min = value.at("min").get<double>();
                s.max = value.at("max").get<double>();
                point.aggregates[key] = s;
            }
            for (const auto& rj : pj.at("records")) {
                TrialRecord rec;
                rec.trial = rj.at("trial").get<std::uint64_t>();
                rec.seed = rj.at("seed").get<std::uint64_t>();
                rec.excluded = rj.at("excluded").get<bool>();
                for (const auto& [key, value] : rj.at("values").items())
                    rec.values[key] = value.get<double>();
                point.records.push_back(std::move(rec));
            }
            report.points.push_back(std::move(point));
        }
        for (const auto& rj : j.at("rules"))
            report.rules.push_back({rj.at("name").get<std::string>(),
                                    rj.at("description").get<std::string>(),
                                    rj.at("observed").get<double>(),
                                    rj.at("bound").get<double>(), rj.at("pass").get<bool>()});
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw format_error(std::string("report: ") + e.what());
    }
}

std::string emit(const ExperimentReport& report, OutputFormat format) {
    if (format == OutputFormat::Json) return report.to_json().dump(2) + "\n";

    std::set<std::string> keys;
    for (const auto& point : report.points)
        for (const auto& rec : point.records)
            for (const auto& [key, value] : rec.values) keys.insert(key);

    std::ostringstream out;
    out << "point,n,m,trial,seed,excluded";
    for (const auto& key : keys) out << ',' << key;
    out << '\n';
    for (std::size_t p = 0; p < report.points.size(); ++p) {
        const auto& point = report.points[p];
        for (const auto& rec : point.records) {
            out << p << ',' << point.point.n << ',' << point.point.m << ',' << rec.trial << ','
                << rec.seed << ',' << (rec.excluded ? 1 : 0);
            for (const auto& key : keys) {
                out << ',';
                auto it = rec.values.find(key);
                if (it != rec.values.end()) out << nlohmann::json(it->second).dump();
            }
            out << '\n';
        }
    }
    return out.str();
}

}  // namespace harness
}  // namespace rig
