#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rig/set_size_law.hpp"

namespace rig {
namespace harness {

struct SchedulePoint {
    std::uint64_t n = 0;
    std::uint64_t m = 0;
};

// Declarative description of one Monte Carlo experiment. Everything that
// influences results lives here; worker_count only changes scheduling and is
// deliberately left out of the serialized echo.
struct ExperimentConfig {
    std::string experiment;
    std::vector<SchedulePoint> schedule;
    std::optional<SetSizeLaw> law;
    std::uint64_t trials = 1;
    std::uint64_t master_seed = 1;
    std::map<std::string, double> knobs;
    std::optional<std::string> replay;           // instance file instead of sampling
    std::optional<std::string> algo;             // runtime-scaling: "greedy" or "mono"
    std::optional<std::vector<std::uint64_t>> sizes;  // sdr-maximization set sizes
    bool record_timings = false;
    unsigned worker_count = 1;                   // not serialized

    nlohmann::json to_json() const;
    static ExperimentConfig from_json(const nlohmann::json& j);
};

struct TrialRecord {
    std::uint64_t trial = 0;
    std::uint64_t seed = 0;
    bool excluded = false;  // the trial's bounded oracle gave up
    std::map<std::string, double> values;
};

struct MetricSummary {
    std::uint64_t count = 0;
    double mean = 0.0;
    double variance = 0.0;       // sample variance (n - 1)
    double ci_half_width = 0.0;  // 95% normal approximation
    double min = 0.0;
    double max = 0.0;
};

struct PointReport {
    SchedulePoint point;
    std::map<std::string, double> derived;  // predictions and point-level statistics
    std::map<std::string, MetricSummary> aggregates;
    std::vector<TrialRecord> records;
};

struct RuleResult {
    std::string name;
    std::string description;
    double observed = 0.0;
    double bound = 0.0;
    bool pass = false;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<PointReport> points;
    std::vector<RuleResult> rules;

    bool all_pass() const;
    nlohmann::json to_json() const;
    static ExperimentReport from_json(const nlohmann::json& j);
};

enum class OutputFormat { Json, Csv };

// Runs the named experiment. Trials are distributed over worker_count
// threads; trial i of point p always consumes the seed derived from
// (master_seed, experiment, p, i), so results do not depend on scheduling.
ExperimentReport run(const ExperimentConfig& config);

// Serializes a report. JSON is a lossless round trip; CSV has a header line
// followed by one line per trial.
std::string emit(const ExperimentReport& report, OutputFormat format);

}  // namespace harness
}  // namespace rig
