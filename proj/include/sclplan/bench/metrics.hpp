#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sclplan/control/controller.hpp"

namespace sclplan::bench {

// A run that cannot be set up as asked: unknown suite or mode, a script
// that does not cover the episodes, an empty episode list.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The live completion backend could not be reached or kept failing.
class BackendError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// One aggregated row of the results table. Mean and sigma pairs follow the
// repeatability protocol: the population sigma is taken per task over that
// task's repeats, then means and sigmas are averaged across tasks. The
// provenance shares and the two ReAct quality rates are pooled across all
// episodes instead, since their natural unit is the action, not the task.
struct Metrics {
    int episodes = 0;
    int tasks = 0;
    int repeats = 0;  // episodes per task; 0 when tasks differ in count

    double success_mean = 0.0, success_sigma = 0.0;
    double tokens_mean = 0.0, tokens_sigma = 0.0;
    double steps_mean = 0.0, steps_sigma = 0.0;

    // Fractions of environment steps by decision source; they sum to one
    // whenever any step ran at all.
    double react_share = 0.0;
    double pv_share = 0.0;
    double gsp_share = 0.0;

    // Invalid proposals over all next-action proposals; empty when the run
    // never proposed anything (pure symbolic modes).
    std::optional<double> invalid_react_rate;
    // Repaired-and-accepted over invalid. Empty when nothing was invalid;
    // a planner that never errs has no correction rate, not a perfect one.
    std::optional<double> corrected_rate;

    // Fraction of episodes where the global planner solved the whole task
    // at least once.
    double global_plan_rate = 0.0;
};

// Pure aggregation over finished episodes. Throws ConfigError on an empty
// list; grouping is by task id, so repeat counts may vary per task.
Metrics aggregate(const std::vector<control::EpisodeResult>& episodes);

// Identity of a run, carried into the rendered tables.
struct RunInfo {
    std::string suite;
    std::string mode;
    std::string backend;
    uint64_t seed = 0;
};

// Metric labels in table order, as they appear in the rendered output.
extern const char* const kMetricLabels[9];

// The metric values in kMetricLabels order, formatted to six decimals;
// rates with no defined value render as the empty string.
std::vector<std::string> metric_cells(const Metrics& m);

// Header plus one data row. Columns: suite, mode, backend, seed, episodes,
// tasks, repeats, then kMetricLabels with sigma columns after the three
// mean-and-sigma metrics.
std::string metrics_csv(const RunInfo& info, const Metrics& m);

// Fixed-width rendering of the same row for reading in a terminal.
std::string metrics_text(const RunInfo& info, const Metrics& m);

}  // namespace sclplan::bench
