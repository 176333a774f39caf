#include "sclplan/bench/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <map>

namespace sclplan::bench {

namespace {

struct MeanSigma {
    double mean = 0.0;
    double sigma = 0.0;
};

// Population formula: sigma^2 = E[x^2] - E[x]^2. Repeats of one task are
// the whole population of interest, not a sample from a larger one.
MeanSigma mean_sigma(const std::vector<double>& xs) {
    double sum = 0.0, sumsq = 0.0;
    for (double x : xs) {
        sum += x;
        sumsq += x * x;
    }
    double n = static_cast<double>(xs.size());
    double mean = sum / n;
    double var = sumsq / n - mean * mean;
    return {mean, var > 0.0 ? std::sqrt(var) : 0.0};
}

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string fmt_opt(const std::optional<double>& v) {
    return v ? fmt6(*v) : std::string();
}

}  // namespace

Metrics aggregate(const std::vector<control::EpisodeResult>& episodes) {
    if (episodes.empty())
        throw ConfigError("no episodes to aggregate");

    // Group by task, keeping first-seen order so output does not depend on
    // map iteration quirks.
    std::vector<std::string> task_order;
    std::map<std::string, std::vector<const control::EpisodeResult*>> by_task;
    for (const auto& e : episodes) {
        auto [it, inserted] = by_task.try_emplace(e.task_id);
        if (inserted) task_order.push_back(e.task_id);
        it->second.push_back(&e);
    }

    Metrics m;
    m.episodes = static_cast<int>(episodes.size());
    m.tasks = static_cast<int>(task_order.size());
    m.repeats = static_cast<int>(by_task.begin()->second.size());
    for (const auto& [id, group] : by_task)
        if (static_cast<int>(group.size()) != m.repeats) m.repeats = 0;

    double n_tasks = static_cast<double>(m.tasks);
    for (const auto& id : task_order) {
        std::vector<double> succ, toks, steps;
        double global = 0.0;
        for (const control::EpisodeResult* e : by_task[id]) {
            succ.push_back(e->success ? 1.0 : 0.0);
            toks.push_back(static_cast<double>(e->usage.total()));
            steps.push_back(static_cast<double>(e->env_steps));
            global += e->goal_found_globally ? 1.0 : 0.0;
        }
        MeanSigma s = mean_sigma(succ);
        MeanSigma t = mean_sigma(toks);
        MeanSigma v = mean_sigma(steps);
        m.success_mean += s.mean / n_tasks;
        m.success_sigma += s.sigma / n_tasks;
        m.tokens_mean += t.mean / n_tasks;
        m.tokens_sigma += t.sigma / n_tasks;
        m.steps_mean += v.mean / n_tasks;
        m.steps_sigma += v.sigma / n_tasks;
        m.global_plan_rate += global / static_cast<double>(succ.size()) / n_tasks;
    }

    long total_steps = 0, react = 0, pv = 0, gsp = 0;
    long predictions = 0, invalid = 0, corrected = 0;
    for (const auto& e : episodes) {
        total_steps += e.env_steps;
        react += e.provenance_count(control::Provenance::React);
        pv += e.provenance_count(control::Provenance::PV);
        gsp += e.provenance_count(control::Provenance::GSP);
        predictions += e.react_predictions;
        invalid += e.invalid_react;
        corrected += e.invalid_corrected;
    }
    if (total_steps > 0) {
        m.react_share = static_cast<double>(react) / total_steps;
        m.pv_share = static_cast<double>(pv) / total_steps;
        m.gsp_share = static_cast<double>(gsp) / total_steps;
    }
    if (predictions > 0)
        m.invalid_react_rate = static_cast<double>(invalid) / predictions;
    if (invalid > 0)
        m.corrected_rate = static_cast<double>(corrected) / invalid;
    return m;
}

const char* const kMetricLabels[9] = {
    "Task Success",
    "Token Count",
    "Env Steps",
    "Percentage ReAct Actions",
    "Percentage PV Actions",
    "Percentage GSP Actions",
    "Invalid ReAct Predictions",
    "Invalid ReAct Predictions Corrected w/ PV",
    "Global Symbolic Plan Found",
};

std::vector<std::string> metric_cells(const Metrics& m) {
    return {
        fmt6(m.success_mean),
        fmt6(m.tokens_mean),
        fmt6(m.steps_mean),
        fmt6(m.react_share),
        fmt6(m.pv_share),
        fmt6(m.gsp_share),
        fmt_opt(m.invalid_react_rate),
        fmt_opt(m.corrected_rate),
        fmt6(m.global_plan_rate),
    };
}

std::string metrics_csv(const RunInfo& info, const Metrics& m) {
    std::string out =
        "suite,mode,backend,seed,episodes,tasks,repeats"
        ",Task Success,Task Success Sigma"
        ",Token Count,Token Count Sigma"
        ",Env Steps,Env Steps Sigma"
        ",Percentage ReAct Actions,Percentage PV Actions"
        ",Percentage GSP Actions,Invalid ReAct Predictions"
        ",Invalid ReAct Predictions Corrected w/ PV"
        ",Global Symbolic Plan Found\n";
    out += info.suite + ',' + info.mode + ',' + info.backend + ',' +
           std::to_string(info.seed) + ',' + std::to_string(m.episodes) + ',' +
           std::to_string(m.tasks) + ',' + std::to_string(m.repeats);
    out += ',' + fmt6(m.success_mean) + ',' + fmt6(m.success_sigma);
    out += ',' + fmt6(m.tokens_mean) + ',' + fmt6(m.tokens_sigma);
    out += ',' + fmt6(m.steps_mean) + ',' + fmt6(m.steps_sigma);
    out += ',' + fmt6(m.react_share) + ',' + fmt6(m.pv_share);
    out += ',' + fmt6(m.gsp_share) + ',' + fmt_opt(m.invalid_react_rate);
    out += ',' + fmt_opt(m.corrected_rate) + ',' + fmt6(m.global_plan_rate);
    out += '\n';
    return out;
}

std::string metrics_text(const RunInfo& info, const Metrics& m) {
    char line[160];
    std::string out;
    out += "suite:    " + info.suite + "\n";
    out += "mode:     " + info.mode + "\n";
    out += "backend:  " + info.backend + "\n";
    out += "seed:     " + std::to_string(info.seed) + "\n";
    std::snprintf(line, sizeof(line), "episodes: %d (%d tasks x %d repeats)\n\n",
                  m.episodes, m.tasks, m.repeats);
    out += line;

    auto row = [&](const char* label, double mean,
                   const double* sigma) {
        if (sigma)
            std::snprintf(line, sizeof(line), "%-42s %10.3f (+/- %.3f)\n",
                          label, mean, *sigma);
        else
            std::snprintf(line, sizeof(line), "%-42s %10.3f\n", label, mean);
        out += line;
    };
    auto opt_row = [&](const char* label, const std::optional<double>& v) {
        if (v) {
            row(label, *v, nullptr);
        } else {
            std::snprintf(line, sizeof(line), "%-42s %10s\n", label, "n/a");
            out += line;
        }
    };

    row(kMetricLabels[0], m.success_mean, &m.success_sigma);
    row(kMetricLabels[1], m.tokens_mean, &m.tokens_sigma);
    row(kMetricLabels[2], m.steps_mean, &m.steps_sigma);
    row(kMetricLabels[3], m.react_share, nullptr);
    row(kMetricLabels[4], m.pv_share, nullptr);
    row(kMetricLabels[5], m.gsp_share, nullptr);
    opt_row(kMetricLabels[6], m.invalid_react_rate);
    opt_row(kMetricLabels[7], m.corrected_rate);
    row(kMetricLabels[8], m.global_plan_rate, nullptr);
    return out;
}

}  // namespace sclplan::bench
