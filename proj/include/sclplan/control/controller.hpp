#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "sclplan/llm/client.hpp"
#include "sclplan/search/solve.hpp"
#include "sclplan/sim/simulator.hpp"

namespace sclplan::control {

// Planner arms, ordered weakest to strongest on the expected success axis.
enum class Mode {
    ReactOnly,     // next-action prediction straight into the environment
    ReactPV,       // predictions verified and repaired before execution
    SCLPlan,       // goal generation + global symbolic planning + ReactPV
    SymbolicOnly,  // goal generation + global planning, no ReAct fallback
};

const char* mode_name(Mode m);
std::optional<Mode> mode_from_name(const std::string& name);

// Who decided an environment step: the LLM's prediction, a precondition
// repair plan, or the global symbolic planner.
enum class Provenance { React, PV, GSP };

const char* provenance_name(Provenance p);

struct StepRecord {
    int index = 0;  // 0-based position in the episode
    Provenance provenance = Provenance::React;
    std::string command;
    std::string observation;
    bool success = false;
    // Whether the action's preconditions held at the moment it ran. False
    // for predictions that needed a repair first.
    bool valid_on_arrival = true;
    // Completion spend attributed to this step. Zero for PV and GSP steps;
    // the LLM call that proposed a React step lands on that step's record.
    llm::CompletionUsage usage;
};

struct Budgets {
    int max_steps = 0;       // 0 means use the task's own limit
    int max_llm_calls = 60;  // completion calls per episode, all purposes
    // Whether a failed or fruitless symbolic plan invalidates the cached
    // goal. The goal is otherwise generated once and reused.
    bool regoal_after_gsp_failure = true;
    // The node budget is what actually bounds sub-goal and global searches;
    // the time cap is a wide safety net so wall-clock load cannot change
    // which outcome the search reports.
    search::SearchConfig search{.max_novelty_width = 2,
                                .node_budget = 200000,
                                .time_budget = std::chrono::minutes(1)};
};

struct EpisodeResult {
    std::string task_id;
    Mode mode = Mode::ReactOnly;
    bool success = false;
    // goal | finish | step-budget | llm-budget | stalled
    std::string stop_reason;
    int env_steps = 0;
    std::vector<StepRecord> steps;
    llm::CompletionUsage usage;  // total across every completion call
    int llm_calls = 0;
    int goal_calls = 0;         // completion calls spent generating goals
    int react_predictions = 0;  // parsed next-action proposals, finish aside
    int invalid_react = 0;      // of those, not immediately valid
    int invalid_corrected = 0;  // of those, repaired and then accepted
    // The global planner produced a plan for the full task at least once.
    bool goal_found_globally = false;

    int provenance_count(Provenance p) const {
        int n = 0;
        for (const auto& s : steps) n += (s.provenance == p);
        return n;
    }
};

// Runs one episode of the given mode against a freshly reset environment.
// The completion client supplies goal generation and next-action prediction;
// scripted or synthetic clients make the whole episode deterministic.
EpisodeResult run_episode(sim::Simulator& env, llm::CompletionClient& client,
                          Mode mode, const Budgets& budgets = {});

}  // namespace sclplan::control
