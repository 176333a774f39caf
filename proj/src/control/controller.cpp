#include "sclplan/control/controller.hpp"

#include <utility>

#include "sclplan/control/pv.hpp"
#include "sclplan/llm/goal_gen.hpp"
#include "sclplan/llm/react.hpp"
#include "sclplan/pddl/ground.hpp"
#include "sclplan/world/belief.hpp"

namespace sclplan::control {

const char* mode_name(Mode m) {
    switch (m) {
        case Mode::ReactOnly: return "react";
        case Mode::ReactPV: return "react-pv";
        case Mode::SCLPlan: return "sclplan";
        case Mode::SymbolicOnly: return "symbolic";
    }
    return "?";
}

std::optional<Mode> mode_from_name(const std::string& name) {
    if (name == "react") return Mode::ReactOnly;
    if (name == "react-pv") return Mode::ReactPV;
    if (name == "sclplan") return Mode::SCLPlan;
    if (name == "symbolic") return Mode::SymbolicOnly;
    return std::nullopt;
}

const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::React: return "react";
        case Provenance::PV: return "pv";
        case Provenance::GSP: return "gsp";
    }
    return "?";
}

namespace {

// What one pass of global symbolic planning accomplished.
enum class GspRun {
    NoProgress,  // no plan, or nothing worth executing
    Executed,    // ran at least one step and the plan ended cleanly
    Failed,      // the environment rejected a step, or the plan finished
                 // without the task being done: the goal guess was wrong
    OutOfSteps,
};

struct Runner {
    sim::Simulator& env;
    llm::CompletionClient& client;
    Mode mode;
    const Budgets& budget;

    EpisodeResult result;
    world::SceneGraph belief;
    std::vector<llm::HistoryItem> history;
    std::optional<pddl::Goal> goal;
    int max_steps = 0;
    int goal_call_index = 0;   // fingerprint counters, one per completion
    int react_call_index = 0;

    bool steps_left() const { return env.steps() < max_steps; }
    bool calls_left() const { return result.llm_calls < budget.max_llm_calls; }

    bool exec(const std::string& cmd, Provenance prov, bool valid_on_arrival,
              const llm::CompletionUsage& attributed) {
        world::Observation obs = env.step(cmd);
        StepRecord rec;
        rec.index = static_cast<int>(result.steps.size());
        rec.provenance = prov;
        rec.command = cmd;
        rec.observation = obs.text;
        rec.success = obs.success;
        rec.valid_on_arrival = valid_on_arrival;
        rec.usage = attributed;
        result.steps.push_back(std::move(rec));
        belief = world::merge_observation(belief, obs);
        history.push_back({cmd, obs.text});
        return obs.success;
    }

    void ensure_goal() {
        if (goal || !calls_left()) return;
        llm::GoalOutcome out =
            llm::generate_goal(client, env.domain(), env.task().nl_goal,
                               belief, env.task().id, goal_call_index);
        goal_call_index += out.calls;
        result.llm_calls += out.calls;
        result.goal_calls += out.calls;
        result.usage += out.usage;
        if (out.ok) goal = std::move(out.goal);
    }

    GspRun run_gsp() {
        pddl::Problem problem;
        try {
            problem = world::to_problem(belief, env.domain(), *goal);
        } catch (const world::UnknownGoalObject&) {
            // The goal names something not yet seen. Exploring is ReAct's
            // job, so fall through without touching the cached goal.
            return GspRun::NoProgress;
        }
        pddl::StripsTask task = pddl::ground(env.domain(), problem);
        if (task.goal_impossible) return GspRun::NoProgress;
        search::SolveOutcome sol = search::solve(task, budget.search);
        if (!sol.solved()) return GspRun::NoProgress;
        result.goal_found_globally = true;
        if (sol.plan.actions.empty()) return GspRun::NoProgress;
        bool ran_any = false;
        for (int idx : sol.plan.actions) {
            if (!steps_left()) return GspRun::OutOfSteps;
            const pddl::GroundAction& ga = task.actions[idx];
            std::string cmd =
                sim::render_command(env.action_set(), ga.schema, ga.args);
            if (!exec(cmd, Provenance::GSP, true, {})) return GspRun::Failed;
            ran_any = true;
            if (env.goal_reached()) return GspRun::Executed;
        }
        // Whole plan ran but the task is not actually done, so the goal the
        // plan was built for does not capture the task.
        if (!env.goal_reached()) return GspRun::Failed;
        return ran_any ? GspRun::Executed : GspRun::NoProgress;
    }

    // One prediction-verify-execute round. Returns true when the proposer
    // declared the task finished.
    bool react_round() {
        llm::ReactOutcome out = llm::react_next_action(
            client, env.action_set(), env.task().nl_goal, belief, history,
            env.task().id, react_call_index);
        react_call_index += out.calls;
        result.llm_calls += out.calls;
        result.usage += out.usage;

        if (!out.ok) {
            // No usable action even after retries. Let the environment shrug
            // at the raw reply so the failure shows up in the history.
            if (steps_left()) exec(out.raw, Provenance::React, false, out.usage);
            return false;
        }
        const llm::ParsedAction& act = out.action;
        if (act.is_finish) return true;
        ++result.react_predictions;

        if (mode == Mode::ReactOnly) {
            bool ok = exec(act.command, Provenance::React, true, out.usage);
            result.steps.back().valid_on_arrival = ok;
            if (!ok) ++result.invalid_react;
            return false;
        }

        PvOutcome pv = precondition_verify(act.command, belief, env.domain(),
                                           env.action_set(), budget.search);
        if (pv.valid()) {
            bool ok = exec(act.command, Provenance::React, true, out.usage);
            if (!ok) ++result.invalid_react;  // should not happen; be honest
            return false;
        }
        ++result.invalid_react;
        if (pv.kind == PvKind::Repair) {
            for (const std::string& cmd : pv.repair) {
                if (!steps_left()) return false;
                if (!exec(cmd, Provenance::PV, true, {})) return false;
            }
            if (!steps_left()) return false;
            if (exec(act.command, Provenance::React, false, out.usage))
                ++result.invalid_corrected;
        } else {
            // Nothing can make the action possible from here. Skip the
            // environment entirely and tell the proposer why.
            history.push_back(
                {act.command, "You can't do that yet: " + pv.reason + "."});
        }
        return false;
    }

    EpisodeResult run() {
        result.task_id = env.task().id;
        result.mode = mode;
        belief = world::merge_observation({}, env.reset());
        max_steps =
            budget.max_steps > 0 ? budget.max_steps : env.task().max_steps;

        while (true) {
            if (env.goal_reached()) {
                result.success = true;
                result.stop_reason = "goal";
                break;
            }
            if (!steps_left()) {
                result.stop_reason = "step-budget";
                break;
            }
            if (!calls_left()) {
                result.stop_reason = "llm-budget";
                break;
            }

            int steps_before = static_cast<int>(result.steps.size());
            int calls_before = result.llm_calls;

            if (mode == Mode::SCLPlan || mode == Mode::SymbolicOnly) {
                ensure_goal();
                if (goal) {
                    GspRun g = run_gsp();
                    if (g == GspRun::Executed || g == GspRun::OutOfSteps)
                        continue;
                    if (g == GspRun::Failed && budget.regoal_after_gsp_failure)
                        goal.reset();
                }
                if (mode == Mode::SymbolicOnly) {
                    // Without ReAct nothing else can change the world. Stop
                    // once an iteration neither acted nor asked anything,
                    // since repeating it would go the same way.
                    bool moved =
                        static_cast<int>(result.steps.size()) > steps_before ||
                        result.llm_calls > calls_before;
                    if (!moved) {
                        result.stop_reason = "stalled";
                        break;
                    }
                    continue;
                }
            }

            if (react_round()) {
                result.success = env.goal_reached();
                result.stop_reason = "finish";
                break;
            }
        }

        result.env_steps = static_cast<int>(result.steps.size());
        return std::move(result);
    }
};

}  // namespace

EpisodeResult run_episode(sim::Simulator& env, llm::CompletionClient& client,
                          Mode mode, const Budgets& budgets) {
    Runner runner{env, client, mode, budgets};
    return runner.run();
}

}  // namespace sclplan::control
