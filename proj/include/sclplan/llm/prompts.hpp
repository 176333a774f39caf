#pragma once

#include <string>
#include <vector>

#include "sclplan/llm/client.hpp"
#include "sclplan/pddl/ast.hpp"
#include "sclplan/sim/action_language.hpp"
#include "sclplan/world/scene.hpp"

namespace sclplan::llm {

// One executed step as the model sees it in the history block.
struct HistoryItem {
    std::string action;       // command text as sent to the environment
    std::string observation;  // environment feedback
};

// Natural-language rendering of the believed scene: agent position and
// posture, what the hand holds, every known receptacle with its state and
// known contents, people, and any notable item conditions. Deterministic
// for a given scene.
std::string state_summary(const world::SceneGraph& scene);

// One line per command the environment accepts, with its argument shape.
std::string catalog_text(sim::ActionSet set);

// Phase-1 prompt: task, available predicates, known objects; asks for a
// single PDDL goal conjunction. Strictly zero-shot.
std::vector<ChatTurn> goal_prompt(const pddl::Domain& domain,
                                  const std::string& task_nl,
                                  const world::SceneGraph& scene);

// Phase-3 prompt: task, current state summary, the full action catalog and
// the complete step history. Asks for "Thought: ... Action: ...". Strictly
// zero-shot, and identical regardless of which planner components are
// enabled around it.
std::vector<ChatTurn> react_prompt(sim::ActionSet set,
                                   const std::string& task_nl,
                                   const world::SceneGraph& scene,
                                   const std::vector<HistoryItem>& history);

}  // namespace sclplan::llm
