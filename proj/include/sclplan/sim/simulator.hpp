#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "sclplan/pddl/ast.hpp"
#include "sclplan/sim/action_language.hpp"
#include "sclplan/sim/rules.hpp"
#include "sclplan/sim/task.hpp"
#include "sclplan/world/scene.hpp"

namespace sclplan::sim {

// Deterministic text world. Actions arrive as natural-language commands,
// get matched against the action catalog, checked against the PDDL schema
// preconditions on ground truth, and applied; environment physics and
// dialogue then run to fixpoint. Every call with the same seed and command
// sequence produces byte-identical observations.
//
// Failed actions still consume a step. Unparseable input earns
// "Nothing happens."
class Simulator {
public:
    Simulator(pddl::Domain domain, ActionSet set, world::SceneGraph layout,
              std::vector<std::vector<std::string>> shuffle_groups,
              TaskSpec task, uint64_t seed);
    Simulator(const Suite& suite, const TaskSpec& task, uint64_t seed);

    // Rebuilds ground truth from the layout (placements shuffled by seed)
    // and returns the opening observation.
    world::Observation reset();

    world::Observation step(const std::string& command_text);

    // Ground-truth check of the task's success condition.
    bool goal_reached() const;

    int steps() const { return steps_; }
    int max_steps() const { return task_.max_steps; }
    const TaskSpec& task() const { return task_; }
    ActionSet action_set() const { return set_; }
    const pddl::Domain& domain() const { return domain_; }
    const world::SceneGraph& truth() const { return truth_; }
    const std::set<std::string>& revealed() const { return revealed_; }

private:
    world::Observation fail(std::string text);
    void apply_shuffle();
    void run_rules(std::vector<world::Delta>& deltas_out,
                   std::vector<std::string>& messages_out);
    std::set<std::string> visible_now() const;
    // Moves newly visible entities into revealed_ and fills obs.revealed /
    // obs.revealed_relations.
    void collect_reveals(world::Observation& obs);
    std::string location_report(const std::string& recep) const;
    std::vector<std::string> visible_contents(const std::string& recep) const;

    pddl::Domain domain_;
    ActionSet set_;
    world::SceneGraph layout_;
    std::vector<std::vector<std::string>> shuffle_groups_;
    TaskSpec task_;
    uint64_t seed_;
    std::vector<ImplicitRule> rules_;

    world::SceneGraph truth_;
    std::set<std::string> revealed_;
    int steps_ = 0;
};

// True when `lit` holds in the scene; entities the scene lacks make positive
// literals false (and negative ones true).
bool eval_literal(const world::SceneGraph& scene, const pddl::GroundLiteral& lit);
bool eval_goal(const world::SceneGraph& scene, const pddl::Goal& goal);

}  // namespace sclplan::sim
