#pragma once

#include <string>
#include <vector>

#include "sclplan/pddl/ast.hpp"
#include "sclplan/search/solve.hpp"
#include "sclplan/sim/action_language.hpp"
#include "sclplan/world/scene.hpp"

namespace sclplan::control {

enum class PvKind {
    Valid,          // every precondition already holds in the belief
    Repair,         // a plan exists that makes the preconditions hold
    Unsatisfiable,  // no such plan, or the action cannot even be grounded
};

struct PvOutcome {
    PvKind kind = PvKind::Unsatisfiable;
    // Commands to run before the verified action, in order. Only for Repair.
    std::vector<std::string> repair;
    // Human-readable explanation, filled for Unsatisfiable. Worded so it can
    // be fed back to the proposer as an observation.
    std::string reason;
    uint64_t nodes = 0;  // search effort spent on the sub-goal, if any

    bool valid() const { return kind == PvKind::Valid; }
};

// Checks a proposed command against the agent's belief. Mirrors the
// simulator's own acceptance rules (parse, argument resolution, type check,
// precondition evaluation), so Valid means the environment will take the
// action as-is. Unmet preconditions become a sub-goal handed to the
// planner; a cost-zero plan is Valid, a positive-cost plan comes back as
// Repair, everything else is Unsatisfiable.
PvOutcome precondition_verify(const std::string& command,
                              const world::SceneGraph& belief,
                              const pddl::Domain& domain, sim::ActionSet set,
                              const search::SearchConfig& config = {});

}  // namespace sclplan::control
