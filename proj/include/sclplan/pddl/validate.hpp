#pragma once

#include <vector>

#include "sclplan/pddl/ground.hpp"
#include "sclplan/util/bitset.hpp"

namespace sclplan::pddl {

// False whenever the task is flagged goal_impossible.
bool goal_holds(const StripsTask& task, const util::DynBitset& state);

struct PlanTrace {
    bool valid = false;           // ran to completion and satisfied the goal
    bool goal_satisfied = false;  // goal held in the final state reached
    // Index of the first action whose preconditions were unmet (or whose
    // index was out of range); -1 when every action applied.
    int violation_index = -1;
    // states[0] is init; states[i+1] is the state after plan[i]. Truncated
    // at the violating action when there is one.
    std::vector<std::vector<int>> states;
};

// Total over arbitrary index sequences: out-of-range indices are reported as
// violations, never dereferenced.
PlanTrace validate_plan(const StripsTask& task, const std::vector<int>& plan);

}  // namespace sclplan::pddl
