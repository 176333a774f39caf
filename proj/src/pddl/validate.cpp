#include "sclplan/pddl/validate.hpp"

#include "sclplan/util/bitset.hpp"

namespace sclplan::pddl {

namespace {

std::vector<int> to_sorted(const util::DynBitset& b) {
    std::vector<int> out;
    b.for_each_set([&](size_t i) { out.push_back(static_cast<int>(i)); });
    return out;
}

}  // namespace

bool goal_holds(const StripsTask& task, const util::DynBitset& state) {
    if (task.goal_impossible) return false;
    for (const auto& [idx, pos] : task.goal)
        if (state.test(static_cast<size_t>(idx)) != pos) return false;
    return true;
}

PlanTrace validate_plan(const StripsTask& task, const std::vector<int>& plan) {
    util::DynBitset state(static_cast<size_t>(task.num_atoms()));
    for (int i : task.init) state.set(static_cast<size_t>(i));

    PlanTrace trace;
    trace.states.push_back(to_sorted(state));

    for (size_t step = 0; step < plan.size(); ++step) {
        int ai = plan[step];
        if (ai < 0 || ai >= static_cast<int>(task.actions.size())) {
            trace.violation_index = static_cast<int>(step);
            return trace;
        }
        const GroundAction& a = task.actions[static_cast<size_t>(ai)];
        bool applicable = true;
        for (int idx : a.pre_pos)
            if (!state.test(static_cast<size_t>(idx))) {
                applicable = false;
                break;
            }
        if (applicable)
            for (int idx : a.pre_neg)
                if (state.test(static_cast<size_t>(idx))) {
                    applicable = false;
                    break;
                }
        if (!applicable) {
            trace.violation_index = static_cast<int>(step);
            return trace;
        }
        for (int idx : a.del) state.reset(static_cast<size_t>(idx));
        for (int idx : a.add) state.set(static_cast<size_t>(idx));
        trace.states.push_back(to_sorted(state));
    }

    trace.goal_satisfied = goal_holds(task, state);
    trace.valid = trace.goal_satisfied;
    return trace;
}

}  // namespace sclplan::pddl
