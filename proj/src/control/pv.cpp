#include "sclplan/control/pv.hpp"

#include <map>
#include <stdexcept>

#include "sclplan/pddl/ground.hpp"
#include "sclplan/sim/simulator.hpp"
#include "sclplan/world/belief.hpp"

namespace sclplan::control {

namespace {

PvOutcome unsat(std::string reason) {
    PvOutcome out;
    out.kind = PvKind::Unsatisfiable;
    out.reason = std::move(reason);
    return out;
}

}  // namespace

PvOutcome precondition_verify(const std::string& command,
                              const world::SceneGraph& belief,
                              const pddl::Domain& domain, sim::ActionSet set,
                              const search::SearchConfig& config) {
    auto parsed = sim::parse_command(set, command);
    if (!parsed) return unsat("that is not one of the available actions");

    sim::ResolvedAction res = sim::resolve_command(*parsed, belief);
    if (!res.ok()) return unsat(res.error);

    const pddl::ActionSchema* schema = domain.find_action(res.schema);
    if (!schema)
        throw std::logic_error("catalog names unknown schema " + res.schema);

    // Same argument checks the environment applies, but against the belief:
    // the entity must be known and of the parameter's type.
    for (size_t i = 0; i < schema->params.size(); ++i) {
        const world::Entity* e = belief.find(res.args[i]);
        if (!e)
            return unsat("there is no " + res.args[i] +
                         " anywhere you know of");
        if (!domain.is_subtype(world::entity_type(*e), schema->params[i].type))
            return unsat(res.args[i] + " is not something you can " +
                         parsed->entry->name);
    }

    std::map<std::string, std::string> bind;
    for (size_t i = 0; i < schema->params.size(); ++i)
        bind[schema->params[i].name] = res.args[i];

    // Ground the precondition with the command's own bindings. Equality
    // literals are fixed by those bindings, so no plan can change them; they
    // are checked here and kept out of the sub-goal.
    pddl::Goal subgoal;
    bool all_hold = true;
    for (const auto& lit : schema->precondition) {
        pddl::GroundLiteral gl;
        gl.negated = lit.negated;
        gl.atom.predicate = lit.predicate;
        for (const auto& arg : lit.args) {
            auto it = bind.find(arg);
            gl.atom.args.push_back(it == bind.end() ? arg : it->second);
        }
        if (lit.predicate == "=") {
            if (!sim::eval_literal(belief, gl))
                return unsat("that needs two different things, not " +
                             gl.atom.args[0] + " twice");
            continue;
        }
        if (!sim::eval_literal(belief, gl)) all_hold = false;
        subgoal.push_back(std::move(gl));
    }

    PvOutcome out;
    if (all_hold) {
        out.kind = PvKind::Valid;
        return out;
    }

    // Unmet preconditions become a planning sub-goal. The full grounded set
    // goes in, not just the unmet part, so a repair cannot achieve one
    // precondition by breaking another.
    pddl::Problem problem;
    try {
        problem = world::to_problem(belief, domain, subgoal);
    } catch (const world::UnknownGoalObject& e) {
        return unsat(e.what());
    }
    pddl::StripsTask task = pddl::ground(domain, problem);
    if (task.goal_impossible)
        return unsat("nothing you know of can make that possible");

    search::SolveOutcome sol = search::solve(task, config);
    out.nodes = sol.nodes;
    if (!sol.solved())
        return unsat("no way to set that up could be worked out");
    if (sol.plan.actions.empty()) {
        // The search thinks the preconditions already hold even though the
        // direct check found one unmet. The checks mirror each other, so
        // treat the direct result as authoritative and report no repair.
        out.kind = PvKind::Unsatisfiable;
        out.reason = "verifier disagreement on current state";
        return out;
    }
    out.kind = PvKind::Repair;
    for (int idx : sol.plan.actions) {
        const auto& ga = task.actions[idx];
        out.repair.push_back(sim::render_command(set, ga.schema, ga.args));
    }
    return out;
}

}  // namespace sclplan::control
