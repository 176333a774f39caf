#pragma once

#include "sclplan/pddl/ast.hpp"
#include "sclplan/world/scene.hpp"

namespace sclplan::world {

// PDDL type for an entity: receptacle and human markers win, everything else
// is an item.
std::string entity_type(const Entity& e);

// Builds the planning problem from the discovered portion of the scene.
// Undiscovered entities are absent entirely; a goal naming one throws
// UnknownGoalObject. Scene predicates with no schema in the domain are
// skipped (simulator-only bookkeeping).
pddl::Problem to_problem(const SceneGraph& scene, const pddl::Domain& domain,
                         const pddl::Goal& goal);

// Applies an observation to the belief. Revealed entities join the
// discovered set; deltas touching unknown entities are skipped. Merging the
// same observation twice leaves the scene unchanged.
SceneGraph merge_observation(const SceneGraph& scene, const Observation& obs);

}  // namespace sclplan::world
