#pragma once

#include <map>
#include <string>
#include <vector>

#include "sclplan/pddl/ast.hpp"
#include "sclplan/sim/rules.hpp"
#include "sclplan/world/scene.hpp"

namespace sclplan::sim {

// One benchmark episode: a natural-language instruction, the layout it runs
// in, and the ground-truth success condition. The success goal may name
// entities that only come into existence during the episode (slices), so it
// is parsed without object resolution.
struct TaskSpec {
    std::string id;
    std::string nl_goal;
    std::string layout;
    pddl::Goal success;
    int max_steps = 50;
    std::vector<DialogueSpec> dialogue;
};

// A task collection sharing one action set, domain, and layout pool.
struct Suite {
    std::string name;
    ActionSet action_set = ActionSet::Alfworld;
    pddl::Domain domain;
    std::vector<TaskSpec> tasks;
    std::map<std::string, world::SceneGraph> layouts;
    // Per layout: groups of item ids whose placements get permuted by the
    // episode seed, so memorized trajectories do not transfer across seeds.
    std::map<std::string, std::vector<std::vector<std::string>>> shuffle_groups;

    const TaskSpec* find_task(const std::string& id) const;
};

// File name of the planning domain backing an action set.
std::string domain_file_for(ActionSet set);

// Reads fixtures/suites/<name>.json along with the domain and every layout
// the tasks reference. Throws std::runtime_error on malformed input.
Suite load_suite(const std::string& fixtures_root, const std::string& name);

}  // namespace sclplan::sim
