#pragma once

#include <string>

#include "sclplan/llm/client.hpp"
#include "sclplan/pddl/ast.hpp"
#include "sclplan/world/scene.hpp"

namespace sclplan::llm {

struct GoalOutcome {
    bool ok = false;
    pddl::Goal goal;
    std::string raw;         // the response the goal was parsed from
    CompletionUsage usage;   // summed over all attempts
    int calls = 0;           // completions consumed
    std::string error;       // last parse complaint when !ok
};

// Asks the model for a PDDL goal matching the task. Unparsable responses
// are retried up to max_retries times with the parser's complaint appended
// to the conversation; when retries run out the outcome carries ok=false
// and the caller proceeds without a symbolic goal. Goal arguments are not
// resolved against seen objects here: naming a not-yet-discovered entity is
// legitimate and surfaces later when the problem is built.
//
// Call fingerprints are "<prefix>/goal:<n>" with n starting at
// first_call_index and advancing once per attempt.
GoalOutcome generate_goal(CompletionClient& client, const pddl::Domain& domain,
                          const std::string& task_nl,
                          const world::SceneGraph& scene,
                          const std::string& fingerprint_prefix,
                          int first_call_index, int max_retries = 2);

}  // namespace sclplan::llm
