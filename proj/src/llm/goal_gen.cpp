#include "sclplan/llm/goal_gen.hpp"

#include "sclplan/llm/prompts.hpp"
#include "sclplan/pddl/errors.hpp"
#include "sclplan/pddl/parser.hpp"
#include "sclplan/world/belief.hpp"

namespace sclplan::llm {

GoalOutcome generate_goal(CompletionClient& client, const pddl::Domain& domain,
                          const std::string& task_nl,
                          const world::SceneGraph& scene,
                          const std::string& fingerprint_prefix,
                          int first_call_index, int max_retries) {
    std::vector<pddl::TypedObject> objects;
    for (const auto& [id, e] : scene.entities)
        objects.push_back({id, world::entity_type(e)});

    std::vector<ChatTurn> turns = goal_prompt(domain, task_nl, scene);
    GoalOutcome out;
    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        std::string fp = fingerprint_prefix + "/goal:" +
                         std::to_string(first_call_index + attempt);
        Completion c = client.complete(turns, fp);
        out.usage += c.usage;
        ++out.calls;
        out.raw = c.text;
        try {
            out.goal = pddl::parse_goal(c.text, domain, objects,
                                        {.check_objects = false});
            out.ok = true;
            return out;
        } catch (const pddl::GoalParseError& e) {
            out.error = e.what();
            turns.push_back({"assistant", c.text});
            turns.push_back({"user",
                             std::string("That goal could not be parsed: ") +
                                 e.what() +
                                 " Reply with exactly one s-expression of "
                                 "the form (and (predicate arg ...) ...)."});
        }
    }
    return out;
}

}  // namespace sclplan::llm
