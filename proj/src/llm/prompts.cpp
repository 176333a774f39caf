#include "sclplan/llm/prompts.hpp"

#include <sstream>

#include "sclplan/util/strings.hpp"

namespace sclplan::llm {

namespace {

// Dynamic flags worth surfacing to the model, with readable phrasing.
// Everything else (bookkeeping like reachable or spoken-to) stays out of
// the summary; the environment reports those through observations.
const std::vector<std::pair<const char*, const char*>> kItemConditions = {
    {"ishot", "hot"},       {"iscold", "cold"},     {"iscooked", "cooked"},
    {"isclean", "clean"},   {"isfilled", "filled"}, {"issliced", "sliced"},
    {"toggled", "switched on"}, {"inspected", "inspected"},
};

std::string item_conditions(const world::Entity& e) {
    std::vector<std::string> parts;
    for (const auto& [pred, word] : kItemConditions)
        if (e.flag(pred)) parts.push_back(word);
    return util::join(parts, ", ");
}

}  // namespace

std::string state_summary(const world::SceneGraph& scene) {
    std::ostringstream out;
    if (scene.agent_location == world::kNowhere)
        out << "You are in the middle of the room.";
    else
        out << "You are at " << scene.agent_location << ".";
    if (!scene.agent_standing) out << " You are sitting.";
    if (scene.holding.empty())
        out << " Your hand is empty.";
    else
        out << " You are holding " << scene.holding << ".";
    out << "\n";

    for (const auto& [id, e] : scene.entities) {
        if (e.is_human()) {
            out << id << " is at " << scene.container_of(id) << ".";
            std::vector<std::string> carried = scene.contents_of(id);
            if (!carried.empty())
                out << " " << id << " has " << util::join(carried, ", ")
                    << ".";
            out << "\n";
            continue;
        }
        if (!e.is_receptacle()) continue;
        out << id << ":";
        if (e.flag("openable"))
            out << (e.flag("isopen") ? " open," : " closed,");
        std::vector<std::string> inside;
        for (const auto& c : scene.contents_of(id)) {
            const auto* item = scene.find(c);
            if (item && !item->is_human()) inside.push_back(c);
        }
        if (inside.empty())
            out << " nothing seen inside";
        else
            out << " contains " << util::join(inside, ", ");
        if (e.flag("toggled")) out << ", switched on";
        out << ".\n";
    }

    std::string conditions;
    for (const auto& [id, e] : scene.entities) {
        if (e.is_receptacle() || e.is_human()) continue;
        std::string c = item_conditions(e);
        if (!c.empty()) conditions += id + " is " + c + ". ";
    }
    if (!conditions.empty()) {
        conditions.pop_back();
        out << conditions << "\n";
    }
    return out.str();
}

std::string catalog_text(sim::ActionSet set) {
    std::ostringstream out;
    for (const auto& entry : sim::action_catalog(set))
        out << "- " << entry.template_text << ": " << entry.description
            << "\n";
    out << "- finish: Declare the task complete.\n";
    return out.str();
}

std::vector<ChatTurn> goal_prompt(const pddl::Domain& domain,
                                  const std::string& task_nl,
                                  const world::SceneGraph& scene) {
    std::ostringstream sys;
    sys << "You translate household tasks into PDDL goal conditions. "
           "Reply with exactly one s-expression of the form "
           "(and (predicate arg ...) ...) and nothing else. Use only the "
           "predicates listed and refer to objects by their exact names. "
           "You may name objects that have not been seen yet if the task "
           "requires them.";

    std::ostringstream user;
    user << "Task: " << task_nl << "\n\n";
    user << "Available predicates:\n";
    for (const auto& p : domain.predicates) {
        user << "- (" << p.name;
        for (const auto& param : p.params)
            user << " ?" << param.name << " - " << param.type;
        user << ")\n";
    }
    user << "\nObjects seen so far:\n";
    for (const auto& [id, e] : scene.entities)
        user << "- " << id << "\n";
    user << "\nCurrent state:\n" << state_summary(scene);
    user << "\nWrite the goal condition for this task.";

    return {{"system", sys.str()}, {"user", user.str()}};
}

std::vector<ChatTurn> react_prompt(sim::ActionSet set,
                                   const std::string& task_nl,
                                   const world::SceneGraph& scene,
                                   const std::vector<HistoryItem>& history) {
    std::ostringstream sys;
    sys << "You control an agent in a household. Decide the single next "
           "action. Reply in exactly this format:\n"
           "Thought: <one sentence of reasoning>\n"
           "Action: <one action from the list>\n"
           "When the task is done, reply with `Action: finish`.";

    std::ostringstream user;
    user << "Task: " << task_nl << "\n\n";
    user << "Actions you can take:\n" << catalog_text(set) << "\n";
    user << "Current state:\n" << state_summary(scene) << "\n";
    if (history.empty()) {
        user << "Nothing has been tried yet.\n";
    } else {
        user << "History so far:\n";
        for (size_t i = 0; i < history.size(); ++i)
            user << (i + 1) << ". > " << history[i].action << "\n   "
                 << history[i].observation << "\n";
    }
    user << "\nWhat is the next action?";

    return {{"system", sys.str()}, {"user", user.str()}};
}

}  // namespace sclplan::llm
