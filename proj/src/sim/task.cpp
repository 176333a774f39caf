#include "sclplan/sim/task.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "sclplan/pddl/parser.hpp"
#include "sclplan/world/scene_json.hpp"

namespace sclplan::sim {

namespace {

using nlohmann::json;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

DialogueSpec load_dialogue(const json& j) {
    DialogueSpec d;
    d.human = j.at("human").get<std::string>();
    d.wants = j.at("wants").get<std::string>();
    d.yields = j.at("yields").get<std::string>();
    d.demand_text = j.at("demand").get<std::string>();
    d.yield_text = j.at("yield").get<std::string>();
    if (j.contains("thanks")) d.thanks_text = j["thanks"].get<std::string>();
    return d;
}

std::vector<std::vector<std::string>> load_groups(const json& j) {
    std::vector<std::vector<std::string>> groups;
    if (!j.contains("shuffle_groups")) return groups;
    for (const auto& g : j.at("shuffle_groups")) {
        std::vector<std::string> ids;
        for (const auto& id : g) ids.push_back(id.get<std::string>());
        if (ids.size() > 1) groups.push_back(std::move(ids));
    }
    return groups;
}

}  // namespace

const TaskSpec* Suite::find_task(const std::string& id) const {
    for (const auto& t : tasks)
        if (t.id == id) return &t;
    return nullptr;
}

std::string domain_file_for(ActionSet set) {
    switch (set) {
        case ActionSet::Alfworld: return "alfworld.pddl";
        case ActionSet::Thor: return "thorworld.pddl";
        case ActionSet::Robot: return "robotworld.pddl";
    }
    return {};
}

Suite load_suite(const std::string& fixtures_root, const std::string& name) {
    const std::string path = fixtures_root + "/suites/" + name + ".json";
    json j;
    try {
        j = json::parse(slurp(path));
    } catch (const json::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }

    Suite suite;
    suite.name = j.at("name").get<std::string>();
    suite.action_set = action_set_from_name(j.at("action_set").get<std::string>());
    suite.domain = pddl::parse_domain(
        slurp(fixtures_root + "/domains/" + domain_file_for(suite.action_set)));

    for (const auto& jt : j.at("tasks")) {
        TaskSpec t;
        t.id = jt.at("id").get<std::string>();
        t.nl_goal = jt.at("goal_text").get<std::string>();
        t.layout = jt.at("layout").get<std::string>();
        pddl::GoalParseOptions opts;
        opts.check_objects = false;
        t.success = pddl::parse_goal(jt.at("success").get<std::string>(),
                                     suite.domain, {}, opts);
        if (jt.contains("max_steps")) t.max_steps = jt["max_steps"].get<int>();
        if (jt.contains("dialogue"))
            for (const auto& jd : jt["dialogue"])
                t.dialogue.push_back(load_dialogue(jd));
        if (suite.find_task(t.id))
            throw std::runtime_error(path + ": duplicate task id " + t.id);
        suite.tasks.push_back(std::move(t));
    }

    for (const auto& t : suite.tasks) {
        if (suite.layouts.count(t.layout)) continue;
        const std::string lp = fixtures_root + "/layouts/" + t.layout + ".json";
        const std::string text = slurp(lp);
        suite.layouts[t.layout] = world::load_scene_file(lp);
        try {
            suite.shuffle_groups[t.layout] = load_groups(json::parse(text));
        } catch (const json::exception& e) {
            throw std::runtime_error(lp + ": " + e.what());
        }
    }
    return suite;
}

}  // namespace sclplan::sim
