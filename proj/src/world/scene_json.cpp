#include "sclplan/world/scene_json.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sclplan/util/strings.hpp"

namespace sclplan::world {

namespace {

using nlohmann::json;

std::map<std::string, bool> load_flags(const json& j) {
    std::map<std::string, bool> out;
    for (auto it = j.begin(); it != j.end(); ++it)
        out[util::to_lower(it.key())] = it.value().get<bool>();
    return out;
}

}  // namespace

SceneGraph load_scene_json(std::string_view text) {
    json j = json::parse(text);
    SceneGraph scene;

    for (const auto& je : j.at("entities")) {
        Entity e;
        e.id = util::to_lower(je.at("id").get<std::string>());
        e.cls = util::to_lower(je.value("class", std::string{}));
        if (je.contains("static")) e.static_preds = load_flags(je["static"]);
        if (je.contains("dynamic")) e.dynamic_preds = load_flags(je["dynamic"]);
        e.hidden = je.value("hidden", false);
        if (scene.entities.count(e.id))
            throw std::runtime_error("duplicate entity id '" + e.id + "'");
        scene.entities[e.id] = std::move(e);
    }

    if (j.contains("relations")) {
        for (const auto& jr : j["relations"]) {
            if (!jr.is_array() || jr.size() != 3)
                throw std::runtime_error("relation must be [subject, rel, object]");
            Relation r{util::to_lower(jr[0].get<std::string>()),
                       util::to_lower(jr[1].get<std::string>()),
                       util::to_lower(jr[2].get<std::string>())};
            if (r.rel != "in" && r.rel != "on" && r.rel != "at")
                throw std::runtime_error("unknown relation '" + r.rel + "'");
            if (!scene.has(r.subject))
                throw std::runtime_error("relation references unknown entity '" +
                                         r.subject + "'");
            if (!scene.has(r.object))
                throw std::runtime_error("relation references unknown entity '" +
                                         r.object + "'");
            scene.relations.insert(std::move(r));
        }
    }

    if (j.contains("agent")) {
        const auto& ja = j["agent"];
        if (ja.contains("location") && !ja["location"].is_null()) {
            scene.agent_location =
                util::to_lower(ja["location"].get<std::string>());
            if (scene.agent_location != kNowhere &&
                !scene.has(scene.agent_location))
                throw std::runtime_error("agent location '" +
                                         scene.agent_location + "' unknown");
        }
        if (ja.contains("standing")) scene.agent_standing = ja["standing"].get<bool>();
        if (ja.contains("holding") && !ja["holding"].is_null()) {
            scene.holding = util::to_lower(ja["holding"].get<std::string>());
            const Entity* held = scene.find(scene.holding);
            if (!held)
                throw std::runtime_error("held entity '" + scene.holding +
                                         "' unknown");
            if (!held->flag("pickupable"))
                throw std::runtime_error("held entity '" + scene.holding +
                                         "' is not pickupable");
        }
    }

    if (j.contains("discovered")) {
        for (const auto& jd : j["discovered"]) {
            std::string id = util::to_lower(jd.get<std::string>());
            if (!scene.has(id))
                throw std::runtime_error("discovered id '" + id + "' unknown");
            scene.discovered.insert(std::move(id));
        }
    }
    return scene;
}

SceneGraph load_scene_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open scene file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_scene_json(ss.str());
}

}  // namespace sclplan::world
