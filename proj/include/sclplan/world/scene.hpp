#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace sclplan::world {

// Marker predicates that select the PDDL type of an entity instead of being
// emitted as atoms.
inline constexpr const char* kReceptacleMarker = "isreceptacle";
inline constexpr const char* kHumanMarker = "ishuman";

struct Entity {
    std::string id;
    std::string cls;
    // Static predicates never change after creation (openable, pickupable,
    // appliance roles). Dynamic ones evolve (isopen, isclean, ...).
    std::map<std::string, bool> static_preds;
    std::map<std::string, bool> dynamic_preds;
    // Invisible to the agent until another mechanism reveals it, even when
    // its container is in plain view.
    bool hidden = false;

    bool flag(const std::string& name) const {
        auto it = static_preds.find(name);
        if (it != static_preds.end()) return it->second;
        it = dynamic_preds.find(name);
        return it != dynamic_preds.end() && it->second;
    }

    bool is_receptacle() const { return flag(kReceptacleMarker); }
    bool is_human() const { return flag(kHumanMarker); }

    bool operator==(const Entity&) const = default;
};

struct Relation {
    std::string subject;
    std::string rel;  // "in", "on", or "at"
    std::string object;

    bool operator==(const Relation&) const = default;
    auto operator<=>(const Relation&) const = default;
};

inline constexpr const char* kNowhere = "nowhere";

// Either the agent's belief (discovered gates what the planner sees) or the
// simulator's ground truth (discovered ignored).
struct SceneGraph {
    std::map<std::string, Entity> entities;
    std::set<Relation> relations;
    std::string agent_location = kNowhere;
    std::string holding;  // entity id, empty when the hand is free
    bool agent_standing = true;
    std::set<std::string> discovered;

    bool has(const std::string& id) const { return entities.count(id) > 0; }

    const Entity* find(const std::string& id) const {
        auto it = entities.find(id);
        return it == entities.end() ? nullptr : &it->second;
    }

    // The receptacle or human an entity sits in/on/at, empty if none.
    std::string container_of(const std::string& id) const {
        for (const auto& r : relations)
            if (r.subject == id) return r.object;
        return {};
    }

    std::vector<std::string> contents_of(const std::string& id) const {
        std::vector<std::string> out;
        for (const auto& r : relations)
            if (r.object == id) out.push_back(r.subject);
        return out;
    }

    bool operator==(const SceneGraph&) const = default;
};

struct Delta {
    enum class Kind {
        SetPredicate,    // entity, predicate, value
        AddRelation,     // subject, rel, object
        RemoveRelation,  // subject, rel, object
        AgentLocation,   // location (or kNowhere)
        AgentPosture,    // value: true = standing
        Holding,         // entity id, empty to clear
        RemoveEntity,    // entity (slicing consumes the parent)
    };

    Kind kind;
    std::string entity;
    std::string predicate;
    bool value = false;
    Relation relation;
    std::string location;

    static Delta set_pred(std::string id, std::string pred, bool v) {
        Delta d{Kind::SetPredicate};
        d.entity = std::move(id);
        d.predicate = std::move(pred);
        d.value = v;
        return d;
    }
    static Delta add_rel(std::string s, std::string r, std::string o) {
        Delta d{Kind::AddRelation};
        d.relation = {std::move(s), std::move(r), std::move(o)};
        return d;
    }
    static Delta remove_rel(std::string s, std::string r, std::string o) {
        Delta d{Kind::RemoveRelation};
        d.relation = {std::move(s), std::move(r), std::move(o)};
        return d;
    }
    static Delta agent_at(std::string loc) {
        Delta d{Kind::AgentLocation};
        d.location = std::move(loc);
        return d;
    }
    static Delta posture(bool standing) {
        Delta d{Kind::AgentPosture};
        d.value = standing;
        return d;
    }
    static Delta holding(std::string id) {
        Delta d{Kind::Holding};
        d.entity = std::move(id);
        return d;
    }
    static Delta remove_entity(std::string id) {
        Delta d{Kind::RemoveEntity};
        d.entity = std::move(id);
        return d;
    }

    bool operator==(const Delta&) const = default;
};

struct Observation {
    std::string text;
    std::vector<Entity> revealed;  // entities new to the agent
    // Relations involving newly revealed entities ride along so the belief
    // can place them.
    std::vector<Relation> revealed_relations;
    std::vector<Delta> deltas;
    bool success = true;

    bool operator==(const Observation&) const = default;
};

// A goal references an entity the agent has not discovered (or that does not
// exist); symbolic planning must yield until exploration finds it.
class UnknownGoalObject : public std::runtime_error {
public:
    explicit UnknownGoalObject(const std::string& name)
        : std::runtime_error("unknown goal object '" + name + "'"),
          name_(name) {}

    const std::string& name() const { return name_; }

private:
    std::string name_;
};

}  // namespace sclplan::world
