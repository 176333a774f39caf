#include "sclplan/world/belief.hpp"

#include <algorithm>
#include <set>

namespace sclplan::world {

std::string entity_type(const Entity& e) {
    if (e.is_receptacle()) return "recep";
    if (e.is_human()) return "human";
    return "item";
}

namespace {

bool is_marker(const std::string& pred) {
    return pred == kReceptacleMarker || pred == kHumanMarker;
}

void emit_unary(const pddl::Domain& domain, const std::string& pred,
                const std::string& id, std::set<pddl::Atom>& init) {
    if (is_marker(pred)) return;
    const pddl::PredicateSchema* ps = domain.find_predicate(pred);
    if (!ps || ps->arity() != 1) return;
    init.insert({pred, {id}});
}

}  // namespace

pddl::Problem to_problem(const SceneGraph& scene, const pddl::Domain& domain,
                         const pddl::Goal& goal) {
    pddl::Problem pr;
    pr.name = "belief";
    pr.domain_name = domain.name;

    // std::map iteration keeps object order sorted by id.
    for (const auto& [id, e] : scene.entities) {
        if (!scene.discovered.count(id)) continue;
        pr.objects.push_back({id, entity_type(e)});
    }

    std::set<pddl::Atom> init;
    for (const auto& obj : pr.objects) {
        const Entity& e = scene.entities.at(obj.name);
        for (const auto& [pred, v] : e.static_preds)
            if (v) emit_unary(domain, pred, obj.name, init);
        for (const auto& [pred, v] : e.dynamic_preds)
            if (v) emit_unary(domain, pred, obj.name, init);
    }
    for (const auto& r : scene.relations) {
        if (!scene.discovered.count(r.subject) ||
            !scene.discovered.count(r.object))
            continue;
        const std::string pred = (r.rel == "at") ? "at-entity" : "in";
        const pddl::PredicateSchema* ps = domain.find_predicate(pred);
        if (!ps || ps->arity() != 2) continue;
        init.insert({pred, {r.subject, r.object}});
    }
    if (scene.agent_location != kNowhere &&
        scene.discovered.count(scene.agent_location))
        init.insert({"at-agent", {scene.agent_location}});
    if (!scene.holding.empty() && scene.discovered.count(scene.holding)) {
        init.insert({"holding", {scene.holding}});
    } else if (domain.find_predicate("hand-empty")) {
        init.insert({"hand-empty", {}});
    }
    if (domain.find_predicate("standing") && domain.find_predicate("sitting"))
        init.insert({scene.agent_standing ? "standing" : "sitting", {}});
    pr.init.assign(init.begin(), init.end());

    for (const auto& lit : goal)
        for (const auto& arg : lit.atom.args)
            if (!scene.discovered.count(arg) || !scene.has(arg))
                throw UnknownGoalObject(arg);
    pr.goal = goal;
    return pr;
}

SceneGraph merge_observation(const SceneGraph& scene, const Observation& obs) {
    SceneGraph out = scene;

    for (const auto& e : obs.revealed) {
        out.entities[e.id] = e;
        out.discovered.insert(e.id);
    }
    for (const auto& r : obs.revealed_relations) {
        if (out.has(r.subject) && out.has(r.object)) out.relations.insert(r);
    }

    for (const auto& d : obs.deltas) {
        switch (d.kind) {
            case Delta::Kind::SetPredicate: {
                auto it = out.entities.find(d.entity);
                if (it == out.entities.end()) break;
                if (it->second.static_preds.count(d.predicate))
                    break;  // static predicates never change
                it->second.dynamic_preds[d.predicate] = d.value;
                break;
            }
            case Delta::Kind::AddRelation:
                if (out.has(d.relation.subject) && out.has(d.relation.object))
                    out.relations.insert(d.relation);
                break;
            case Delta::Kind::RemoveRelation:
                out.relations.erase(d.relation);
                break;
            case Delta::Kind::AgentLocation:
                out.agent_location = d.location;
                break;
            case Delta::Kind::AgentPosture:
                out.agent_standing = d.value;
                break;
            case Delta::Kind::Holding:
                out.holding = d.entity;
                break;
            case Delta::Kind::RemoveEntity: {
                out.entities.erase(d.entity);
                out.discovered.erase(d.entity);
                if (out.holding == d.entity) out.holding.clear();
                for (auto it = out.relations.begin();
                     it != out.relations.end();) {
                    if (it->subject == d.entity || it->object == d.entity)
                        it = out.relations.erase(it);
                    else
                        ++it;
                }
                break;
            }
        }
    }
    return out;
}

}  // namespace sclplan::world
