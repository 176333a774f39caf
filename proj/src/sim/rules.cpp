#include "sclplan/sim/rules.hpp"

#include <optional>

namespace sclplan::sim {
namespace {

using world::Delta;
using world::Entity;
using world::Relation;
using world::SceneGraph;

bool is_item(const Entity& e) { return !e.is_receptacle() && !e.is_human(); }

std::optional<Relation> container_rel(const SceneGraph& s, const std::string& id) {
    for (const auto& r : s.relations) {
        if (r.subject == id && (r.rel == "in" || r.rel == "on")) return r;
    }
    return std::nullopt;
}

// Does the containment chain from `id` pass through `recep` within a few
// hops (egg in pan on stove counts for the stove's heat)?
bool chain_reaches(const SceneGraph& s, const std::string& id,
                   const std::string& recep) {
    std::string cur = id;
    for (int depth = 0; depth < 4; ++depth) {
        auto rel = container_rel(s, cur);
        if (!rel) return false;
        if (rel->object == recep) return true;
        cur = rel->object;
    }
    return false;
}

// The reachability bookkeeping the planner domains rely on: an item is
// reachable exactly when it sits directly in or on an accessible receptacle
// and is not being carried.
ImplicitRule reachable_sync_rule() {
    return {"reachable-sync", [](const SceneGraph& s) {
        RuleEffect eff;
        for (const auto& [id, e] : s.entities) {
            if (!is_item(e)) continue;
            bool want = false;
            if (s.holding != id) {
                auto rel = container_rel(s, id);
                if (rel) {
                    const Entity* c = s.find(rel->object);
                    if (c && c->is_receptacle() && c->flag("accessible"))
                        want = true;
                }
            }
            if (e.flag("reachable") != want)
                eff.deltas.push_back(Delta::set_pred(id, "reachable", want));
        }
        return eff;
    }};
}

// A basin with its faucet running rinses everything sitting in it.
ImplicitRule faucet_clean_rule() {
    return {"faucet-clean", [](const SceneGraph& s) {
        RuleEffect eff;
        for (const auto& [fid, f] : s.entities) {
            if (!f.flag("faucet") || !f.flag("toggled")) continue;
            for (const auto& r : s.relations) {
                if (r.object != fid) continue;
                if (r.rel != "in" && r.rel != "on") continue;
                const Entity* i = s.find(r.subject);
                if (i && is_item(*i) && !i->flag("isclean"))
                    eff.deltas.push_back(Delta::set_pred(r.subject, "isclean", true));
            }
        }
        return eff;
    }};
}

ImplicitRule heater_rule() {
    return {"heater-hot", [](const SceneGraph& s) {
        RuleEffect eff;
        for (const auto& [hid, h] : s.entities) {
            if (!h.flag("heater") || !h.flag("toggled")) continue;
            for (const auto& [id, e] : s.entities) {
                if (!is_item(e)) continue;
                if (!chain_reaches(s, id, hid)) continue;
                if (!e.flag("ishot"))
                    eff.deltas.push_back(Delta::set_pred(id, "ishot", true));
                if (e.flag("iscold"))
                    eff.deltas.push_back(Delta::set_pred(id, "iscold", false));
                if (e.flag("cookable") && !e.flag("iscooked"))
                    eff.deltas.push_back(Delta::set_pred(id, "iscooked", true));
            }
        }
        return eff;
    }};
}

ImplicitRule cooler_rule() {
    return {"cooler-cold", [](const SceneGraph& s) {
        RuleEffect eff;
        for (const auto& [cid, c] : s.entities) {
            if (!c.flag("cooler")) continue;
            // A fridge only chills once shut.
            if (c.flag("openable") && c.flag("isopen")) continue;
            for (const auto& [id, e] : s.entities) {
                if (!is_item(e)) continue;
                if (!chain_reaches(s, id, cid)) continue;
                if (!e.flag("iscold"))
                    eff.deltas.push_back(Delta::set_pred(id, "iscold", true));
                if (e.flag("ishot"))
                    eff.deltas.push_back(Delta::set_pred(id, "ishot", false));
            }
        }
        return eff;
    }};
}

ImplicitRule coffee_fill_rule() {
    return {"coffee-fill", [](const SceneGraph& s) {
        RuleEffect eff;
        for (const auto& [mid, m] : s.entities) {
            if (!m.flag("coffeemachine") || !m.flag("toggled")) continue;
            for (const auto& r : s.relations) {
                if (r.object != mid) continue;
                if (r.rel != "in" && r.rel != "on") continue;
                const Entity* i = s.find(r.subject);
                if (i && i->flag("fillable") && !i->flag("isfilled"))
                    eff.deltas.push_back(Delta::set_pred(r.subject, "isfilled", true));
            }
        }
        return eff;
    }};
}

// A sliced sliceable falls apart: the parent entity is removed and replaced
// by kSlicePieces slice items in the same receptacle. Handles one entity per
// firing; the fixpoint loop picks up any others.
ImplicitRule slice_split_rule() {
    return {"slice-split", [](const SceneGraph& s) {
        RuleEffect eff;
        for (const auto& [id, e] : s.entities) {
            if (!is_item(e)) continue;
            if (!e.flag("sliceable") || !e.flag("issliced")) continue;
            auto rel = container_rel(s, id);
            if (!rel) continue;
            for (int k = 1; k <= kSlicePieces; ++k) {
                Entity piece;
                piece.id = id + "-slice-" + std::to_string(k);
                piece.cls = e.cls + "-slice";
                piece.static_preds["pickupable"] = true;
                piece.dynamic_preds["issliced"] = true;
                if (e.flag("cookable")) piece.static_preds["cookable"] = true;
                eff.new_entities.push_back(piece);
                eff.new_relations.push_back({piece.id, rel->rel, rel->object});
            }
            eff.deltas.push_back(Delta::remove_entity(id));
            return eff;
        }
        return eff;
    }};
}

bool spoken_pending(const Entity& h) {
    return h.flag("spoken-to") && !h.flag("responded");
}

ImplicitRule dialogue_yield_rule(const DialogueSpec& d) {
    return {"dialogue-yield-" + d.human, [d](const SceneGraph& s) {
        RuleEffect eff;
        const Entity* h = s.find(d.human);
        if (!h || !spoken_pending(*h)) return eff;
        if (!dialogue_wants_met(s, d)) return eff;
        auto held = container_rel(s, d.yields);
        if (!held || held->object != d.human) return eff;
        // Hand the item over onto the spot the human occupies.
        std::string dest;
        for (const auto& r : s.relations)
            if (r.subject == d.human && r.rel == "at") dest = r.object;
        if (dest.empty()) return eff;
        eff.deltas.push_back(Delta::remove_rel(d.yields, held->rel, d.human));
        eff.deltas.push_back(Delta::add_rel(d.yields, "on", dest));
        eff.deltas.push_back(Delta::set_pred(d.human, "responded", true));
        eff.message = d.human + " says: \"" + d.yield_text + "\" " + d.human +
                      " puts " + d.yields + " on " + dest + ".";
        return eff;
    }};
}

ImplicitRule dialogue_demand_rule(const DialogueSpec& d) {
    return {"dialogue-demand-" + d.human, [d](const SceneGraph& s) {
        RuleEffect eff;
        const Entity* h = s.find(d.human);
        if (!h || !spoken_pending(*h)) return eff;
        if (dialogue_wants_met(s, d)) return eff;
        eff.deltas.push_back(Delta::set_pred(d.human, "responded", true));
        eff.message = d.human + " says: \"" + d.demand_text + "\"";
        return eff;
    }};
}

ImplicitRule dialogue_thanks_rule(const DialogueSpec& d) {
    return {"dialogue-thanks-" + d.human, [d](const SceneGraph& s) {
        RuleEffect eff;
        const Entity* h = s.find(d.human);
        if (!h || !spoken_pending(*h)) return eff;
        if (!dialogue_wants_met(s, d)) return eff;
        auto held = container_rel(s, d.yields);
        if (held && held->object == d.human) return eff;  // yield handles it
        eff.deltas.push_back(Delta::set_pred(d.human, "responded", true));
        eff.message = d.human + " says: \"" + d.thanks_text + "\"";
        return eff;
    }};
}

// Resets the conversational turn once every reaction has fired, so the next
// speak-to starts fresh. Must stay last in the table.
ImplicitRule clear_spoken_rule() {
    return {"clear-spoken", [](const SceneGraph& s) {
        RuleEffect eff;
        for (const auto& [id, e] : s.entities) {
            if (!e.is_human()) continue;
            if (e.flag("spoken-to") && e.flag("responded")) {
                eff.deltas.push_back(Delta::set_pred(id, "spoken-to", false));
                eff.deltas.push_back(Delta::set_pred(id, "responded", false));
            }
        }
        return eff;
    }};
}

}  // namespace

bool dialogue_wants_met(const world::SceneGraph& truth, const DialogueSpec& d) {
    auto want = container_rel(truth, d.wants);
    if (!want) return false;
    if (want->object == d.human) return true;
    for (const auto& r : truth.relations)
        if (r.subject == d.human && r.rel == "at" && r.object == want->object)
            return true;
    return false;
}

std::vector<ImplicitRule> rule_table(ActionSet set,
                                     const std::vector<DialogueSpec>& dialogue) {
    std::vector<ImplicitRule> rules;
    switch (set) {
        case ActionSet::Alfworld:
            // Plain container world, no hidden physics: what the action
            // schemas say is everything that happens.
            break;
        case ActionSet::Thor:
            rules.push_back(reachable_sync_rule());
            rules.push_back(faucet_clean_rule());
            rules.push_back(heater_rule());
            rules.push_back(cooler_rule());
            rules.push_back(coffee_fill_rule());
            rules.push_back(slice_split_rule());
            break;
        case ActionSet::Robot:
            rules.push_back(reachable_sync_rule());
            for (const auto& d : dialogue) {
                rules.push_back(dialogue_yield_rule(d));
                rules.push_back(dialogue_demand_rule(d));
                rules.push_back(dialogue_thanks_rule(d));
            }
            rules.push_back(clear_spoken_rule());
            break;
    }
    return rules;
}

}  // namespace sclplan::sim
