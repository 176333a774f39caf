#include "sclplan/sim/simulator.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

#include "sclplan/util/rng.hpp"
#include "sclplan/util/strings.hpp"
#include "sclplan/world/belief.hpp"

namespace sclplan::sim {

namespace {

using world::Delta;
using world::Entity;
using world::Observation;
using world::Relation;
using world::SceneGraph;

bool eval_atom(const SceneGraph& t, const std::string& pred,
               const std::vector<std::string>& a) {
    if (pred == "=") return a[0] == a[1];
    if (pred == "at-agent") return t.agent_location == a[0];
    if (pred == "holding") return t.holding == a[0];
    if (pred == "hand-empty") return t.holding.empty();
    if (pred == "standing") return t.agent_standing;
    if (pred == "sitting") return !t.agent_standing;
    if (pred == "in")
        return t.relations.count({a[0], "in", a[1]}) > 0 ||
               t.relations.count({a[0], "on", a[1]}) > 0;
    if (pred == "at-entity") return t.relations.count({a[0], "at", a[1]}) > 0;
    const Entity* e = t.find(a[0]);
    return e && e->flag(pred);
}

// What the agent reads when an action's precondition fails. Only ever names
// the arguments the agent itself supplied plus always-visible furniture, so
// failures cannot leak hidden entities.
std::string failure_text(const pddl::Literal& lit,
                         const std::vector<std::string>& a) {
    const std::string& p = lit.predicate;
    if (!lit.negated) {
        if (p == "at-agent") return "You need to be at " + a[0] + " first.";
        if (p == "in") return a[0] + " is not at " + a[1] + ".";
        if (p == "holding") return "You are not holding " + a[0] + ".";
        if (p == "hand-empty") return "Your hand is full.";
        if (p == "accessible") return a[0] + " is closed.";
        if (p == "openable") return a[0] + " cannot be opened.";
        if (p == "isopen") return a[0] + " is not open.";
        if (p == "reachable") return "You can't reach " + a[0] + ".";
        if (p == "toggleable") return a[0] + " has no switch.";
        if (p == "toggled") return a[0] + " is not on.";
        if (p == "knife") return a[0] + " is not a knife.";
        if (p == "sliceable") return a[0] + " cannot be sliced.";
        if (p == "standing") return "You need to stand up first.";
        if (p == "sitting") return "You are not sitting.";
        if (p == "at-entity") return a[0] + " is not at " + a[1] + ".";
        if (p == "sink") return a[0] + " is not a sink.";
        if (p == "heater") return a[0] + " cannot heat things.";
        if (p == "cooler") return a[0] + " cannot cool things.";
    } else {
        if (p == "=") return "You are already at " + a[1] + ".";
        if (p == "isopen") return a[0] + " is already open.";
        if (p == "toggled") return a[0] + " is already on.";
    }
    return "That is not possible right now.";
}

const std::vector<std::vector<std::string>>& groups_for(const Suite& suite,
                                                        const TaskSpec& task) {
    static const std::vector<std::vector<std::string>> none;
    auto it = suite.shuffle_groups.find(task.layout);
    return it == suite.shuffle_groups.end() ? none : it->second;
}

}  // namespace

bool eval_literal(const SceneGraph& scene, const pddl::GroundLiteral& lit) {
    return eval_atom(scene, lit.atom.predicate, lit.atom.args) != lit.negated;
}

bool eval_goal(const SceneGraph& scene, const pddl::Goal& goal) {
    return std::all_of(goal.begin(), goal.end(), [&](const auto& lit) {
        return eval_literal(scene, lit);
    });
}

Simulator::Simulator(pddl::Domain domain, ActionSet set,
                     world::SceneGraph layout,
                     std::vector<std::vector<std::string>> shuffle_groups,
                     TaskSpec task, uint64_t seed)
    : domain_(std::move(domain)),
      set_(set),
      layout_(std::move(layout)),
      shuffle_groups_(std::move(shuffle_groups)),
      task_(std::move(task)),
      seed_(seed),
      rules_(rule_table(set, task_.dialogue)) {
    for (const auto& entry : action_catalog(set_)) {
        const pddl::ActionSchema* s = domain_.find_action(entry.schema);
        if (!s || s->params.size() != entry.bindings.size())
            throw std::logic_error("action catalog out of sync with domain: " +
                                   entry.schema);
    }
    reset();
}

Simulator::Simulator(const Suite& suite, const TaskSpec& task, uint64_t seed)
    : Simulator(suite.domain, suite.action_set, suite.layouts.at(task.layout),
                groups_for(suite, task), task, seed) {}

void Simulator::apply_shuffle() {
    util::Rng rng(util::mix_seed(seed_, util::hash_str("layout-shuffle")));
    for (const auto& group : shuffle_groups_) {
        struct Slot {
            std::string rel, object;
        };
        std::vector<Slot> slots;
        for (const auto& id : group) {
            bool found = false;
            for (const auto& r : truth_.relations) {
                if (r.subject == id && (r.rel == "in" || r.rel == "on")) {
                    slots.push_back({r.rel, r.object});
                    found = true;
                    break;
                }
            }
            if (!found)
                throw std::runtime_error(
                    "shuffle group member has no placement: " + id);
        }
        std::vector<size_t> perm(group.size());
        std::iota(perm.begin(), perm.end(), size_t{0});
        rng.shuffle(perm);
        for (size_t k = 0; k < group.size(); ++k) {
            truth_.relations.erase({group[k], slots[k].rel, slots[k].object});
            const Slot& s = slots[perm[k]];
            truth_.relations.insert({group[k], s.rel, s.object});
        }
    }
}

void Simulator::run_rules(std::vector<Delta>& deltas_out,
                          std::vector<std::string>& messages_out) {
    int firings = 0;
    bool fired = true;
    while (fired) {
        fired = false;
        for (const auto& rule : rules_) {
            RuleEffect eff = rule.eval(truth_);
            if (eff.empty()) continue;
            if (++firings > 100)
                throw std::runtime_error("implicit rule cascade runaway: " +
                                         rule.name);
            Observation o;
            o.revealed = eff.new_entities;
            o.revealed_relations = eff.new_relations;
            o.deltas = eff.deltas;
            truth_ = world::merge_observation(truth_, o);
            deltas_out.insert(deltas_out.end(), eff.deltas.begin(),
                              eff.deltas.end());
            if (!eff.message.empty()) messages_out.push_back(eff.message);
            fired = true;
            break;  // state changed, rescan from the top of the table
        }
    }
}

std::set<std::string> Simulator::visible_now() const {
    std::set<std::string> vis;
    for (const auto& [id, e] : truth_.entities) {
        if (e.hidden) continue;
        if (e.is_receptacle() || e.is_human()) vis.insert(id);
    }
    if (!truth_.holding.empty()) vis.insert(truth_.holding);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [id, e] : truth_.entities) {
            if (vis.count(id) || e.hidden) continue;
            if (e.is_receptacle() || e.is_human()) continue;
            std::string rel_kind, container;
            for (const auto& r : truth_.relations) {
                if (r.subject == id && (r.rel == "in" || r.rel == "on")) {
                    rel_kind = r.rel;
                    container = r.object;
                    break;
                }
            }
            bool visible = false;
            if (container.empty()) {
                visible = true;  // lying around uncontained
            } else {
                const Entity* c = truth_.find(container);
                if (c && c->is_human()) {
                    visible = true;  // carried openly by a person
                } else if (c && c->is_receptacle()) {
                    // Contents come into view when the agent stands at the
                    // receptacle and it is open (or has no door at all).
                    visible = c->flag("accessible") &&
                              truth_.agent_location == container;
                } else {
                    visible = vis.count(container) > 0;  // e.g. egg in a pan
                }
            }
            if (visible) {
                vis.insert(id);
                changed = true;
            }
        }
    }
    // What was seen once stays known, even after walking away.
    for (const auto& id : revealed_)
        if (truth_.has(id)) vis.insert(id);
    return vis;
}

void Simulator::collect_reveals(Observation& obs) {
    std::set<std::string> vis = visible_now();
    std::set<std::string> fresh;
    for (const auto& id : vis)
        if (!revealed_.count(id)) fresh.insert(id);
    revealed_ = std::move(vis);
    for (const auto& id : fresh) obs.revealed.push_back(truth_.entities.at(id));
    for (const auto& r : truth_.relations) {
        if (!fresh.count(r.subject) && !fresh.count(r.object)) continue;
        if (revealed_.count(r.subject) && revealed_.count(r.object))
            obs.revealed_relations.push_back(r);
    }
}

std::vector<std::string> Simulator::visible_contents(
    const std::string& recep) const {
    std::vector<std::string> out;
    for (const auto& id : truth_.contents_of(recep))
        if (revealed_.count(id)) out.push_back(id);
    return out;
}

std::string Simulator::location_report(const std::string& recep) const {
    const Entity* r = truth_.find(recep);
    if (!r) return {};
    const bool boxy = r->flag("openable");
    if (boxy && !r->flag("isopen")) return " " + recep + " is closed.";
    std::vector<std::string> items = visible_contents(recep);
    const std::string word = boxy ? "in" : "on";
    if (items.empty()) return " There is nothing " + word + " " + recep + ".";
    std::string w = word;
    w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
    return " " + w + " " + recep + ", you see: " + util::join(items, ", ") + ".";
}

world::Observation Simulator::fail(std::string text) {
    Observation o;
    o.text = std::move(text);
    o.success = false;
    return o;
}

world::Observation Simulator::reset() {
    truth_ = layout_;
    steps_ = 0;
    revealed_.clear();
    apply_shuffle();
    // Settle physics so reachability and appliance effects reflect the
    // shuffled placements before the agent sees anything.
    std::vector<Delta> settle;
    std::vector<std::string> silent;
    run_rules(settle, silent);

    Observation obs;
    obs.deltas.push_back(Delta::agent_at(truth_.agent_location));
    obs.deltas.push_back(Delta::posture(truth_.agent_standing));
    if (!truth_.holding.empty())
        obs.deltas.push_back(Delta::holding(truth_.holding));
    collect_reveals(obs);

    std::vector<std::string> receps;
    std::vector<std::string> humans;
    for (const auto& [id, e] : truth_.entities) {
        if (e.hidden) continue;
        if (e.is_receptacle()) receps.push_back(id);
        if (e.is_human()) humans.push_back(id);
    }
    std::string s = "You are in the middle of the room. Looking around, you see: " +
                    util::join(receps, ", ") + ".";
    for (const auto& h : humans) s += " " + h + " is here.";
    s += " You are at " + truth_.agent_location + "." +
         location_report(truth_.agent_location);
    s += truth_.holding.empty() ? " Your hand is empty."
                                : " You are holding " + truth_.holding + ".";
    if (set_ == ActionSet::Robot)
        s += truth_.agent_standing ? " You are standing." : " You are sitting.";
    obs.text = std::move(s);
    return obs;
}

world::Observation Simulator::step(const std::string& command_text) {
    ++steps_;
    auto parsed = parse_command(set_, command_text);
    if (!parsed) return fail("Nothing happens.");
    ResolvedAction res = resolve_command(*parsed, truth_);
    if (!res.ok()) return fail("You can't do that: " + res.error + ".");
    const pddl::ActionSchema* schema = domain_.find_action(res.schema);
    if (!schema)
        throw std::logic_error("catalog names unknown schema " + res.schema);

    for (size_t i = 0; i < schema->params.size(); ++i) {
        const Entity* e = truth_.find(res.args[i]);
        if (!e) return fail("There is no " + res.args[i] + " here.");
        if (!domain_.is_subtype(world::entity_type(*e), schema->params[i].type))
            return fail("You can't " + parsed->entry->name + " " + res.args[i] +
                        ".");
    }

    std::map<std::string, std::string> bind;
    for (size_t i = 0; i < schema->params.size(); ++i)
        bind[schema->params[i].name] = res.args[i];
    auto ground = [&](const pddl::Literal& lit) {
        std::vector<std::string> a;
        for (const auto& arg : lit.args) a.push_back(bind.at(arg));
        return a;
    };
    for (const auto& lit : schema->precondition) {
        std::vector<std::string> a = ground(lit);
        if (eval_atom(truth_, lit.predicate, a) == lit.negated)
            return fail(failure_text(lit, a));
    }

    std::vector<Delta> deltas;
    auto translate = [&](const pddl::Literal& lit, bool adding) {
        std::vector<std::string> a = ground(lit);
        const std::string& p = lit.predicate;
        if (p == "at-agent") {
            if (adding) deltas.push_back(Delta::agent_at(a[0]));
        } else if (p == "holding") {
            deltas.push_back(Delta::holding(adding ? a[0] : ""));
        } else if (p == "hand-empty") {
            // derived from holding
        } else if (p == "standing") {
            if (adding) deltas.push_back(Delta::posture(true));
        } else if (p == "sitting") {
            if (adding) deltas.push_back(Delta::posture(false));
        } else if (p == "in") {
            if (adding) {
                const Entity* r = truth_.find(a[1]);
                const bool boxy = r && r->flag("openable");
                deltas.push_back(Delta::add_rel(a[0], boxy ? "in" : "on", a[1]));
            } else {
                for (const char* w : {"in", "on"})
                    if (truth_.relations.count({a[0], w, a[1]}))
                        deltas.push_back(Delta::remove_rel(a[0], w, a[1]));
            }
        } else if (p == "at-entity") {
            if (adding)
                deltas.push_back(Delta::add_rel(a[0], "at", a[1]));
            else
                deltas.push_back(Delta::remove_rel(a[0], "at", a[1]));
        } else {
            deltas.push_back(Delta::set_pred(a[0], p, adding));
        }
    };
    for (const auto& lit : schema->del_effects) translate(lit, false);
    for (const auto& lit : schema->add_effects) translate(lit, true);

    Observation applied;
    applied.deltas = deltas;
    truth_ = world::merge_observation(truth_, applied);

    std::vector<std::string> messages;
    run_rules(deltas, messages);

    Observation obs;
    obs.deltas = std::move(deltas);
    collect_reveals(obs);

    const auto& a = res.args;
    const std::string& sc = res.schema;
    std::string text;
    bool lists_location = false;
    if (sc == "go-to" || sc == "move-to-object") {
        text = "You arrive at " + a[1] + "." + location_report(a[1]);
        lists_location = true;
    } else if (sc == "open" || sc == "open-object") {
        text = "You open " + a[0] + "." + location_report(a[0]);
        lists_location = true;
    } else if (sc == "close" || sc == "close-object") {
        text = "You close " + a[0] + ".";
    } else if (sc == "take") {
        text = "You take " + a[0] + " from " + a[1] + ".";
    } else if (sc == "pickup-object") {
        text = "You pick up " + a[0] + ".";
    } else if (sc == "put" || sc == "place-object" || sc == "drop-object") {
        const Entity* r = truth_.find(a[1]);
        const std::string word = (r && r->flag("openable")) ? "in" : "on";
        const char* verb = sc == "put" ? "put" : sc == "place-object" ? "place" : "drop";
        text = std::string("You ") + verb + " " + a[0] + " " + word + " " + a[1] + ".";
    } else if (sc == "clean") {
        text = "You clean " + a[0] + " with " + a[1] + ".";
    } else if (sc == "heat") {
        text = "You heat " + a[0] + " with " + a[1] + ".";
    } else if (sc == "cool") {
        text = "You cool " + a[0] + " with " + a[1] + ".";
    } else if (sc == "toggle") {
        text = "You toggle " + a[0] + ".";
    } else if (sc == "toggle-on") {
        text = "You turn " + a[0] + " on.";
    } else if (sc == "toggle-off") {
        text = "You turn " + a[0] + " off.";
    } else if (sc == "slice-object") {
        text = "You slice " + a[0] + ".";
    } else if (sc == "sit") {
        text = "You sit down.";
    } else if (sc == "stand") {
        text = "You stand up.";
    } else if (sc == "look-at-object") {
        text = "You look closely at " + a[0] + ".";
    } else if (sc == "speak-to-human") {
        text = "You speak to " + a[0] + ".";
    } else {
        text = "Done.";
    }
    for (const auto& m : messages) text += " " + m;
    if (!lists_location && !obs.revealed.empty()) {
        std::vector<std::string> ids;
        for (const auto& e : obs.revealed) ids.push_back(e.id);
        text += " You now see: " + util::join(ids, ", ") + ".";
    }
    obs.text = std::move(text);
    return obs;
}

bool Simulator::goal_reached() const { return eval_goal(truth_, task_.success); }

}  // namespace sclplan::sim
