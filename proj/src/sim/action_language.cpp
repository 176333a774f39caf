#include "sclplan/sim/action_language.hpp"

#include <stdexcept>

#include "sclplan/util/strings.hpp"

namespace sclplan::sim {

ActionSet action_set_from_name(const std::string& name) {
    std::string n = util::to_lower(name);
    if (n == "alfworld") return ActionSet::Alfworld;
    if (n == "thor") return ActionSet::Thor;
    if (n == "robot") return ActionSet::Robot;
    throw std::runtime_error("unknown action set '" + name + "'");
}

std::string action_set_name(ActionSet set) {
    switch (set) {
        case ActionSet::Alfworld: return "alfworld";
        case ActionSet::Thor: return "thor";
        case ActionSet::Robot: return "robot";
    }
    return "?";
}

namespace {

using B = Binding;

std::vector<CatalogEntry> make_alfworld() {
    return {
        {"go to", "Walk to a receptacle to inspect or use it.",
         "go to {recep}", "go-to", {B::agent_location(), B::arg(0)}},
        {"open", "Open a closed receptacle you are standing at.",
         "open {recep}", "open", {B::arg(0)}},
        {"close", "Close an open receptacle you are standing at.",
         "close {recep}", "close", {B::arg(0)}},
        {"take", "Take an item from a receptacle; your hand must be free.",
         "take {item} from {recep}", "take", {B::arg(0), B::arg(1)}},
        {"put", "Put the item you hold in or on a receptacle.",
         "put {item} in/on {recep}", "put", {B::arg(0), B::arg(1)}},
        {"clean", "Clean the item you hold using a sink.",
         "clean {item} with {recep}", "clean", {B::arg(0), B::arg(1)}},
        {"heat", "Heat the item you hold using a microwave or stove.",
         "heat {item} with {recep}", "heat", {B::arg(0), B::arg(1)}},
        {"cool", "Cool the item you hold using a fridge.",
         "cool {item} with {recep}", "cool", {B::arg(0), B::arg(1)}},
        {"toggle", "Toggle a lamp or appliance where you stand.",
         "toggle {item}", "toggle", {B::arg(0), B::container_of(0)}},
    };
}

std::vector<CatalogEntry> make_thor() {
    return {
        {"MoveToObject", "Move next to a receptacle or appliance.",
         "MoveToObject {receptacle}", "move-to-object",
         {B::agent_location(), B::arg(0)}},
        {"OpenObject", "Open a closed container you are next to.",
         "OpenObject {receptacle}", "open-object", {B::arg(0)}},
        {"CloseObject", "Close an open container you are next to.",
         "CloseObject {receptacle}", "close-object", {B::arg(0)}},
        {"PickupObject", "Pick up a reachable object; your hand must be free.",
         "PickupObject {object}", "pickup-object",
         {B::arg(0), B::container_of(0)}},
        {"PlaceObject", "Place the held object into or onto a receptacle.",
         "PlaceObject {receptacle}", "place-object",
         {B::held_item(), B::arg(0)}},
        {"SliceObject", "Slice an object in front of you; requires holding a knife.",
         "SliceObject {object}", "slice-object",
         {B::arg(0), B::held_item(), B::container_of(0)}},
        {"ToggleObjectOn", "Turn an appliance on.",
         "ToggleObjectOn {appliance}", "toggle-on", {B::arg(0)}},
        {"ToggleObjectOff", "Turn an appliance off.",
         "ToggleObjectOff {appliance}", "toggle-off", {B::arg(0)}},
    };
}

std::vector<CatalogEntry> make_robot() {
    return {
        {"Sit", "Sit down at the current spot.", "Sit", "sit", {}},
        {"Stand", "Stand up so you can move.", "Stand", "stand", {}},
        {"MoveToObject", "Walk to a location or piece of furniture.",
         "MoveToObject {location}", "move-to-object",
         {B::agent_location(), B::arg(0)}},
        {"LookAtObject", "Inspect an object at your location closely.",
         "LookAtObject {object}", "look-at-object",
         {B::arg(0), B::container_of(0)}},
        {"PickupObject", "Pick up a reachable object; your gripper must be free.",
         "PickupObject {object}", "pickup-object",
         {B::arg(0), B::container_of(0)}},
        {"PlaceObject", "Place the held object onto a location or furniture.",
         "PlaceObject {location}", "place-object",
         {B::held_item(), B::arg(0)}},
        {"DropObject", "Drop the held object where you stand.",
         "DropObject", "drop-object",
         {B::held_item(), B::agent_location()}},
        {"SpeakToHuman", "Say something to a person at your location.",
         "SpeakToHuman {person}", "speak-to-human",
         {B::arg(0), B::container_of(0)}},
    };
}

}  // namespace

const std::vector<CatalogEntry>& action_catalog(ActionSet set) {
    static const std::vector<CatalogEntry> alfworld = make_alfworld();
    static const std::vector<CatalogEntry> thor = make_thor();
    static const std::vector<CatalogEntry> robot = make_robot();
    switch (set) {
        case ActionSet::Alfworld: return alfworld;
        case ActionSet::Thor: return thor;
        case ActionSet::Robot: return robot;
    }
    return alfworld;
}

std::optional<ParsedCommand> parse_command(ActionSet set,
                                           const std::string& text) {
    std::vector<std::string> words = util::split_ws(util::to_lower(text));
    if (words.empty()) return std::nullopt;

    for (const auto& entry : action_catalog(set)) {
        std::vector<std::string> pattern =
            util::split_ws(util::to_lower(entry.template_text));
        if (pattern.size() != words.size()) continue;
        ParsedCommand cmd;
        cmd.entry = &entry;
        bool match = true;
        for (size_t i = 0; i < pattern.size() && match; ++i) {
            const std::string& p = pattern[i];
            if (p.front() == '{' && p.back() == '}') {
                cmd.args.push_back(words[i]);
            } else if (p == "in/on") {
                match = words[i] == "in" || words[i] == "on";
            } else {
                match = p == words[i];
            }
        }
        if (match) return cmd;
    }
    return std::nullopt;
}

ResolvedAction resolve_command(const ParsedCommand& cmd,
                               const world::SceneGraph& scene) {
    ResolvedAction out;
    out.schema = cmd.entry->schema;
    for (const auto& b : cmd.entry->bindings) {
        switch (b.source) {
            case Binding::Source::Arg:
                out.args.push_back(cmd.args[static_cast<size_t>(b.arg_index)]);
                break;
            case Binding::Source::AgentLocation:
                if (scene.agent_location == world::kNowhere) {
                    out.error = "you are nowhere in particular";
                    return out;
                }
                out.args.push_back(scene.agent_location);
                break;
            case Binding::Source::HeldItem:
                if (scene.holding.empty()) {
                    out.error = "you are not holding anything";
                    return out;
                }
                out.args.push_back(scene.holding);
                break;
            case Binding::Source::ContainerOf: {
                const std::string& target =
                    cmd.args[static_cast<size_t>(b.arg_index)];
                std::string container = scene.container_of(target);
                if (container.empty()) {
                    out.error = "there is no " + target + " anywhere you know of";
                    return out;
                }
                out.args.push_back(container);
                break;
            }
        }
    }
    return out;
}

std::string render_command(ActionSet set, const std::string& schema,
                           const std::vector<std::string>& args) {
    for (const auto& entry : action_catalog(set)) {
        if (entry.schema != schema) continue;
        std::vector<std::string> pattern = util::split_ws(entry.template_text);
        std::string out;
        size_t slot = 0;
        for (size_t i = 0; i < pattern.size(); ++i) {
            if (i) out += ' ';
            const std::string& p = pattern[i];
            if (p.front() == '{' && p.back() == '}') {
                // Which command argument fills this slot: the binding whose
                // source is Arg with this slot index names the schema param.
                std::string value;
                for (size_t bi = 0; bi < entry.bindings.size(); ++bi) {
                    const Binding& b = entry.bindings[bi];
                    if (b.source == Binding::Source::Arg &&
                        b.arg_index == static_cast<int>(slot)) {
                        value = args[bi];
                        break;
                    }
                }
                out += value;
                ++slot;
            } else if (p == "in/on") {
                out += "in";
            } else {
                out += p;
            }
        }
        return out;
    }
    return {};
}

}  // namespace sclplan::sim
