#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sclplan/world/scene.hpp"

namespace sclplan::sim {

enum class ActionSet { Alfworld, Thor, Robot };

ActionSet action_set_from_name(const std::string& name);
std::string action_set_name(ActionSet set);

// Where each PDDL schema parameter gets its value when a command arrives in
// natural language. Commands often carry fewer arguments than the schema has
// parameters (e.g. "go to fridge-1" must bind the origin too).
struct Binding {
    enum class Source {
        Arg,            // the i-th command argument
        AgentLocation,  // wherever the agent currently stands
        HeldItem,       // whatever the agent currently holds
        ContainerOf,    // the container of the i-th command argument
    };
    Source source = Source::Arg;
    int arg_index = 0;

    static Binding arg(int i) { return {Source::Arg, i}; }
    static Binding agent_location() { return {Source::AgentLocation, 0}; }
    static Binding held_item() { return {Source::HeldItem, 0}; }
    static Binding container_of(int i) { return {Source::ContainerOf, i}; }
};

struct CatalogEntry {
    std::string name;         // display name, e.g. "take" or "PickupObject"
    std::string description;  // one-line prompt text
    // Token template: words match literally, "{slot}" captures one token,
    // "in/on" matches either word.
    std::string template_text;
    std::string schema;  // PDDL action this command executes
    std::vector<Binding> bindings;  // one per schema parameter
};

// The command list for one action set, exactly as prompted to the model.
const std::vector<CatalogEntry>& action_catalog(ActionSet set);

struct ParsedCommand {
    const CatalogEntry* entry = nullptr;
    std::vector<std::string> args;  // captured slot tokens, lowercased
};

// Matches free text against the catalog templates. Leading/trailing
// whitespace is ignored; matching is case-insensitive.
std::optional<ParsedCommand> parse_command(ActionSet set,
                                           const std::string& text);

struct ResolvedAction {
    std::string schema;
    std::vector<std::string> args;  // one per schema parameter
    std::string error;              // non-empty when resolution failed

    bool ok() const { return error.empty(); }
};

// Fills schema parameters from the command via the entry's binding sources,
// looking up agent state and containment in the given scene (ground truth
// for the simulator, belief for verification).
ResolvedAction resolve_command(const ParsedCommand& cmd,
                               const world::SceneGraph& scene);

// Inverse of parsing: the command text for a schema action with bound
// arguments, e.g. ("go-to", {"a","b"}) -> "go to b". Returns empty if the
// schema is not in the catalog.
std::string render_command(ActionSet set, const std::string& schema,
                           const std::vector<std::string>& args);

}  // namespace sclplan::sim
