#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sclplan/llm/client.hpp"
#include "sclplan/llm/prompts.hpp"
#include "sclplan/sim/action_language.hpp"
#include "sclplan/world/scene.hpp"

namespace sclplan::llm {

struct ParsedAction {
    std::string name;               // catalog display name; empty on finish
    std::vector<std::string> args;  // captured slot tokens
    std::string command;            // command text, ready for the environment
    std::string thought;
    std::string raw_text;           // full model response
    bool is_finish = false;
};

struct ReactOutcome {
    bool ok = false;
    ParsedAction action;
    CompletionUsage usage;  // summed over all attempts
    int calls = 0;
    std::string raw;        // last raw response
    std::string error;      // last parse complaint when !ok
};

// Pulls "Thought:"/"Action:" lines out of a raw response. Returns nullopt
// when no Action line exists. The thought may be empty.
std::optional<std::pair<std::string, std::string>> split_react_response(
    const std::string& raw);

// Asks the model for the next action given the believed state and the full
// episode history. Structurally invalid responses (no Action line, or a
// command matching no catalog template) are retried up to max_retries times
// with the complaint appended; arguments are NOT checked against known
// objects here, that judgement belongs to verification downstream.
//
// Call fingerprints are "<prefix>/react:<n>" with n starting at
// first_call_index and advancing once per attempt.
ReactOutcome react_next_action(CompletionClient& client, sim::ActionSet set,
                               const std::string& task_nl,
                               const world::SceneGraph& scene,
                               const std::vector<HistoryItem>& history,
                               const std::string& fingerprint_prefix,
                               int first_call_index, int max_retries = 2);

}  // namespace sclplan::llm
