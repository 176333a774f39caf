#include "sclplan/llm/react.hpp"

#include <sstream>

#include "sclplan/util/strings.hpp"

namespace sclplan::llm {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool is_finish_word(const std::string& command) {
    std::string w = util::to_lower(command);
    while (!w.empty() && (w.back() == '.' || w.back() == '!')) w.pop_back();
    return w == "finish" || w == "done" || w == "task complete";
}

}  // namespace

std::optional<std::pair<std::string, std::string>> split_react_response(
    const std::string& raw) {
    std::string thought, action;
    bool found = false;
    std::istringstream in(raw);
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (util::starts_with_i(t, "thought:")) {
            thought = trim(t.substr(8));
        } else if (util::starts_with_i(t, "action:")) {
            action = trim(t.substr(7));
            found = true;
        }
    }
    if (!found || action.empty()) return std::nullopt;
    return std::make_pair(thought, action);
}

ReactOutcome react_next_action(CompletionClient& client, sim::ActionSet set,
                               const std::string& task_nl,
                               const world::SceneGraph& scene,
                               const std::vector<HistoryItem>& history,
                               const std::string& fingerprint_prefix,
                               int first_call_index, int max_retries) {
    std::vector<ChatTurn> turns = react_prompt(set, task_nl, scene, history);
    ReactOutcome out;
    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        std::string fp = fingerprint_prefix + "/react:" +
                         std::to_string(first_call_index + attempt);
        Completion c = client.complete(turns, fp);
        out.usage += c.usage;
        ++out.calls;
        out.raw = c.text;

        auto parts = split_react_response(c.text);
        if (!parts) {
            out.error = "the reply has no 'Action:' line";
        } else if (is_finish_word(parts->second)) {
            out.ok = true;
            out.action = {"", {}, parts->second, parts->first, c.text, true};
            return out;
        } else if (auto cmd = sim::parse_command(set, parts->second)) {
            out.ok = true;
            out.action = {cmd->entry->name, cmd->args, parts->second,
                          parts->first, c.text, false};
            return out;
        } else {
            out.error = "'" + parts->second +
                        "' does not match any available action";
        }

        turns.push_back({"assistant", c.text});
        turns.push_back(
            {"user", "Could not use that reply: " + out.error +
                         ". Answer with `Thought: ...` then `Action: ...`, "
                         "picking one action from the list exactly as "
                         "shaped there."});
    }
    return out;
}

}  // namespace sclplan::llm
