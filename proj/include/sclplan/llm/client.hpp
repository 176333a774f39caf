#pragma once

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace sclplan::llm {

struct ChatTurn {
    std::string role;  // "system", "user", or "assistant"
    std::string content;
};

struct CompletionUsage {
    int prompt_tokens = 0;
    int completion_tokens = 0;

    int total() const { return prompt_tokens + completion_tokens; }
    CompletionUsage& operator+=(const CompletionUsage& o) {
        prompt_tokens += o.prompt_tokens;
        completion_tokens += o.completion_tokens;
        return *this;
    }
};

struct Completion {
    std::string text;
    CompletionUsage usage;
};

class TransportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ScriptExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Crude but deterministic stand-in for a tokenizer: whitespace-separated
// words. Offline backends report usage in this unit; it is a proxy, not a
// real token count.
int token_proxy(const std::string& text);

// One chat completion backend. Implementations must be safe to share across
// concurrently running episodes. The fingerprint names the call site
// ("<task>/goal:2", "<task>/react:0") so replays key on position in the
// conversation flow rather than on prompt bytes.
class CompletionClient {
public:
    virtual ~CompletionClient() = default;

    // Throws std::invalid_argument on an empty turn list or empty content.
    virtual Completion complete(const std::vector<ChatTurn>& turns,
                                const std::string& fingerprint) = 0;
};

struct ScriptEntry {
    std::string match;  // fingerprint, or "*" for next-in-order
    std::string response;
};

// Replays a recorded script. Two lookup modes, chosen by the entries:
// if every match is "*" the script is consumed strictly in order; otherwise
// calls look their fingerprint up without consuming it, which keeps replay
// deterministic across concurrent episodes and lets the same script serve
// any number of repeats. Conflicting responses for one fingerprint are
// rejected at load; a fingerprint with no entry raises ScriptExhausted.
class ScriptedClient : public CompletionClient {
public:
    explicit ScriptedClient(std::vector<ScriptEntry> entries);

    // Loads a JSONL script: one {"match": ..., "response": ...} per line.
    static std::vector<ScriptEntry> read_script(const std::string& path);

    Completion complete(const std::vector<ChatTurn>& turns,
                        const std::string& fingerprint) override;

    size_t remaining() const;
    // In-order scripts depend on call sequencing, so they only make sense
    // single-threaded; runners use this to drop to one job.
    bool sequential() const;

private:
    mutable std::mutex mu_;
    bool sequential_ = false;
    std::deque<ScriptEntry> ordered_;
    std::map<std::string, std::string> keyed_;
};

// Proxies another client and records every (fingerprint, response) pair.
// close() writes the script sorted by fingerprint (stable, so repeated
// fingerprints keep their call order). Sorting makes the file independent
// of episode scheduling, so recordings are byte-stable across runs.
class RecorderClient : public CompletionClient {
public:
    RecorderClient(std::shared_ptr<CompletionClient> inner,
                   std::string out_path);
    // Sink-only recorder: no inner client, so complete() is off limits, but
    // record() accepts pairs produced elsewhere. Lets one recorder collect
    // calls from clients constructed per episode.
    explicit RecorderClient(std::string out_path);
    ~RecorderClient() override;

    Completion complete(const std::vector<ChatTurn>& turns,
                        const std::string& fingerprint) override;

    void record(const std::string& fingerprint, const std::string& response);

    void close();

private:
    std::shared_ptr<CompletionClient> inner_;
    std::string out_path_;
    std::mutex mu_;
    std::vector<ScriptEntry> recorded_;
    bool closed_ = false;
};

struct LiveConfig {
    std::string base_url;  // e.g. "http://localhost:8000/v1"
    std::string api_key;
    std::string model;
    int max_in_flight = 4;
    int timeout_seconds = 120;

    // Reads LLM_API_BASE, LLM_API_KEY, LLM_MODEL. Missing base or model is
    // a TransportError; the key may legitimately be empty for local servers.
    static LiveConfig from_env();
};

// HTTP chat-completion backend. Requests carry {model, messages}; the
// response's first choice and usage block are returned. At most
// max_in_flight requests are outstanding at once.
class LiveClient : public CompletionClient {
public:
    explicit LiveClient(LiveConfig config);

    Completion complete(const std::vector<ChatTurn>& turns,
                        const std::string& fingerprint) override;

private:
    LiveConfig config_;
    std::string host_;  // scheme://authority
    std::string path_prefix_;
    std::mutex mu_;
    std::condition_variable slots_cv_;
    int in_flight_ = 0;
};

}  // namespace sclplan::llm
