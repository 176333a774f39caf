#include "sclplan/llm/client.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>

#include "httplib.h"
#include "nlohmann/json.hpp"
#include "sclplan/util/strings.hpp"

namespace sclplan::llm {

using nlohmann::json;

int token_proxy(const std::string& text) {
    return static_cast<int>(util::split_ws(text).size());
}

namespace {

void check_turns(const std::vector<ChatTurn>& turns) {
    if (turns.empty())
        throw std::invalid_argument("completion request with no turns");
    for (const auto& t : turns)
        if (t.content.empty())
            throw std::invalid_argument("completion turn with empty content");
}

CompletionUsage proxy_usage(const std::vector<ChatTurn>& turns,
                            const std::string& response) {
    CompletionUsage u;
    for (const auto& t : turns) u.prompt_tokens += token_proxy(t.content);
    u.completion_tokens = token_proxy(response);
    return u;
}

}  // namespace

ScriptedClient::ScriptedClient(std::vector<ScriptEntry> entries) {
    sequential_ = true;
    for (const auto& e : entries)
        if (e.match != "*") sequential_ = false;
    if (sequential_) {
        ordered_.assign(entries.begin(), entries.end());
    } else {
        for (auto& e : entries) {
            auto [it, inserted] = keyed_.emplace(e.match, e.response);
            if (!inserted && it->second != e.response)
                throw std::invalid_argument(
                    "script has conflicting responses for '" + e.match + "'");
        }
    }
}

std::vector<ScriptEntry> ScriptedClient::read_script(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open script '" + path + "'");
    std::vector<ScriptEntry> entries;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j = json::parse(line);
        entries.push_back({j.at("match").get<std::string>(),
                           j.at("response").get<std::string>()});
    }
    return entries;
}

Completion ScriptedClient::complete(const std::vector<ChatTurn>& turns,
                                    const std::string& fingerprint) {
    check_turns(turns);
    std::string response;
    {
        std::lock_guard<std::mutex> lock(mu_);
        if (sequential_) {
            if (ordered_.empty())
                throw ScriptExhausted("script exhausted at '" + fingerprint +
                                      "'");
            response = std::move(ordered_.front().response);
            ordered_.pop_front();
        } else {
            auto it = keyed_.find(fingerprint);
            if (it == keyed_.end())
                throw ScriptExhausted("no scripted response for '" +
                                      fingerprint + "'");
            response = it->second;
        }
    }
    return {response, proxy_usage(turns, response)};
}

size_t ScriptedClient::remaining() const {
    std::lock_guard<std::mutex> lock(mu_);
    return sequential_ ? ordered_.size() : keyed_.size();
}

bool ScriptedClient::sequential() const { return sequential_; }

RecorderClient::RecorderClient(std::shared_ptr<CompletionClient> inner,
                               std::string out_path)
    : inner_(std::move(inner)), out_path_(std::move(out_path)) {
    if (!inner_) throw std::invalid_argument("recorder needs an inner client");
}

RecorderClient::RecorderClient(std::string out_path)
    : out_path_(std::move(out_path)) {}

RecorderClient::~RecorderClient() {
    try {
        close();
    } catch (...) {
        // a failed flush in a destructor has nowhere to go
    }
}

Completion RecorderClient::complete(const std::vector<ChatTurn>& turns,
                                    const std::string& fingerprint) {
    {
        std::lock_guard<std::mutex> lock(mu_);
        if (closed_)
            throw std::logic_error("recorder already closed");
    }
    if (!inner_)
        throw std::logic_error("sink-only recorder cannot complete");
    Completion c = inner_->complete(turns, fingerprint);
    record(fingerprint, c.text);
    return c;
}

void RecorderClient::record(const std::string& fingerprint,
                            const std::string& response) {
    std::lock_guard<std::mutex> lock(mu_);
    if (closed_)
        throw std::logic_error("recorder already closed");
    recorded_.push_back({fingerprint, response});
}

void RecorderClient::close() {
    std::lock_guard<std::mutex> lock(mu_);
    if (closed_) return;
    closed_ = true;
    std::stable_sort(recorded_.begin(), recorded_.end(),
                     [](const ScriptEntry& a, const ScriptEntry& b) {
                         return a.match < b.match;
                     });
    // Recording the same episode more than once with a deterministic
    // backend logs identical pairs; keep one of each.
    recorded_.erase(std::unique(recorded_.begin(), recorded_.end(),
                                [](const ScriptEntry& a, const ScriptEntry& b) {
                                    return a.match == b.match &&
                                           a.response == b.response;
                                }),
                    recorded_.end());
    std::ofstream out(out_path_);
    if (!out)
        throw std::runtime_error("cannot write script '" + out_path_ + "'");
    for (const auto& e : recorded_) {
        json j = {{"match", e.match}, {"response", e.response}};
        out << j.dump() << "\n";
    }
}

LiveConfig LiveConfig::from_env() {
    LiveConfig c;
    const char* base = std::getenv("LLM_API_BASE");
    const char* key = std::getenv("LLM_API_KEY");
    const char* model = std::getenv("LLM_MODEL");
    if (!base || !*base)
        throw TransportError("LLM_API_BASE is not set");
    if (!model || !*model)
        throw TransportError("LLM_MODEL is not set");
    c.base_url = base;
    c.model = model;
    if (key) c.api_key = key;
    return c;
}

LiveClient::LiveClient(LiveConfig config) : config_(std::move(config)) {
    // Split "scheme://authority/prefix" so httplib gets the authority and
    // we keep the prefix for request paths.
    const std::string& url = config_.base_url;
    auto scheme_end = url.find("://");
    size_t path_start = url.find('/', scheme_end == std::string::npos
                                          ? 0
                                          : scheme_end + 3);
    if (path_start == std::string::npos) {
        host_ = url;
    } else {
        host_ = url.substr(0, path_start);
        path_prefix_ = url.substr(path_start);
        while (!path_prefix_.empty() && path_prefix_.back() == '/')
            path_prefix_.pop_back();
    }
}

Completion LiveClient::complete(const std::vector<ChatTurn>& turns,
                                const std::string& fingerprint) {
    check_turns(turns);
    {
        std::unique_lock<std::mutex> lock(mu_);
        slots_cv_.wait(lock,
                       [&] { return in_flight_ < config_.max_in_flight; });
        ++in_flight_;
    }
    struct SlotRelease {
        LiveClient* c;
        ~SlotRelease() {
            std::lock_guard<std::mutex> lock(c->mu_);
            --c->in_flight_;
            c->slots_cv_.notify_one();
        }
    } release{this};

    json messages = json::array();
    for (const auto& t : turns)
        messages.push_back({{"role", t.role}, {"content", t.content}});
    json body = {{"model", config_.model}, {"messages", messages}};

    httplib::Client http(host_);
    http.set_read_timeout(config_.timeout_seconds, 0);
    http.set_connection_timeout(10, 0);
    httplib::Headers headers;
    if (!config_.api_key.empty())
        headers.emplace("Authorization", "Bearer " + config_.api_key);

    auto res = http.Post(path_prefix_ + "/chat/completions", headers,
                         body.dump(), "application/json");
    if (!res)
        throw TransportError("request to " + host_ + " failed (" +
                             httplib::to_string(res.error()) + ") at '" +
                             fingerprint + "'");
    if (res->status != 200)
        throw TransportError("completion endpoint returned HTTP " +
                             std::to_string(res->status) + ": " + res->body);

    try {
        json j = json::parse(res->body);
        Completion c;
        c.text = j.at("choices").at(0).at("message").at("content")
                     .get<std::string>();
        if (j.contains("usage")) {
            c.usage.prompt_tokens = j["usage"].value("prompt_tokens", 0);
            c.usage.completion_tokens =
                j["usage"].value("completion_tokens", 0);
        } else {
            c.usage = proxy_usage(turns, c.text);
        }
        return c;
    } catch (const json::exception& e) {
        throw TransportError(std::string("malformed completion response: ") +
                             e.what());
    }
}

}  // namespace sclplan::llm
