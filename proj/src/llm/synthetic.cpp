#include "sclplan/llm/synthetic.hpp"

#include <algorithm>
#include <stdexcept>

#include "sclplan/pddl/serialize.hpp"
#include "sclplan/util/rng.hpp"
#include "sclplan/util/strings.hpp"

namespace sclplan::llm {

Grade grade_from_name(const std::string& name) {
    std::string n = util::to_lower(name);
    if (n == "weak") return Grade::Weak;
    if (n == "medium") return Grade::Medium;
    if (n == "strong") return Grade::Strong;
    if (n == "stochastic") return Grade::Stochastic;
    throw std::runtime_error("unknown synthetic grade '" + name + "'");
}

std::string grade_name(Grade g) {
    switch (g) {
        case Grade::Weak: return "weak";
        case Grade::Medium: return "medium";
        case Grade::Strong: return "strong";
        case Grade::Stochastic: return "stochastic";
    }
    return "?";
}

namespace {

// Failure rates per competence level. Skips jump ahead in the correct
// command chain (exactly the mistake precondition repair can fix); wrong
// swaps in an unrelated object; garbage drops the Action line entirely;
// finish declares victory early.
struct GradeParams {
    double p_goal_garbage;
    double p_garbage;
    double p_finish;
    double p_skip;
    double p_wrong;
};

GradeParams params_for(Grade g) {
    switch (g) {
        case Grade::Strong: return {0.0, 0.0, 0.0, 0.0, 0.0};
        case Grade::Medium: return {0.10, 0.03, 0.02, 0.25, 0.03};
        case Grade::Weak: return {0.50, 0.08, 0.10, 0.45, 0.08};
        case Grade::Stochastic: return {0.10, 0.03, 0.02, 0.25, 0.03};
    }
    return {};
}

// ---------------------------------------------------------------------
// Oracle policy. Works on a scratch view of the ground truth: while a
// chain is being assembled, locations/holdings it changes are tracked
// locally so later steps in the same chain see their effects.

struct Planner {
    const world::SceneGraph& t;
    sim::ActionSet set;
    const sim::TaskSpec& task;

    std::vector<std::string> chain;
    std::string loc;
    std::string held;
    bool standing = true;
    std::set<std::string> opened;          // receps opened by this chain
    std::map<std::string, std::string> moved;  // item -> new container

    Planner(const sim::Simulator& sim)
        : t(sim.truth()),
          set(sim.action_set()),
          task(sim.task()),
          loc(t.agent_location),
          held(t.holding),
          standing(t.agent_standing) {}

    bool alf() const { return set == sim::ActionSet::Alfworld; }

    std::string container(const std::string& id) const {
        auto it = moved.find(id);
        if (it != moved.end()) return it->second;
        if (t.holding == id) return {};
        return t.container_of(id);
    }

    bool is_open(const std::string& r) const {
        if (opened.count(r)) return true;
        const auto* e = t.find(r);
        return e && e->flag("isopen");
    }

    bool accessible(const std::string& r) const {
        const auto* e = t.find(r);
        if (!e) return false;
        if (e->flag("openable")) return is_open(r);
        return e->flag("accessible");
    }

    // First receptacle carrying a static flag, in id order.
    std::string recep_with(const std::string& flag,
                           bool prefer_plain = false) const {
        std::string fallback;
        for (const auto& [id, e] : t.entities) {
            if (!e.is_receptacle() || !e.flag(flag)) continue;
            if (!prefer_plain || !e.flag("openable")) return id;
            if (fallback.empty()) fallback = id;
        }
        return fallback;
    }

    void push_go(const std::string& to) {
        chain.push_back(alf() ? "go to " + to : "MoveToObject " + to);
    }

    void ensure_standing() {
        if (standing) return;
        chain.push_back("Stand");
        standing = true;
    }

    void ensure_at(const std::string& r) {
        if (loc == r) return;
        if (set == sim::ActionSet::Robot) ensure_standing();
        push_go(r);
        loc = r;
    }

    void ensure_open(const std::string& r) {
        const auto* e = t.find(r);
        if (!e || !e->flag("openable") || is_open(r)) return;
        ensure_at(r);
        chain.push_back(alf() ? "open " + r : "OpenObject " + r);
        opened.insert(r);
    }

    void park_held() {
        if (held.empty()) return;
        if (set == sim::ActionSet::Robot) {
            chain.push_back("DropObject");
        } else {
            if (loc.empty() || loc == world::kNowhere || !accessible(loc)) {
                std::string r = recep_with("accessible");
                if (r.empty()) r = recep_with("isreceptacle");
                ensure_at(r);
                ensure_open(r);
            }
            chain.push_back(alf() ? "put " + held + " in " + loc
                                  : "PlaceObject " + loc);
        }
        moved[held] = loc;
        held.clear();
    }

    void ensure_holding(const std::string& id) {
        if (held == id) return;
        park_held();
        std::string c = container(id);
        if (c.empty()) return;  // nothing sensible to do
        ensure_at(c);
        ensure_open(c);
        chain.push_back(alf() ? "take " + id + " from " + c
                              : "PickupObject " + id);
        moved.erase(id);
        held = id;
    }

    void put_held(const std::string& r) {
        ensure_at(r);
        ensure_open(r);
        chain.push_back(alf() ? "put " + held + " in " + r
                              : "PlaceObject " + r);
        moved[held] = r;
        held.clear();
    }

    void toggle_on(const std::string& r) {
        const auto* e = t.find(r);
        if (e && e->flag("toggled")) return;
        ensure_at(r);
        chain.push_back("ToggleObjectOn " + r);
    }

    // The dialogue route: satisfy what the holder wants, then ask.
    bool via_dialogue(const std::string& item) {
        std::string c = container(item);
        const auto* holder = t.find(c);
        if (!holder || !holder->is_human()) return false;
        for (const auto& d : task.dialogue) {
            if (d.yields != item || d.human != c) continue;
            if (!sim::dialogue_wants_met(t, d)) {
                ensure_holding(d.wants);
                put_held(container(d.human));
            } else {
                ensure_at(container(d.human));
                chain.push_back("SpeakToHuman " + d.human);
            }
            return true;
        }
        return true;  // held by a person with no deal on offer: stuck
    }

    // Slices come into being when the parent is cut; route through that
    // when a goal names one that does not exist yet.
    bool via_slicing(const std::string& id) {
        if (t.has(id)) return false;
        auto pos = id.find("-slice-");
        if (pos == std::string::npos) return false;
        slice(id.substr(0, pos));
        return true;
    }

    void slice(const std::string& target) {
        std::string knife;
        for (const auto& [id, e] : t.entities)
            if (e.flag("knife")) { knife = id; break; }
        if (knife.empty() || !t.has(target)) return;
        ensure_holding(knife);
        std::string c = container(target);
        if (c.empty()) return;
        ensure_at(c);
        ensure_open(c);
        chain.push_back("SliceObject " + target);
    }

    void handle(const pddl::GroundLiteral& lit) {
        const std::string& pred = lit.atom.predicate;
        const auto& args = lit.atom.args;

        if (pred == "in") {
            const std::string& item = args[0];
            const std::string& dest = args[1];
            if (via_slicing(item)) return;
            if (via_dialogue(item)) {
                if (!chain.empty()) return;
            }
            ensure_holding(item);
            put_held(dest);
        } else if (pred == "holding") {
            if (via_slicing(args[0])) return;
            if (via_dialogue(args[0]) && !chain.empty()) return;
            ensure_holding(args[0]);
        } else if (pred == "at-agent") {
            ensure_at(args[0]);
        } else if (pred == "sitting") {
            if (standing) chain.push_back("Sit");
        } else if (pred == "standing") {
            ensure_standing();
        } else if (pred == "inspected") {
            if (held == args[0]) park_held();
            std::string c = container(args[0]);
            if (c.empty()) return;
            ensure_at(c);
            chain.push_back("LookAtObject " + args[0]);
        } else if (pred == "toggled") {
            std::string c = container(args[0]);
            if (c.empty()) return;
            ensure_at(c);
            ensure_open(c);
            chain.push_back("toggle " + args[0]);
        } else if (pred == "issliced") {
            auto pos = args[0].find("-slice-");
            slice(pos == std::string::npos ? args[0]
                                           : args[0].substr(0, pos));
        } else if (pred == "isclean") {
            if (via_slicing(args[0])) return;
            if (alf()) {
                ensure_holding(args[0]);
                std::string r = recep_with("sink");
                ensure_at(r);
                chain.push_back("clean " + args[0] + " with " + r);
            } else {
                std::string basin = recep_with("faucet");
                if (container(args[0]) != basin) {
                    ensure_holding(args[0]);
                    put_held(basin);
                }
                toggle_on(basin);
            }
        } else if (pred == "ishot" || pred == "iscooked") {
            if (via_slicing(args[0])) return;
            if (alf()) {
                ensure_holding(args[0]);
                std::string r = recep_with("heater");
                ensure_at(r);
                chain.push_back("heat " + args[0] + " with " + r);
            } else {
                std::string r = recep_with("heater", /*prefer_plain=*/true);
                if (container(args[0]) != r) {
                    ensure_holding(args[0]);
                    put_held(r);
                }
                toggle_on(r);
            }
        } else if (pred == "iscold") {
            if (via_slicing(args[0])) return;
            if (alf()) {
                ensure_holding(args[0]);
                std::string r = recep_with("cooler");
                ensure_at(r);
                chain.push_back("cool " + args[0] + " with " + r);
            } else {
                std::string r = recep_with("cooler");
                if (container(args[0]) != r) {
                    ensure_holding(args[0]);
                    put_held(r);
                }
                const auto* e = t.find(r);
                if (e && e->flag("openable") && is_open(r)) {
                    ensure_at(r);
                    chain.push_back("CloseObject " + r);
                }
            }
        } else if (pred == "isfilled") {
            std::string m = recep_with("coffeemachine");
            if (container(args[0]) != m) {
                ensure_holding(args[0]);
                put_held(m);
            }
            toggle_on(m);
        }
        // Anything else (negated literals, exotic predicates) has no
        // scripted route; the chain stays as built.
    }
};

}  // namespace

std::vector<std::string> oracle_chain(const sim::Simulator& sim) {
    Planner p(sim);
    for (const auto& lit : sim.task().success) {
        if (sim::eval_literal(sim.truth(), lit)) continue;
        p.handle(lit);
        break;
    }
    return p.chain;
}

Completion SyntheticClient::complete(const std::vector<ChatTurn>& turns,
                                     const std::string& fingerprint) {
    if (turns.empty())
        throw std::invalid_argument("completion request with no turns");
    for (const auto& t : turns)
        if (t.content.empty())
            throw std::invalid_argument("completion turn with empty content");
    if (!sim_)
        throw std::logic_error("synthetic client has no simulator context");

    GradeParams params = params_for(grade_);
    util::Rng rng(util::mix_seed(seed_, util::hash_str(fingerprint)));

    std::string response;
    if (fingerprint.find("/goal:") != std::string::npos) {
        if (rng.chance(params.p_goal_garbage))
            response =
                "The goal is for everything to be arranged as requested.";
        else
            response = pddl::serialize_goal(sim_->task().success);
    } else {
        std::vector<std::string> chain = oracle_chain(*sim_);
        std::string cmd;
        if (chain.empty()) {
            cmd = "finish";
        } else if (rng.chance(params.p_garbage)) {
            Completion c;
            c.text = "I should probably look around before acting.";
            for (const auto& t : turns)
                c.usage.prompt_tokens += token_proxy(t.content);
            c.usage.completion_tokens = token_proxy(c.text);
            return c;
        } else if (rng.chance(params.p_finish)) {
            cmd = "finish";
        } else if (chain.size() > 1 && rng.chance(params.p_skip)) {
            size_t jump = 1 + rng.below(std::min<size_t>(2, chain.size() - 1));
            cmd = chain[jump];
        } else {
            cmd = chain[0];
            if (rng.chance(params.p_wrong)) {
                auto words = util::split_ws(cmd);
                const auto& seen = sim_->revealed();
                if (words.size() > 1 && !seen.empty()) {
                    size_t k = rng.below(seen.size());
                    words.back() = *std::next(seen.begin(),
                                              static_cast<long>(k));
                    cmd = util::join(words, " ");
                }
            }
        }
        response = cmd == "finish"
                       ? "Thought: The task looks complete.\nAction: finish"
                       : "Thought: The next step is to " + cmd +
                             ".\nAction: " + cmd;
    }

    Completion c;
    c.text = response;
    for (const auto& t : turns)
        c.usage.prompt_tokens += token_proxy(t.content);
    c.usage.completion_tokens = token_proxy(response);
    return c;
}

SyntheticClient::SyntheticClient(Grade grade, uint64_t seed)
    : grade_(grade), seed_(seed) {}

}  // namespace sclplan::llm
